"""Mermin-Klyshko operators for four qubits and maximisation of <F4>^2 + <F4'>^2.

Settings are stored as an array ``vectors[k, p]`` of unit 3-vectors, qubit
``k`` in 0..3 and ``p = 0`` for the unprimed, ``p = 1`` for the primed
observable. A *slot* is one of the eight vectors, addressed either as
``(qubit, primed)`` with qubit in 1..4 or as the flat index ``2*(qubit-1) + primed``.

Three independent routes evaluate the objective:

* :func:`mk_operators` / :func:`bell_objective` build the dense 16x16
  operators from the recursion.
* :func:`expansion_objective` expands F4 and F4' into their 16 signed
  products of local observables and contracts with the Pauli correlation
  tensor. The random-search oracle uses this route.
* The optimiser uses ``F4 + i F4' = (1-i)^3/4 * prod_k (D_k + i D'_k)``,
  which follows from the recursion, so the objective is
  ``|T(w1, w2, w3, w4)|^2 / 2`` with ``w_k = d_k + i d'_k``. The objective
  is then a quadratic in any single vector.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from numba import njit

from .qcore import PAULI, PureState4, expectation, is_hermitian, sphere_max_kernel

BELL_MAX = 32.0
UNIT_TOL = 1e-12
_HALF = 0.5  # |(1 - i)^3 / 4|^2


@dataclass(frozen=True)
class BellSettings:
    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=float)
        if v.shape != (4, 2, 3):
            raise ValueError(f"settings need shape (4, 2, 3), got {v.shape}")
        if np.max(np.abs(np.linalg.norm(v, axis=-1) - 1.0)) > UNIT_TOL:
            raise ValueError("measurement directions must be unit vectors")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @classmethod
    def uniform(cls, direction=(0.0, 0.0, 1.0)) -> "BellSettings":
        d = np.asarray(direction, float)
        return cls(np.broadcast_to(d / np.linalg.norm(d), (4, 2, 3)))

    @classmethod
    def from_angles(cls, theta, phi) -> "BellSettings":
        """Spherical angles, each of shape (4, 2)."""
        theta, phi = np.asarray(theta, float), np.asarray(phi, float)
        v = np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)
        return cls(v)

    def replace(self, slot, vector) -> "BellSettings":
        k, p = _slot(slot)
        v = self.vectors.copy()
        v[k, p] = vector
        return BellSettings(v)

    def __eq__(self, other):
        if not isinstance(other, BellSettings):
            return NotImplemented
        return np.array_equal(self.vectors, other.vectors)

    def __hash__(self):
        return hash(self.vectors.tobytes())


@dataclass(frozen=True)
class BellResult:
    value: float
    settings: BellSettings
    restarts_used: int
    iterations: int
    seed: int
    best_restart: int = 0
    history: np.ndarray | None = field(default=None, compare=False, repr=False)


def _slot(slot) -> tuple[int, int]:
    if isinstance(slot, tuple):
        qubit, primed = slot
        if qubit not in (1, 2, 3, 4):
            raise ValueError(f"qubit must be in 1..4, got {qubit}")
        return qubit - 1, int(bool(primed))
    if not 0 <= slot < 8:
        raise ValueError(f"slot index must be in 0..7, got {slot}")
    return slot // 2, slot % 2


def _observable(v) -> np.ndarray:
    return np.einsum("i,iab->ab", v, PAULI)


def mk_operators(settings: BellSettings) -> tuple[np.ndarray, np.ndarray]:
    """Dense F4, F4' from the Mermin-Klyshko recursion (qubit 1 leftmost)."""
    obs = [[_observable(settings.vectors[k, p]) for p in (0, 1)] for k in range(4)]
    (A, Ap), (B, Bp) = obs[0], obs[1]
    s = np.kron(Ap, B) + np.kron(A, Bp)
    d = np.kron(A, B) - np.kron(Ap, Bp)
    F, Fp = s + d, s - d
    for D, Dp in obs[2:]:
        F, Fp = (0.5 * (np.kron(F, D + Dp) + np.kron(Fp, D - Dp)),
                 0.5 * (np.kron(Fp, D + Dp) + np.kron(F, Dp - D)))
    for op in (F, Fp):
        if not is_hermitian(op):
            raise ArithmeticError("Mermin-Klyshko operator is not Hermitian")
    return F, Fp


def bell_objective(state: PureState4, settings: BellSettings) -> float:
    F, Fp = mk_operators(settings)
    return expectation(state, F) ** 2 + expectation(state, Fp) ** 2


def correlation_tensor(state: PureState4) -> np.ndarray:
    """T[i, j, k, l] = <sigma_i sigma_j sigma_k sigma_l>, i..l over x, y, z."""
    psi = state.tensor
    t = np.einsum("abcd,iae,jbf,kcg,ldh,efgh->ijkl",
                  psi.conj(), PAULI, PAULI, PAULI, PAULI, psi, optimize=True)
    return np.ascontiguousarray(t.real)


def _expansion_coefficients() -> tuple[np.ndarray, np.ndarray]:
    """Signed coefficients of F4, F4' over choices (unprimed/primed) per qubit."""
    c = np.array([[1.0, 1.0], [1.0, -1.0]])    # A'B + AB' + AB - A'B'
    cp = np.array([[-1.0, 1.0], [1.0, 1.0]])   # A'B + AB' - AB + A'B'
    for _ in range(2):
        c, cp = (np.stack([0.5 * (c + cp), 0.5 * (c - cp)], axis=-1),
                 np.stack([0.5 * (cp - c), 0.5 * (cp + c)], axis=-1))
    return c, cp


MK_COEFFS = _expansion_coefficients()


def expansion_objective(T: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Objective for a batch of settings, shape (n, 4, 2, 3), via the signed expansion."""
    v = vectors
    e = np.einsum("ijkl,nai,nbj,nck,ndl->nabcd", T, v[:, 0], v[:, 1], v[:, 2], v[:, 3], optimize=True)
    c, cp = MK_COEFFS
    return np.einsum("abcd,nabcd->n", c, e) ** 2 + np.einsum("abcd,nabcd->n", cp, e) ** 2


@njit(cache=True)
def _amplitude(T, W):
    z = 0j
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    z += T[i, j, k, l] * W[0, i] * W[1, j] * W[2, k] * W[3, l]
    return z


@njit(cache=True)
def _contract_others(T, W, q):
    """u[i] = T contracted with w_j, j != q, leaving the axis of qubit q open."""
    u = np.zeros(3, dtype=np.complex128)
    idx = np.zeros(4, dtype=np.int64)
    for i in range(3):
        idx[q] = i
        acc = 0j
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    rest = (a, b, c)
                    r = 0
                    coef = 1.0 + 0j
                    for m in range(4):
                        if m != q:
                            idx[m] = rest[r]
                            coef *= W[m, rest[r]]
                            r += 1
                    acc += T[idx[0], idx[1], idx[2], idx[3]] * coef
        u[i] = acc
    return u


@njit(cache=True)
def _slot_step(T, X, W, q, p, val):
    """Exact maximiser for vector (q, p) with the rest fixed; returns the new objective.

    With u the contraction of T against the other three w's the complex
    amplitude is g.v + c, so the objective |g.v + c|^2 / 2 is a
    sphere-constrained quadratic in v. The update is kept only if the
    objective does not drop.
    """
    u = _contract_others(T, W, q)
    other = X[q, 1 - p]
    dot = u[0] * other[0] + u[1] * other[1] + u[2] * other[2]
    if p == 0:
        g = u
        c = 1j * dot
    else:
        g = 1j * u
        c = dot
    gr = g.real.copy()
    gi = g.imag.copy()
    Q = _HALF * (np.outer(gr, gr) + np.outer(gi, gi))
    b = _HALF * (c.real * gr + c.imag * gi)
    v = np.empty(3)
    sphere_max_kernel(Q, b, v)
    z = g[0] * v[0] + g[1] * v[1] + g[2] * v[2] + c
    new = _HALF * (z.real ** 2 + z.imag ** 2)
    if new >= val:
        X[q, p] = v
        for i in range(3):
            W[q, i] = X[q, 0, i] + 1j * X[q, 1, i]
        return new
    return val


@njit(cache=True)
def _ascend(T, X, tol, max_sweeps, history):
    """Cyclic coordinate ascent from X (modified in place); returns (value, sweeps)."""
    W = X[:, 0, :] + 1j * X[:, 1, :]
    z = _amplitude(T, W)
    val = _HALF * (z.real ** 2 + z.imag ** 2)
    history[0] = val
    sweeps = 0
    for s in range(max_sweeps):
        start = val
        for q in range(4):
            for p in range(2):
                val = _slot_step(T, X, W, q, p, val)
        z = _amplitude(T, W)
        val = max(_HALF * (z.real ** 2 + z.imag ** 2), start)
        sweeps += 1
        history[s + 1] = val
        if val - start < tol:
            break
    return val, sweeps


def _fast_objective(T: np.ndarray, X: np.ndarray) -> np.ndarray:
    W = X[:, :, 0] + 1j * X[:, :, 1]
    z = np.einsum("ijkl,ni,nj,nk,nl->n", T, W[:, 0], W[:, 1], W[:, 2], W[:, 3], optimize=True)
    return _HALF * (z.real**2 + z.imag**2)


def coordinate_update(state: PureState4, settings: BellSettings, slot) -> BellSettings:
    """Replace one measurement direction by its exact conditional maximiser."""
    q, p = _slot(slot)
    T = correlation_tensor(state)
    X = settings.vectors.copy()
    W = X[:, 0, :] + 1j * X[:, 1, :]
    before = _fast_objective(T, X[None])[0]
    _slot_step(T, X, W, q, p, before)
    if _fast_objective(T, X[None])[0] < before:
        return settings
    return BellSettings(X)


def _initial_settings(seed: int, restarts: int) -> np.ndarray:
    children = np.random.SeedSequence(seed).spawn(restarts)
    X = np.stack([np.random.default_rng(ss).normal(size=(4, 2, 3)) for ss in children])
    return X / np.linalg.norm(X, axis=-1, keepdims=True)


def optimize_bell(state: PureState4, restarts: int = 32, seed: int = 0, tol: float = 1e-10,
                  max_sweeps: int = 500, keep_history: bool = False) -> BellResult:
    """Multi-start cyclic coordinate ascent on <F4>^2 + <F4'>^2.

    Restart ``r`` starts from ``SeedSequence(seed).spawn(restarts)[r]`` and
    stops once a full sweep over the eight vectors gains less than ``tol``.
    Among restarts within 1e-12 of the best value the lowest index wins, so
    the result depends only on the arguments. With ``keep_history`` the
    per-sweep objective of every restart is returned, padded with its final
    value, as an array of shape (sweeps + 1, restarts).
    """
    if restarts < 1:
        raise ValueError("need at least one restart")
    if not state.normalized:
        raise ValueError("Bell optimisation needs a normalized state")
    T = correlation_tensor(state)
    X = _initial_settings(seed, restarts)
    values = np.empty(restarts)
    sweeps = np.empty(restarts, dtype=int)
    hist = np.full((max_sweeps + 1, restarts), np.nan)
    for r in range(restarts):
        values[r], sweeps[r] = _ascend(T, X[r], tol, max_sweeps, hist[:, r])
    best = int(np.flatnonzero(values >= values.max() - 1e-12)[0])
    history = None
    if keep_history:
        history = hist[: sweeps.max() + 1]
        for r in range(restarts):
            history[sweeps[r] + 1:, r] = values[r]
    return BellResult(
        value=float(values[best]),
        settings=BellSettings(X[best]),
        restarts_used=restarts,
        iterations=int(sweeps[best]),
        seed=seed,
        best_restart=best,
        history=history,
    )


def classify_bell(value: float) -> tuple[bool, bool]:
    """(value > 8, value > 16): three- and four-qubit entanglement witnesses."""
    return value > 8.0, value > 16.0


def random_settings(rng: np.random.Generator, n: int) -> np.ndarray:
    X = rng.normal(size=(n, 4, 2, 3))
    return X / np.linalg.norm(X, axis=-1, keepdims=True)


def random_search_oracle(state: PureState4, samples: int, seed: int = 0,
                         batch: int = 50_000) -> float:
    """Best objective over uniformly random settings (signed-expansion route)."""
    rng = np.random.default_rng(seed)
    T = correlation_tensor(state)
    best = -np.inf
    done = 0
    while done < samples:
        n = min(batch, samples - done)
        best = max(best, float(expansion_objective(T, random_settings(rng, n)).max()))
        done += n
    return best
