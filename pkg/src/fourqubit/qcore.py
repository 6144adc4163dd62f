"""Pure 4-qubit states and the small dense kernels shared by the other modules.

Amplitude index convention: ``i = 8*q1 + 4*q2 + 2*q3 + q4``, so qubit 1 is the
most significant bit and ``a[3]`` is the amplitude of ``|0011>``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from numba import njit

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


class StateFileError(ValueError):
    """A state file does not follow the amplitude JSON schema."""


@dataclass(frozen=True)
class PureState4:
    """Sixteen complex amplitudes of a 4-qubit pure state.

    ``amps`` is stored as a read-only complex128 array. ``normalized`` records
    whether the vector was checked to have unit norm.
    """

    amps: np.ndarray
    normalized: bool = False
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.shape != (16,):
            raise ValueError(f"a 4-qubit state needs 16 amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        if self.normalized and abs(np.vdot(amps, amps).real - 1.0) > NORM_TOL:
            raise ValueError("state flagged normalized but norm differs from 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def tensor(self) -> np.ndarray:
        """Amplitudes as a (2, 2, 2, 2) array indexed ``[q1, q2, q3, q4]``."""
        return self.amps.reshape(2, 2, 2, 2)

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amps, self.amps).real))

    def __eq__(self, other):
        if not isinstance(other, PureState4):
            return NotImplemented
        return self.normalized == other.normalized and np.array_equal(self.amps, other.amps)

    def __hash__(self):
        return hash((self.amps.tobytes(), self.normalized))


def state_from_amplitudes(amps, renormalize: bool = False) -> PureState4:
    """Build a state from 16 amplitudes, optionally rescaling to unit norm."""
    vec = np.array(amps, dtype=complex).reshape(-1)
    if vec.shape != (16,):
        raise ValueError(f"a 4-qubit state needs 16 amplitudes, got {vec.size}")
    if not renormalize:
        norm2 = np.vdot(vec, vec).real
        return PureState4(vec, normalized=abs(norm2 - 1.0) <= NORM_TOL)
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        raise ValueError("cannot renormalize the zero vector")
    vec = vec / norm
    return PureState4(vec, normalized=True)


def basis_state(bits: str) -> PureState4:
    """Computational basis state from a bit string such as ``"0110"``."""
    if len(bits) != 4 or set(bits) - {"0", "1"}:
        raise ValueError(f"expected four bits, got {bits!r}")
    vec = np.zeros(16, dtype=complex)
    vec[int(bits, 2)] = 1.0
    return PureState4(vec, normalized=True)


def random_state(rng: np.random.Generator) -> PureState4:
    """Haar-random normalized state."""
    vec = rng.normal(size=16) + 1j * rng.normal(size=16)
    return state_from_amplitudes(vec, renormalize=True)


def apply_local(state: PureState4, ops) -> PureState4:
    """Apply ``A (x) B (x) C (x) D`` to the state without renormalizing.

    The invariants are homogeneous polynomials in the raw amplitudes, so the
    output keeps whatever norm the operators produce.
    """
    ops = [np.asarray(op, dtype=complex) for op in ops]
    if len(ops) != 4 or any(op.shape != (2, 2) for op in ops):
        raise ValueError("apply_local needs four 2x2 operators")
    out = np.einsum("ia,jb,kc,ld,abcd->ijkl", *ops, state.tensor, optimize=True)
    return state_from_amplitudes(out.reshape(16))


def local_det(op) -> complex:
    return complex(np.linalg.det(np.asarray(op, dtype=complex)))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and float(np.max(np.abs(m - m.conj().T))) <= tol


def _check_qubit(q: int) -> int:
    if q not in (1, 2, 3, 4):
        raise ValueError(f"qubit index must be in 1..4, got {q}")
    return q - 1


def _require_unit_norm(state: PureState4) -> None:
    if abs(state.norm() - 1.0) > NORM_TOL:
        raise ValueError(f"state must be normalized, norm is {state.norm():.17g}")


def reduced_density(state: PureState4, qubits) -> np.ndarray:
    """Two-qubit reduced density matrix on ``qubits = (i, j)``, ``i < j``.

    Row index is ``2*q_i + q_j``.
    """
    i, j = qubits
    ki, kj = _check_qubit(i), _check_qubit(j)
    if ki >= kj:
        raise ValueError(f"need i < j, got {qubits}")
    _require_unit_norm(state)
    psi = np.moveaxis(state.tensor, (ki, kj), (0, 1)).reshape(4, 4)
    return psi @ psi.conj().T


def reduced_density_single(state: PureState4, qubit: int) -> np.ndarray:
    k = _check_qubit(qubit)
    _require_unit_norm(state)
    psi = np.moveaxis(state.tensor, k, 0).reshape(2, 8)
    return psi @ psi.conj().T


def expectation(state: PureState4, op) -> float:
    """Real expectation value of a Hermitian 16x16 operator."""
    op = np.asarray(op, dtype=complex)
    if op.shape != (16, 16):
        raise ValueError("operator must be 16x16")
    if not is_hermitian(op):
        raise ValueError("operator is not Hermitian")
    _require_unit_norm(state)
    val = np.vdot(state.amps, op @ state.amps)
    if abs(val.imag) > 1e-10:
        raise ValueError(f"expectation has imaginary residue {val.imag:.3g}")
    return float(val.real)


def kron_all(*mats) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


# -- eigenvalues of small non-Hermitian matrices ------------------------------

DEFLATION_TOL = 1e-12


class EigenConvergenceError(RuntimeError):
    pass


def _hessenberg(a: np.ndarray) -> np.ndarray:
    """Householder reduction to upper Hessenberg form (similarity)."""
    h = a.copy()
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        h[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, :])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h


def _givens(a: complex, b: complex):
    """Return (c, s) with [[c, s], [-conj(s), c]] @ [a, b] = [r, 0], c real."""
    if b == 0:
        return 1.0, 0.0
    if a == 0:
        return 0.0, np.conj(b) / abs(b)
    r = np.hypot(abs(a), abs(b))
    c = abs(a) / r
    s = (a / abs(a)) * np.conj(b) / r
    return c, s


def _wilkinson_shift(a, b, c, d):
    """Eigenvalue of [[a, b], [c, d]] closer to d."""
    tr = a + d
    det = a * d - b * c
    disc = np.sqrt(tr * tr / 4 - det)
    l1 = tr / 2 + disc
    l2 = tr / 2 - disc
    return l1 if abs(l1 - d) < abs(l2 - d) else l2


def eig_complex(m) -> np.ndarray:
    """Eigenvalues of a small dense complex matrix, sorted by descending real part.

    Hessenberg reduction followed by single-shift QR sweeps with Wilkinson
    shifts and an exceptional shift every 10 stalled iterations.
    """
    m = np.array(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"need a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    h = _hessenberg(m)
    n = h.shape[0]
    scale = max(np.linalg.norm(h), np.finfo(float).tiny)
    eigs = np.zeros(n, dtype=complex)
    hi = n - 1
    its = 0
    stall = 0
    cap = 200 * n
    while hi >= 0:
        if hi == 0:
            eigs[0] = h[0, 0]
            break
        lo = hi
        while lo > 0:
            sub = abs(h[lo, lo - 1])
            if sub <= DEFLATION_TOL * (abs(h[lo, lo]) + abs(h[lo - 1, lo - 1])) or sub <= 1e-16 * scale:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigs[hi] = h[hi, hi]
            hi -= 1
            stall = 0
            continue
        its += 1
        stall += 1
        if its > cap:
            raise EigenConvergenceError(f"QR iteration did not converge in {cap} steps")
        if stall % 10 == 0:
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            mu = _wilkinson_shift(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        # explicit shifted QR step on the active window h[lo:hi+1, lo:hi+1]
        w = slice(lo, hi + 1)
        blk = h[w, w] - mu * np.eye(hi - lo + 1)
        rots = []
        for k in range(hi - lo):
            c, s = _givens(blk[k, k], blk[k + 1, k])
            g = np.array([[c, s], [-np.conj(s), c]])
            blk[k:k + 2, :] = g @ blk[k:k + 2, :]
            rots.append(g)
        for k, g in enumerate(rots):
            blk[:, k:k + 2] = blk[:, k:k + 2] @ g.conj().T
        h[w, w] = blk + mu * np.eye(hi - lo + 1)
        # keep the rest of the matrix consistent with the similarity
        for k, g in enumerate(rots):
            rows = slice(lo + k, lo + k + 2)
            h[rows, hi + 1:] = g @ h[rows, hi + 1:]
            h[:lo, lo + k:lo + k + 2] = h[:lo, lo + k:lo + k + 2] @ g.conj().T
    # real parts equal up to rounding count as ties, broken by imaginary part
    key = np.round(eigs.real / scale, 10)
    order = np.lexsort((-eigs.imag, -key))
    return eigs[order]


def eig_complex_4(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    return eig_complex(m)


# -- quadratic maximisation on the unit sphere --------------------------------

@njit(cache=True)
def _tie_break_vector(V, top, out):
    """Unit vector of the top eigenspace closest to the lowest-index axis."""
    for axis in range(3):
        col = np.zeros(3)
        for m in range(3):
            if top[m]:
                col += V[axis, m] * V[:, m]
        nrm = np.sqrt(col @ col)
        if nrm > 1e-8:
            out[:] = col / nrm
            return


@njit(cache=True)
def sphere_max_kernel(Q, b, out):
    """Write the maximiser of a.Q.a + 2 b.a over |a| = 1 into ``out``.

    Secular equation ``(mu I - Q) a = b`` with ``mu >= lambda_max``, solved by
    Newton steps on ``1/|a(mu)|``. That function is concave in mu, so the
    iteration started left of the root stays left of it and converges
    monotonically. The hard case (b orthogonal to the top eigenspace) is
    handled explicitly.
    """
    lam, V = np.linalg.eigh(0.5 * (Q + Q.T))
    beta = V.T @ b
    lmax = lam[2]
    qscale = max(np.max(np.abs(lam)), 1e-300)
    bnorm = np.sqrt(b @ b)
    top = lam >= lmax - 1e-12 * qscale
    if bnorm <= 1e-300 + 1e-15 * qscale:
        _tie_break_vector(V, top, out)
        return
    btop2 = 0.0
    for m in range(3):
        if top[m]:
            btop2 += beta[m] ** 2
    btop = np.sqrt(btop2)
    # top components this small cannot move mu off lambda_max in floating point
    zero_top = btop <= 1e-13 * max(bnorm, qscale)
    wt = beta * beta
    if zero_top:
        phi_top = 0.0
        for m in range(3):
            if top[m]:
                wt[m] = 0.0
            else:
                phi_top += wt[m] / (lmax - lam[m]) ** 2
        if phi_top <= 1.0:
            base = np.zeros(3)
            for m in range(3):
                if not top[m]:
                    base += beta[m] / (lmax - lam[m]) * V[:, m]
            tau = np.sqrt(max(0.0, 1.0 - base @ base))
            _tie_break_vector(V, top, out)
            out[:] = base + tau * out
            out /= np.sqrt(out @ out)
            return
    lo = lmax + btop
    hi = lmax + bnorm
    mu = lo
    for _ in range(100):
        phi = 0.0
        dphi = 0.0
        for m in range(3):
            if wt[m] > 0.0:
                d = mu - lam[m]
                phi += wt[m] / (d * d)
                dphi -= 2.0 * wt[m] / (d * d * d)
        h = phi ** -0.5
        dh = -0.5 * phi ** -1.5 * dphi
        if abs(1.0 - h) <= 1e-15 or dh <= 0.0:
            break
        new = min(max(mu + (1.0 - h) / dh, lo), hi)
        if new == mu:
            break
        mu = new
    out[:] = 0.0
    for m in range(3):
        if wt[m] > 0.0:
            out += beta[m] / (mu - lam[m]) * V[:, m]
    out /= np.sqrt(out @ out)


def sphere_quadratic_max(Q, b) -> tuple[np.ndarray, float]:
    """Global maximiser of ``a.Q.a + 2 b.a`` over unit 3-vectors and its value."""
    Q = np.ascontiguousarray(Q, dtype=float)
    b = np.ascontiguousarray(b, dtype=float)
    if Q.shape != (3, 3) or b.shape != (3,):
        raise ValueError("expected a 3x3 matrix and a 3-vector")
    if np.max(np.abs(Q - Q.T)) > 1e-12 * max(1.0, np.max(np.abs(Q))):
        raise ValueError("Q must be symmetric")
    a = np.empty(3)
    sphere_max_kernel(Q, b, a)
    return a, float(a @ Q @ a + 2.0 * b @ a)


# -- state files --------------------------------------------------------------

def state_to_json(state: PureState4) -> str:
    amps = [[float(z.real), float(z.imag)] for z in state.amps]
    return json.dumps({"amplitudes": amps, "normalized": bool(state.normalized)})


def save_state(state: PureState4, path) -> None:
    Path(path).write_text(state_to_json(state) + "\n")


def state_from_json(text: str) -> PureState4:
    """Parse ``{"amplitudes": [[re, im] x 16], "normalized": bool}``.

    States not flagged normalized are rescaled to unit norm; the zero vector
    and malformed documents raise :class:`StateFileError`.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "amplitudes" not in doc:
        raise StateFileError("missing 'amplitudes'")
    amps = doc["amplitudes"]
    normalized = doc.get("normalized", False)
    if not isinstance(normalized, bool):
        raise StateFileError("'normalized' must be a boolean")
    if not isinstance(amps, list) or len(amps) != 16:
        raise StateFileError("'amplitudes' must be a list of 16 [re, im] pairs")
    vec = np.empty(16, dtype=complex)
    for i, pair in enumerate(amps):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)):
            raise StateFileError(f"amplitude {i} is not a [re, im] pair of numbers")
        vec[i] = complex(pair[0], pair[1])
    if not np.all(np.isfinite(vec)):
        raise StateFileError("amplitudes must be finite")
    norm = np.linalg.norm(vec)
    if norm == 0.0:
        raise StateFileError("zero state vector")
    if normalized:
        if abs(norm**2 - 1.0) > NORM_TOL:
            raise StateFileError(f"flagged normalized but norm^2 = {norm**2!r}")
        return PureState4(vec, normalized=True)
    return state_from_amplitudes(vec, renormalize=True)


def load_state(path) -> PureState4:
    return state_from_json(Path(path).read_text())
