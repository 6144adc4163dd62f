"""Pairwise concurrences and the Meyer-Wallach global entanglement Q."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qcore import PAIRS, SIGMA_Y, PureState4, eig_complex_4, reduced_density_single

_YY = np.kron(SIGMA_Y, SIGMA_Y)
CLAMP_TOL = 1e-10


@dataclass(frozen=True)
class ConcurrencePanel:
    pairs: dict[tuple[int, int], float]
    sum_sq: float
    q_global: float

    @property
    def one_minus_sum_sq(self) -> float:
        return 1.0 - self.sum_sq


def _require_normalized(state: PureState4):
    if not state.normalized:
        raise ValueError("concurrence and Q need a normalized state")


def spin_flip_spectrum(rho: np.ndarray) -> np.ndarray:
    """Eigenvalues of rho (sy x sy) rho* (sy x sy), descending, clamped at zero.

    Small negative real parts down to -1e-10 are set to 0; larger negative
    values or imaginary parts above 1e-10 mean the input was not a density
    matrix.
    """
    r = rho @ _YY @ rho.conj() @ _YY
    lam = eig_complex_4(r)
    if np.max(np.abs(lam.imag)) > CLAMP_TOL:
        raise ArithmeticError(f"spin-flip spectrum has imaginary parts {lam.imag}")
    lam = lam.real
    if lam.min() < -CLAMP_TOL:
        raise ArithmeticError(f"spin-flip spectrum has negative eigenvalue {lam.min():.3g}")
    return np.sort(np.maximum(lam, 0.0))[::-1]


def spin_flip_roots(state: PureState4, i: int, j: int) -> np.ndarray:
    """Square roots of the spin-flip spectrum of the (i, j) reduction, descending.

    For a pure state with ``rho_ij = P P^dagger`` (P is the amplitude array
    reshaped to pair x rest) the roots are the singular values of the
    complex-symmetric matrix ``P^T (sy x sy) P``. This avoids the
    sqrt(eps) error that square roots of near-zero eigenvalues of the
    non-Hermitian product carry.
    """
    if (i, j) not in PAIRS:
        raise ValueError(f"invalid qubit pair {(i, j)}")
    p = np.moveaxis(state.tensor, (i - 1, j - 1), (0, 1)).reshape(4, 4)
    return np.linalg.svd(p.T @ _YY @ p, compute_uv=False)


def concurrence_pair(state: PureState4, i: int, j: int) -> float:
    _require_normalized(state)
    s = spin_flip_roots(state, i, j)
    return float(min(max(s[0] - s[1] - s[2] - s[3], 0.0), 1.0))


def global_Q(state: PureState4) -> float:
    """Q = 2 (1 - mean_k Tr rho_k^2) over the four single-qubit reductions."""
    _require_normalized(state)
    purity = sum(np.trace(r @ r).real for r in (reduced_density_single(state, k) for k in range(1, 5)))
    return float(min(max(2.0 * (1.0 - purity / 4.0), 0.0), 1.0))


def concurrence_panel(state: PureState4) -> ConcurrencePanel:
    pairs = {p: concurrence_pair(state, *p) for p in PAIRS}
    return ConcurrencePanel(pairs=pairs,
                            sum_sq=float(sum(c * c for c in pairs.values())),
                            q_global=global_Q(state))
