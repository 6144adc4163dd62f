"""Polynomial SLOCC invariants of a 4-qubit state.

All functions take raw amplitudes (normalization is not required) and return
complex numbers. Degrees in the amplitudes: H 2, L/M/N 4, Dxt 6, S 8, T 12,
Delta 24.
"""
from __future__ import annotations

from dataclasses import dataclass, astuple

import numpy as np

from .qcore import PureState4


@dataclass(frozen=True)
class InvariantSet:
    H: complex
    L: complex
    M: complex
    N: complex
    Dxt: complex
    S: complex
    T: complex
    Delta: complex

    def as_dict(self) -> dict[str, complex]:
        return dict(zip(INVARIANT_NAMES, astuple(self)))


INVARIANT_NAMES = ("H", "L", "M", "N", "Dxt", "S", "T", "Delta")
DEGREES = {"H": 2, "L": 4, "M": 4, "N": 4, "Dxt": 6, "S": 8, "T": 12, "Delta": 24}


def _amps(state) -> np.ndarray:
    if isinstance(state, PureState4):
        return state.amps
    a = np.asarray(state, dtype=complex).reshape(-1)
    if a.shape != (16,):
        raise ValueError(f"need 16 amplitudes, got {a.size}")
    return a


def inv_H(state) -> complex:
    """Quadratic invariant: the full epsilon contraction of two copies.

    The pair (i, 15-i) enters with sign (-1)**popcount(i).
    """
    a = _amps(state)
    return complex(a[0] * a[15] - a[1] * a[14] - a[2] * a[13] + a[3] * a[12]
                   - a[4] * a[11] + a[5] * a[10] + a[6] * a[9] - a[7] * a[8])


# axis order of each 4x4 flattening: two row qubits, then two column qubits
_BIPARTITIONS = {"L": (0, 1, 2, 3), "M": (0, 2, 3, 1), "N": (0, 3, 1, 2)}


def inv_LMN(state) -> tuple[complex, complex, complex]:
    """Determinants of the 4x4 flattenings (12|34), (13|24), (14|23).

    Rows are indexed by (q1, q2), (q1, q3), (q1, q4) and columns by (q3, q4),
    (q4, q2), (q2, q3). Each determinant is fixed only up to sign by its
    bipartition; this layout gives L + M + N = 0 identically.
    """
    t = _amps(state).reshape(2, 2, 2, 2)
    return tuple(complex(np.linalg.det(t.transpose(perm).reshape(4, 4)))
                 for perm in _BIPARTITIONS.values())


def inv_Dxt(state) -> complex:
    """Degree-6 invariant D_xt, written out term by term in the amplitudes."""
    a0, a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11, a12, a13, a14, a15 = _amps(state)
    p = a3 * a4 + a2 * a5 - a1 * a6 - a0 * a7
    q = -a0 * a14 + a12 * a2 + a10 * a4 - a6 * a8
    r = (-a1 * a14 - a0 * a15 + a13 * a2 + a12 * a3
         + a11 * a4 + a10 * a5 - a7 * a8 - a6 * a9)
    u = -a1 * a15 + a13 * a3 + a11 * a5 - a7 * a9
    return complex(
        (-a11 * a13 + a15 * a9) * (-p * q + (a2 * a4 - a0 * a6) * r)
        + (-a10 * a12 + a14 * a8) * (-(a3 * a5 - a1 * a7) * r + p * u)
        - (-a11 * a12 - a10 * a13 + a15 * a8 + a14 * a9)
        * ((a3 * a5 - a1 * a7) * (a0 * a14 - a12 * a2 - a10 * a4 + a6 * a8)
           + (-a2 * a4 + a0 * a6) * (a1 * a15 - a13 * a3 - a11 * a5 + a7 * a9))
    )


def cayley_det3(t) -> complex:
    """Cayley hyperdeterminant of a 2x2x2 array."""
    t = np.asarray(t, dtype=complex).reshape(2, 2, 2)
    a000, a001, a010, a011 = t[0, 0, 0], t[0, 0, 1], t[0, 1, 0], t[0, 1, 1]
    a100, a101, a110, a111 = t[1, 0, 0], t[1, 0, 1], t[1, 1, 0], t[1, 1, 1]
    return complex(
        a000**2 * a111**2 + a001**2 * a110**2 + a010**2 * a101**2 + a100**2 * a011**2
        - 2 * (a000 * a001 * a110 * a111 + a000 * a010 * a101 * a111
               + a000 * a100 * a011 * a111 + a001 * a010 * a101 * a110
               + a001 * a100 * a011 * a110 + a010 * a100 * a011 * a101)
        + 4 * (a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111)
    )


# angles of the five sample points on the projective line
_PENCIL_ANGLES = np.pi * np.arange(5) / 5
_PENCIL_X = np.cos(_PENCIL_ANGLES)
_PENCIL_Y = np.sin(_PENCIL_ANGLES)
_PENCIL_VANDERMONDE = np.stack([_PENCIL_X ** (4 - k) * _PENCIL_Y ** k for k in range(5)], axis=1)


def pencil_quartic(state) -> np.ndarray:
    """Coefficients c0..c4 of q(x, y) = Det(a[0,...] x + a[1,...] y).

    q is recovered exactly from five samples on the unit circle; the
    residual of the 5x5 solve is checked.
    """
    t = _amps(state).reshape(2, 2, 2, 2)
    vals = np.array([cayley_det3(t[0] * x + t[1] * y) for x, y in zip(_PENCIL_X, _PENCIL_Y)])
    coeffs = np.linalg.solve(_PENCIL_VANDERMONDE, vals)
    resid = np.max(np.abs(_PENCIL_VANDERMONDE @ coeffs - vals))
    scale = max(np.max(np.abs(vals)), np.finfo(float).tiny)
    if resid > 1e-10 * scale:
        raise ArithmeticError(f"pencil quartic extraction residual {resid:.3g}")
    return coeffs


def quartic_ST(c) -> tuple[complex, complex]:
    """Degree-2 and degree-3 invariants of the binary quartic with coefficients c.

    S is the apolar invariant; T is the negated catalecticant-type cubic
    invariant, which is the sign that gives positive T on GHZ states.
    """
    c0, c1, c2, c3, c4 = (complex(x) for x in c)
    S = c0 * c4 - c1 * c3 / 4 + c2 * c2 / 12
    J = (c0 * c2 * c4 / 6 - c0 * c3 * c3 / 16 - c4 * c1 * c1 / 16
         + c1 * c2 * c3 / 48 - c2**3 / 216)
    return S, -J


def inv_Delta(S: complex, T: complex) -> complex:
    return complex(S**3 - 27 * T**2)


def all_invariants(state) -> InvariantSet:
    L, M, N = inv_LMN(state)
    S, T = quartic_ST(pencil_quartic(state))
    return InvariantSet(H=inv_H(state), L=L, M=M, N=N, Dxt=inv_Dxt(state),
                        S=S, T=T, Delta=inv_Delta(S, T))
