"""Parameterised state families and SLOCC class checks.

Families:

* ``ghz4(gamma)``: gamma|0000> + sqrt(1 - gamma^2)|1111>
* ``phi2(J, Js)``: eigenstate of a 4-spin Heisenberg ring with couplings J, Js
* ``g_ag(gamma)``: the G_abgd state with beta = delta = gamma, 2 alpha^2 + 6 gamma^2 = 1
* ``g_abgd(alpha, beta, gamma, delta)``: outermost-class representative
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .invariants import inv_Delta, inv_H, pencil_quartic, quartic_ST
from .qcore import PureState4

EXACT_TOL = 1e-12
LIMIT_TOL = 1e-4
GAG_GAMMA_MAX = 1.0 / math.sqrt(6.0)


class BoundaryParameterWarning(UserWarning):
    """Parameter sits on the edge of the family's range (e.g. a product state)."""


def _state(amps, note: str | None = None) -> PureState4:
    amps = np.asarray(amps, dtype=complex)
    amps = amps / np.linalg.norm(amps)
    if note is not None:
        warnings.warn(note, BoundaryParameterWarning, stacklevel=3)
        return PureState4(amps, normalized=True, warnings=(note,))
    return PureState4(amps, normalized=True)


def ghz4(gamma: float) -> PureState4:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"ghz4 needs gamma in [0, 1], got {gamma}")
    amps = np.zeros(16)
    amps[0] = gamma
    amps[15] = math.sqrt(1.0 - gamma * gamma)
    note = None
    if gamma in (0.0, 1.0):
        note = f"ghz4(gamma={gamma}) is a product state"
    return _state(amps, note)


def phi2_amplitudes(J: float, Js: float) -> tuple[float, float, float]:
    """Return (beta1, beta2, delta) for the phi2 state."""
    if not J > 0:
        raise ValueError(f"phi2 needs J > 0, got {J}")
    delta = math.sqrt(9 * J * J - 4 * J * Js + 4 * Js * Js)
    if delta == 0.0:
        raise ValueError("phi2 undefined for delta = 0")
    k = 4.0 + (-J + 2 * Js + delta) ** 2 / (2 * J * J)
    beta1 = k ** -0.5
    beta2 = k ** 0.5 * J / (2 * delta)
    return beta1, beta2, delta


def phi2(J: float, Js: float) -> PureState4:
    b1, b2, _ = phi2_amplitudes(J, Js)
    if abs(4 * b1 * b1 + 2 * b2 * b2 - 1.0) > 1e-9:
        raise ArithmeticError(f"phi2({J}, {Js}) amplitudes are not normalized")
    amps = np.zeros(16)
    amps[[3, 6, 9, 12]] = (-b1, b1, -b1, b1)
    amps[[5, 10]] = (-b2, b2)
    return _state(amps)


def g_ag(gamma: float) -> PureState4:
    if not 0.0 <= gamma <= GAG_GAMMA_MAX + 1e-15:
        raise ValueError(f"g_ag needs gamma in [0, 1/sqrt(6)], got {gamma}")
    alpha = math.sqrt(max(0.0, (1.0 - 6 * gamma * gamma) / 2))
    amps = np.zeros(16)
    amps[[0, 15]] = alpha
    amps[[3, 5, 6, 9, 10, 12]] = gamma
    return _state(amps)


def g_abgd(alpha: float, beta: float, gamma: float, delta: float) -> PureState4:
    """alpha(|0000>+|1111>) + beta(|0011>+|1100>) + gamma(|0101>+|1010>) + delta(|0110>+|1001>)."""
    norm2 = 2 * (alpha**2 + beta**2 + gamma**2 + delta**2)
    if norm2 == 0.0:
        raise ValueError("g_abgd parameters are all zero")
    amps = np.zeros(16)
    amps[[0, 15]] = alpha
    amps[[3, 12]] = beta
    amps[[5, 10]] = gamma
    amps[[6, 9]] = delta
    note = None
    if abs(norm2 - 1.0) > 1e-9:
        note = f"g_abgd parameters have 2*sum of squares {norm2!r}; renormalized"
    return _state(amps, note)


@dataclass(frozen=True)
class SloccReport:
    """Hyperdeterminant and H tests for one state.

    ``delta_nonzero`` compares |Delta| with ``tol`` times the size of the
    two terms it is the difference of (|S|^3 and 27|T|^2), because Delta is
    degree 24 and its absolute size carries no scale. When S and T are both
    below ``tol`` (scaled by the state norm to their degrees) the relative
    test compares roundoff with roundoff, so Delta is reported as zero. ``h_nonzero`` is an
    absolute test. A nonzero H is only the inequality part of the GHZ-class
    conditions; it is not a class membership test on its own.
    """

    delta_nonzero: bool
    delta_abs: float
    delta_scale: float
    h_nonzero: bool
    h_abs: float
    tol: float
    family_criteria: dict[str, bool] = field(default_factory=dict)


def slocc_report(state: PureState4, tol: float = 1e-10,
                 family_criteria: dict[str, bool] | None = None) -> SloccReport:
    if not tol > 0:
        raise ValueError("tol must be positive")
    S, T = quartic_ST(pencil_quartic(state))
    delta = inv_Delta(S, T)
    scale = max(abs(S) ** 3, 27 * abs(T) ** 2)
    n2 = float(np.vdot(state.amps, state.amps).real)
    vanishing = abs(S) <= tol * n2**4 and abs(T) <= tol * n2**6
    h = inv_H(state)
    return SloccReport(
        delta_nonzero=bool(not vanishing and abs(delta) > tol * scale),
        delta_abs=abs(delta),
        delta_scale=scale,
        h_nonzero=bool(abs(h) > tol),
        h_abs=abs(h),
        tol=tol,
        family_criteria=dict(family_criteria or {}),
    )


def li_check_ghz4(gamma: float, tol: float = EXACT_TOL) -> bool:
    """GHZ-class condition for ghz4: -gamma*sqrt(1 - gamma^2) != 0."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    return abs(gamma * math.sqrt(1.0 - gamma * gamma)) > tol


def li_check_phi2(J: float, Js: float, tol: float = EXACT_TOL) -> bool:
    """GHZ-class conditions for phi2: 2b1^2 + b2^2 != 0, b1^4 = 0, b1^2 b2^2 = 0.

    The equalities only hold in the limits J -> 0 or Js -> oo; pass
    ``tol=LIMIT_TOL`` to test those asymptotically.
    """
    b1, b2, _ = phi2_amplitudes(J, Js)
    return (abs(2 * b1**2 + b2**2) > tol
            and abs(b1**4) <= tol
            and abs(b1**2 * b2**2) <= tol)


def li_check_gag(gamma: float, tol: float = EXACT_TOL) -> bool:
    """GHZ-class conditions for g_ag: -alpha^2 - 3 gamma^2 != 0 and alpha^2 gamma^2 = gamma^4.

    The equality also holds trivially at gamma = 0.
    """
    if not 0.0 <= gamma <= GAG_GAMMA_MAX + 1e-15:
        raise ValueError(f"gamma must lie in [0, 1/sqrt(6)], got {gamma}")
    alpha2 = (1.0 - 6 * gamma * gamma) / 2
    return abs(-alpha2 - 3 * gamma**2) > tol and abs(alpha2 * gamma**2 - gamma**4) <= tol


# -- family spec grammar ------------------------------------------------------

FAMILY_PARAMS = {
    "ghz4": ("gamma",),
    "phi2": ("J", "Js"),
    "gag": ("gamma",),
    "gabgd": ("a", "b", "c", "d"),
}


class SpecError(ValueError):
    """A state spec string could not be parsed."""


def parse_family_spec(text: str) -> tuple[str, dict[str, float]]:
    """Split ``"phi2:J=2,Js=2"`` into ``("phi2", {"J": 2.0, "Js": 2.0})``.

    Missing parameters are allowed here; :func:`build_family` checks them.
    """
    name, _, rest = text.partition(":")
    name = name.strip()
    if name not in FAMILY_PARAMS:
        raise SpecError(f"unknown family {name!r}")
    params = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        key = key.strip()
        if not eq or key not in FAMILY_PARAMS[name] and not (name == "ghz4" and key == "gamma2"):
            raise SpecError(f"bad parameter {item!r} for {name}")
        try:
            params[key] = float(val)
        except ValueError:
            raise SpecError(f"parameter {key} is not a number: {val!r}") from None
    if "gamma2" in params:
        if "gamma" in params:
            raise SpecError("give gamma or gamma2, not both")
        g2 = params.pop("gamma2")
        if not 0.0 <= g2 <= 1.0:
            raise SpecError(f"gamma2 must lie in [0, 1], got {g2}")
        params["gamma"] = math.sqrt(g2)
    return name, params


def build_family(name: str, params: dict[str, float]) -> PureState4:
    missing = [p for p in FAMILY_PARAMS[name] if p not in params]
    if missing:
        raise SpecError(f"{name} is missing parameter(s) {', '.join(missing)}")
    try:
        if name == "ghz4":
            return ghz4(params["gamma"])
        if name == "phi2":
            return phi2(params["J"], params["Js"])
        if name == "gag":
            return g_ag(params["gamma"])
        return g_abgd(params["a"], params["b"], params["c"], params["d"])
    except ValueError as exc:
        raise SpecError(str(exc)) from exc


def family_criteria(name: str, params: dict[str, float], tol: float = EXACT_TOL) -> dict[str, bool]:
    if name == "ghz4":
        return {"li_ghz4": li_check_ghz4(params["gamma"], tol)}
    if name == "phi2":
        return {"li_phi2": li_check_phi2(params["J"], params["Js"], tol)}
    if name == "gag":
        return {"li_gag": li_check_gag(params["gamma"], tol)}
    return {}
