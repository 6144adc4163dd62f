"""Parameter sweeps over the state families, written as CSV rows."""
from __future__ import annotations

import csv
import io
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bellopt import classify_bell, optimize_bell
from .entanglement import concurrence_panel
from .families import FAMILY_PARAMS, GAG_GAMMA_MAX, BoundaryParameterWarning, SpecError, build_family
from .invariants import INVARIANT_NAMES, all_invariants

CSV_HEADER = ["param", "Q", "sumC2", "oneMinusSumC2"]
for _name in INVARIANT_NAMES:
    CSV_HEADER += [f"{_name}_re", f"{_name}_im"]
CSV_HEADER += ["bell", "gt8", "gt16"]

# (lo, hi, lo inclusive) for each sweepable parameter
_DOMAINS = {
    ("ghz4", "gamma"): (0.0, 1.0, True),
    ("ghz4", "gamma2"): (0.0, 1.0, True),
    ("phi2", "J"): (0.0, math.inf, False),
    ("phi2", "Js"): (0.0, math.inf, True),
    ("gag", "gamma"): (0.0, GAG_GAMMA_MAX, True),
}
for _p in FAMILY_PARAMS["gabgd"]:
    _DOMAINS[("gabgd", _p)] = (-math.inf, math.inf, True)

BOUNDARY_BAND = 0.1


@dataclass(frozen=True)
class SweepSpec:
    family: str
    param: str
    lo: float
    hi: float
    points: int
    fixed: dict[str, float] = field(default_factory=dict)
    restarts: int = 32
    seed: int = 0
    tol: float = 1e-10
    normalize_s: bool = False
    boost_boundary: bool = False

    def __post_init__(self):
        key = (self.family, self.param)
        if key not in _DOMAINS:
            raise SpecError(f"cannot sweep {self.param!r} for family {self.family!r}")
        if self.points < 2:
            raise SpecError("a sweep needs at least 2 points")
        if not self.lo < self.hi:
            raise SpecError(f"empty range [{self.lo}, {self.hi}]")
        dlo, dhi, closed = _DOMAINS[key]
        if self.lo < dlo or (self.lo == dlo and not closed) or self.hi > dhi + 1e-12:
            raise SpecError(f"range [{self.lo}, {self.hi}] leaves the domain of {self.param}")
        if self.restarts < 1:
            raise SpecError("restarts must be at least 1")
        swept = "gamma" if self.param == "gamma2" else self.param
        needed = set(FAMILY_PARAMS[self.family]) - {swept}
        missing = needed - set(self.fixed)
        if missing:
            raise SpecError(f"fixed parameter(s) missing: {', '.join(sorted(missing))}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)

    def params_at(self, x: float) -> dict[str, float]:
        params = dict(self.fixed)
        if self.param == "gamma2":
            params["gamma"] = math.sqrt(x)
        elif self.family == "gag" and self.param == "gamma":
            params["gamma"] = min(x, GAG_GAMMA_MAX)
        else:
            params[self.param] = x
        return params

    def restarts_at(self, x: float) -> int:
        """Doubled restart budget near the ends of the GHZ sweep, where the landscape is flat."""
        if not self.boost_boundary or self.family != "ghz4":
            return self.restarts
        g2 = x if self.param == "gamma2" else x * x
        return 2 * self.restarts if min(g2, 1.0 - g2) < BOUNDARY_BAND else self.restarts


def evaluate_point(family: str, params: dict[str, float], restarts: int = 32,
                   seed: int = 0, tol: float = 1e-10) -> dict:
    """All measures for one family member, keyed by CSV column (without ``param``)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryParameterWarning)
        state = build_family(family, params)
    panel = concurrence_panel(state)
    inv = all_invariants(state).as_dict()
    bell = optimize_bell(state, restarts=restarts, seed=seed, tol=tol)
    gt8, gt16 = classify_bell(bell.value)
    row = {"Q": panel.q_global, "sumC2": panel.sum_sq, "oneMinusSumC2": 1.0 - panel.sum_sq}
    for name, val in inv.items():
        row[f"{name}_re"] = val.real
        row[f"{name}_im"] = val.imag
    row.update(bell=bell.value, gt8=gt8, gt16=gt16)
    return row


def _evaluate(args):
    spec, x = args
    row = {"param": float(x)}
    row.update(evaluate_point(spec.family, spec.params_at(x), spec.restarts_at(x), spec.seed, spec.tol))
    return row


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[dict]:
    """One row per grid point, in grid order regardless of ``jobs``."""
    tasks = [(spec, x) for x in spec.grid()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        rows = [_evaluate(t) for t in tasks]
    if spec.normalize_s:
        smax = max(math.hypot(r["S_re"], r["S_im"]) for r in rows)
        for r in rows:
            r["S_norm"] = r["S_re"] / smax if smax > 0 else 0.0
    return rows


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    return format(float(v) + 0.0, ".17g")


def rows_to_csv(rows: list[dict], normalize_s: bool = False) -> str:
    header = CSV_HEADER + (["S_norm"] if normalize_s else [])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for r in rows:
        writer.writerow([_fmt(r[h]) for h in header])
    return buf.getvalue()


def read_csv(text: str) -> tuple[list[str], np.ndarray]:
    """Parse sweep CSV text back into (header, float array)."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, np.array([[float(x) for x in row] for row in reader])
