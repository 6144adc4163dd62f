"""Parameter sweeps written as CSV, one row per grid point.

    python demos/sweep_tour.py [outdir]
"""
import sys
from pathlib import Path

import numpy as np

from fourqubit.families import GAG_GAMMA_MAX
from fourqubit.sweep import SweepSpec, read_csv, rows_to_csv, run_sweep

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
out.mkdir(parents=True, exist_ok=True)

sweeps = {
    "ghz4_gamma2.csv": (SweepSpec("ghz4", "gamma2", 0.02, 0.98, 49, restarts=8), False),
    "phi2_J.csv": (SweepSpec("phi2", "J", 0.08, 8, 100, fixed={"Js": 2.0}, restarts=8,
                                   normalize_s=True), True),
    "gag_gamma.csv": (SweepSpec("gag", "gamma", 0.0, GAG_GAMMA_MAX, 200, restarts=16), False),
}

for fname, (spec, norm) in sweeps.items():
    text = rows_to_csv(run_sweep(spec), normalize_s=norm)
    (out / fname).write_text(text, newline="")
    header, data = read_csv(text)
    col = {h: i for i, h in enumerate(header)}
    x, bell, q = data[:, 0], data[:, col["bell"]], data[:, col["Q"]]
    print(f"{fname:<16} {len(x)} rows  Q in [{q.min():.3f}, {q.max():.3f}]  "
          f"bell in [{bell.min():.3f}, {bell.max():.3f}]  bell>16 at {int(data[:, col['gt16']].sum())} points")
    if norm:
        print(f"{'':<16} S_norm minimum at J = {x[np.argmin(data[:, col['S_norm']])]:.3f}")
