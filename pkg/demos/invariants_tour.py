"""Polynomial invariants along the three state families.

Prints H, D_xt, S, T and Delta for a few members of each family, checks
SL(2,C)^4 invariance on a random state and shows where Delta vanishes on G_ag.

    python demos/invariants_tour.py
"""
import math

import numpy as np

from fourqubit import all_invariants, apply_local, g_ag, ghz4, phi2
from fourqubit.qcore import random_state

np.set_printoptions(precision=6, suppress=True)


def row(label, inv):
    print(f"{label:<22} H={inv.H.real:+.6f}  Dxt={inv.Dxt.real:+.3e}  "
          f"S={inv.S.real:+.3e}  T={inv.T.real:+.3e}  Delta={inv.Delta.real:+.3e}")


# %% GHZ: only H survives, Delta is identically zero
for g in (0.2, 0.5, 2**-0.5):
    row(f"ghz4 gamma={g:.4f}", all_invariants(ghz4(g)))

# %% phi2: H = 0 on the whole family, D_xt is the interesting one
for J, Js in [(2, 2), (1, 3), (4, 0.5)]:
    row(f"phi2 J={J} Js={Js}", all_invariants(phi2(J, Js)))

# %% G_ag: Delta touches zero at 1/sqrt(24), 1/sqrt(8) and the endpoint 1/sqrt(6)
gs = np.linspace(0, 1 / math.sqrt(6), 13)
for g in gs:
    row(f"g_ag gamma={g:.4f}", all_invariants(g_ag(g)))
for name, r in [("1/sqrt(24)", 24), ("1/sqrt(8)", 8), ("1/sqrt(6)", 6)]:
    print(f"Delta at gamma = {name:<10}: {all_invariants(g_ag(1 / math.sqrt(r))).Delta.real:+.2e}")

# %% invariance under local SL(2,C)
rng = np.random.default_rng(3)
s = random_state(rng)
ops = []
for _ in range(4):
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    ops.append(m / np.sqrt(np.linalg.det(m)))
a, b = all_invariants(s).as_dict(), all_invariants(apply_local(s, ops)).as_dict()
worst = max(abs(a[k] - b[k]) / max(abs(a[k]), 1e-300) for k in a)
print(f"largest relative change under a random SL(2,C)^4 move: {worst:.1e}")
