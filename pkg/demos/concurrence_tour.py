"""Pairwise concurrence and global entanglement Q.

    python demos/concurrence_tour.py
"""
import math

import numpy as np

from fourqubit import concurrence_panel, g_ag, ghz4, phi2

# %% GHZ carries no pairwise entanglement, Q = 4 g^2 (1 - g^2)
for g in (0.3, 0.6, 2**-0.5):
    p = concurrence_panel(ghz4(g))
    print(f"ghz4 gamma={g:.4f}  max C_ij={max(p.pairs.values()):.1e}  Q={p.q_global:.6f}")

# %% G_ag: all six pairs equal, piecewise in gamma with a zero at 1/sqrt(8)
print("\n gamma      C_ij      sum C^2     Q")
for g in np.linspace(0, 1 / math.sqrt(6), 11):
    p = concurrence_panel(g_ag(g))
    print(f"{g:.4f}  {p.pairs[(1, 2)]:.6f}  {p.sum_sq:.6f}  {p.q_global:.6f}")

# %% phi2 sits at Q = 1 for every coupling ratio
for J in (0.5, 2, 6):
    print(f"phi2 J={J} Js=2  Q={concurrence_panel(phi2(J, 2)).q_global:.12f}")
