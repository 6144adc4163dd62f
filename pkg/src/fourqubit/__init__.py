"""Entanglement measures for pure 4-qubit states.

Polynomial SLOCC invariants (H, L, M, N, D_xt, S, T, Delta), pairwise
concurrences and the global entanglement Q, and optimised Mermin-Klyshko
Bell values, plus generators for the GHZ, phi2 and G_abgd state families.
"""
from .bellopt import (BellResult, BellSettings, bell_objective, classify_bell, coordinate_update,
                      mk_operators, optimize_bell, random_search_oracle)
from .entanglement import ConcurrencePanel, concurrence_pair, concurrence_panel, global_Q
from .families import (SloccReport, g_abgd, g_ag, ghz4, li_check_gag, li_check_ghz4, li_check_phi2,
                       phi2, slocc_report)
from .invariants import (InvariantSet, all_invariants, cayley_det3, inv_Delta, inv_Dxt, inv_H, inv_LMN,
                         pencil_quartic, quartic_ST)
from .qcore import (PureState4, apply_local, basis_state, eig_complex_4, expectation, load_state,
                    reduced_density, reduced_density_single, save_state, sphere_quadratic_max,
                    state_from_amplitudes)

__version__ = "0.1.0"
