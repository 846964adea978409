"""
Graph families used in the experiments, and their message matrices.

A Barabasi-Albert graph has hubs, so the uniform message matrix P = D^-1 A
is not symmetric: its column sums (Gamma) are far from 1. Regular and
Cayley graphs give symmetric P with Gamma = I.
"""

import numpy as np

from pushsum_rates.graphgen import (
    format_graph,
    gamma_diag,
    gen_barabasi_albert,
    gen_cayley_sym,
    gen_random_regular,
    uniform_transition,
)

for name, g in [
    ("BA N=24 m=2", gen_barabasi_albert(24, 2, seed=7)),
    ("regular N=24 d=4", gen_random_regular(24, 4, seed=1)),
    ("Cayley S4, 2 generators", gen_cayley_sym(4, 2, seed=3)),
]:
    P = uniform_transition(g)
    gam = gamma_diag(P.matrix)
    print(f"{name:<26} edges={g.num_edges:<3} degrees {g.degrees.min()}..{g.degrees.max()}  "
          f"symmetric P: {P.is_symmetric()!s:<5}  Gamma in [{gam.min():.2f}, {gam.max():.2f}]")

# the edge-list format, first few lines
print()
print("\n".join(format_graph(gen_random_regular(8, 3, seed=0)).splitlines()[:5]))
print("...")
print("column sums sum to N:", np.isclose(gamma_diag(uniform_transition(gen_barabasi_albert(24, 2, seed=7)).matrix).sum(), 24))
