"""
The rate bounds side by side on a vertex-transitive graph.

On the Cayley graph of S4 the transitive bound is sharper than the
spectral-gap bound and coincides with eta, which needs an N^2-dimensional
eigenproblem. On J (complete graph with self-loops) it has a closed form.
"""

import math

from pushsum_rates.bounds import bound_complete, bound_eta, bound_general, bound_symmetric, bound_transitive
from pushsum_rates.graphgen import gen_cayley_sym, uniform_transition
from pushsum_rates.spectral import sym_eigenvalues

P = uniform_transition(gen_cayley_sym(4, 2, seed=3)).matrix
spec = sym_eigenvalues(P)
lam2 = float(spec.lambdas[1])

print(f"Cayley S4: N={len(P)}, lambda_2={lam2:.4f}")
print(f"{'q':>5} {'general':>10} {'symmetric':>10} {'transitive':>11} {'eta':>10}")
for q in (0.1, 0.3, 0.5, 0.7, 0.9):
    print(f"{q:5.2f} {bound_general(P, q).value:10.5f} {bound_symmetric(lam2, q).value:10.5f} "
          f"{bound_transitive(spec, q).value:11.5f} {bound_eta(P, q).value:10.5f}")

# complete graph: closed form 1/2 log((1-q)^2 + q^2 (1 - 1/N))
n, q = 10, 0.5
print(f"\nJ with N={n}, q={q}: {bound_complete(n, q).value:.6f} = {0.5 * math.log(0.25 + 0.225):.6f}")
