"""
The second-moment operator against brute force.

phi(X) = E[K X K^T] is evaluated in closed form; here it is compared with
a plain average over sampled update matrices, and the exact expected
squared disagreement Tr (phi*)^t (I - J) is printed next to the
transitive eigenvalue recursion that reproduces it.
"""

import numpy as np

from pushsum_rates.graphgen import gen_barabasi_albert, gen_cycle, uniform_transition
from pushsum_rates.operator import expected_contraction_trace, mu_recursion, phi_apply
from pushsum_rates.rng import make_rng
from pushsum_rates.simulate import sample_update
from pushsum_rates.spectral import sym_eigenvalues

rng = make_rng(0)
P = uniform_transition(gen_barabasi_albert(8, 2, seed=2)).matrix
q = 0.4
X = rng.standard_normal((8, 8))

samples = 20000
acc = np.zeros((8, 8))
for _ in range(samples):
    K = sample_update(P, q, rng).dense()
    acc += K @ X @ K.T
print(f"max |sampled - closed form| over {samples} draws: {np.abs(acc / samples - phi_apply(P, q, X)).max():.4f}")

C = uniform_transition(gen_cycle(8)).matrix
tr = expected_contraction_trace(C, 0.5, 10)
mu = [m.mu.sum() for m in mu_recursion(sym_eigenvalues(C), 0.5, 10)]
print("\n t   trace          mu sum")
for t in (0, 1, 2, 5, 10):
    print(f"{t:2d}  {tr[t]:.10f}  {mu[t]:.10f}")
