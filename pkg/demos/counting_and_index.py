"""
A Weyl-type upper bound for the counting function
==================================================

For a convex body the number of Neumann eigenvalues below mu is at most an
explicit polynomial in sqrt(mu) built from volume, surface area and the
smallest radius of curvature.  Here it is compared with the exact count on
the unit-area disc.
"""
import math

import numpy as np

from courantsharp import counting, oracle

R = 1 / math.sqrt(math.pi)
spectrum = oracle.disc_spectrum(R, mu_max=1e4)

print(f"{'mu':>10s} {'exact N':>8s} {'bound':>10s} {'Weyl':>10s}")
for mu in np.logspace(0, 4, 9):
    inp = counting.CountingBoundInput(2, 1.0, 2 * math.sqrt(math.pi), R, float(mu))
    exact = oracle.counting_function(spectrum, float(mu))
    print(f"{mu:10.1f} {exact:8d} {counting.counting_bound(inp):10.1f} {mu / (4 * math.pi):10.1f}")

# Turned around, the same function bounds the index of a known eigenvalue.
mu4 = spectrum[3].value
inp = counting.CountingBoundInput(2, 1.0, 2 * math.sqrt(math.pi), R)
print(f"mu_4 = {mu4:.4f}  ->  k <= {counting.index_bound(inp, mu4):.2f}")

# The bound holds unchanged for Robin conditions with non-negative beta.
print(counting.robin_flag()["robin_note"])
