"""
How far is the unit-area disc from its Courant-sharp bounds?
=============================================================

Every explicit bound for the disc is evaluated next to the exact spectrum.
The largest Courant-sharp value is the fourth eigenvalue, just below 30,
while the bounds sit around 1e17 to 1e20.
"""
import math

from courantsharp import bounds2d, oracle, summarize
from courantsharp.geometry import Disc
from courantsharp.specfun import ZeroKind, bessel_zero

# The disc of area one; every bound below is computed from this summary alone.
disc = summarize(Disc.unit_area())
print(f"area {disc.area:.6f}  perimeter {disc.perimeter:.6f}  rho {disc.rho:.6f}  t_plus {disc.t_plus:.6f}")

# The implicit bound solves a cubic; the other three relax it in different ways.
mu2 = math.pi * bessel_zero(1, ZeroKind.J_PRIME, 1).value ** 2
reports = {
    "root of the cubic": bounds2d.prop_mu_bound(disc),
    "with mu_2 known": bounds2d.bound_with_mu2(disc, mu2),
    "diameter only": bounds2d.bound_L2(disc),
    "rho only": bounds2d.bound_L1(disc),
}
simple = bounds2d.bound_noeval_convex(disc)
reports["C (A/t^4 + rho^8/A)"] = simple.mu_bound

for name, rep in reports.items():
    print(f"{name:22s} {rep.value:.4e}   dominant branch: {rep.dominant}")
print(f"constant C = {simple.C_const:.4e}, index bound k <= {simple.k_bound:.4e}")

# Now the exact answer: scan the first 200 Neumann eigenvalues.
spectrum = oracle.disc_spectrum(disc.diameter / 2, 200)
for cert in oracle.courant_sharp_enumerate(spectrum):
    print(f"Courant-sharp: k={cert.index}  mu={cert.value:.4f}  mode {cert.mode}")

gap = min(r.value for r in reports.values()) / max(c.value for c in oracle.courant_sharp_enumerate(spectrum))
print(f"best bound over largest certified value: {gap:.2e}")
