"""
Long rectangles have many Courant-sharp eigenvalues
====================================================

On (0, 1) x (0, L) the product modes cos(p pi x) cos(q pi y / L) with p = 0
often have q + 1 nodal domains at index q + 1, so the number of Courant-sharp
values below a fixed level grows with L.  A smooth convex comparison domain
shows how the bounds scale with the aspect ratio.
"""
import math

from courantsharp import bounds2d, oracle, summarize
from courantsharp.geometry import Ellipse

MU_BAR = 1e3

for row in oracle.courant_sharp_growth([math.sqrt(2) * k for k in (1, 2, 4, 8)], mu_bar=MU_BAR):
    values = ", ".join(f"{v:.1f}" for v in row.certified_values)
    print(f"L = {row.L:7.4f}: {row.count:2d} certificates  degenerate={row.degenerate}  [{values}]")

# L^2 = 2 is rational, so the spectrum of the sqrt(2) rectangle has exact coincidences.
spec = oracle.rectangle_spectrum(1.0, math.sqrt(2), 1000)
modes = {e.mode: e.value for e in spec}
print(f"(3,0) -> {modes[(3, 0)]:.6f}   (1,4) -> {modes[(1, 4)]:.6f}")

# With L = pi the first thousand values are pairwise distinct.
print("L = pi degenerate:", oracle.has_degeneracy(oracle.rectangle_spectrum(1.0, math.pi, 1000)))

# The rectangle has corners, so the bounds do not apply to it directly.  An
# ellipse with the same aspect ratio is a smooth stand-in; this is a report,
# not a check.
for L in (math.sqrt(2), 8 * math.sqrt(2)):
    s = summarize(Ellipse(L / 2, 0.5))
    print(f"ellipse {L:.3f}:1  rho {s.rho:.3f}  simplified bound {bounds2d.bound_noeval_convex(s).mu_bound.value:.3e}")
