"""
Non-convex shapes: annulus and a bumpy curve
=============================================

Without convexity the cut-distance delta_0 replaces t_plus and the remainder
bound needs mu above a side threshold.  Each shape picks its own constant set.
"""
from courantsharp import bounds2d, summarize
from courantsharp.geometry import Annulus, FourierCurve

shapes = {
    "annulus 0.5..1": Annulus(0.5, 1.0),
    "bumpy curve": FourierCurve.from_polar([1.0, 0.0, 0.0, 0.2], [0.0, 0.0, 0.0, 0.0]),
}
for name, shape in shapes.items():
    s = summarize(shape)
    rep = bounds2d.prop_mu_bound(s)
    print(f"{name}: convex={s.is_convex} b={s.connectivity_b} rho={s.rho:.4f} "
          f"t_plus={s.t_plus:.4f} delta0={s.delta0:.4f}")
    print(f"   regime {bounds2d.regime_for(s).value}: bound {rep.value:.4e} via {rep.dominant}")
    for label, value in rep.branches:
        print(f"      {label:16s} {value:.4e}")
