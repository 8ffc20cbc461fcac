"""Explicit upper bounds for Courant-sharp Neumann and Robin eigenvalues of the
Laplacian, with the geometry they need and exact spectra to test them against."""

from .bounds2d import (bound_L1, bound_L2, bound_noeval_convex, bound_with_mu2, cubic_for,
                       prop_mu_bound, regime_for, xi_star)
from .boundsnd import (NdBoundContext, bound_conv_simple_nd, bound_M1, bound_M2, prop_bound_gen_nd,
                       xi_star_nd)
from .counting import CountingBoundInput, counting_bound, index_bound
from .geometry import (Annulus, ConvexBodyND, Disc, Ellipse, FourierCurve, GeometricSummary,
                       shape_from_dict, summarize)
from .oracle import courant_sharp_enumerate, counting_function, disc_spectrum, rectangle_spectrum
from .regimes import Regime, constants_for
from .reports import BelowThresholdError, BoundReport

__version__ = "0.1.0"
