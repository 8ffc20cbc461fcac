"""Bounds in dimension n >= 3: nodal count, Dirichlet remainder, the test
function f_rho and its last sign change, and the explicit convex bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import NamedTuple

import numpy as np

from .geometry import ConvexBodyND, nd_rho_lower_bound
from .regimes import Regime, RegimeConstants, constants_for
from .reports import BelowThresholdError, BoundReport, Method
from .specfun import DimensionConstants, dimension_constants, unit_ball_volume

XI_RTOL = 1e-12
XI_MAX = 1e300
GRID_SPAN = 1e6


class NdRootError(RuntimeError):
    """No sign change of f_rho found below the overflow bound."""


class BoundOverflowError(OverflowError):
    """A constant or bound exceeds the binary64 range for this dimension."""


def _guard(fn):
    def wrapped(*args, **kwargs):
        try:
            out = fn(*args, **kwargs)
        except BoundOverflowError:
            raise
        except OverflowError as exc:
            raise BoundOverflowError(f"{fn.__name__}: beyond binary64 range") from exc
        if isinstance(out, float) and math.isinf(out):
            raise BoundOverflowError(f"{fn.__name__}: beyond binary64 range")
        return out
    wrapped.__name__, wrapped.__doc__ = fn.__name__, fn.__doc__
    return wrapped


@dataclass(frozen=True)
class NdBoundContext:
    n: int
    dc: DimensionConstants
    rc: RegimeConstants
    rho: float
    V: float
    S: float
    t_plus: float
    delta0: float
    diameter: float

    def __post_init__(self):
        if self.rc.n != self.n or self.dc.n != self.n:
            raise ValueError("dimension mismatch between context parts")
        if abs(self.rc.eps0 - self.dc.eps0_n) > 1e-15:
            raise ValueError("eps0 must come from the dimension constants")
        if self.rho < nd_rho_lower_bound(self.n) * (1 - 1e-12):
            raise ValueError("rho below the isoperimetric floor")

    @classmethod
    def from_body(cls, body: ConvexBodyND, regime: Regime | str = Regime.CONVEX_ND,
                  delta0: float | None = None) -> "NdBoundContext":
        regime = Regime(regime)
        if not regime.is_nd:
            raise ValueError("n-dimensional context needs an n-dimensional regime")
        n = body.n
        return cls(n, dimension_constants(n), constants_for(regime, n), body.rho_nd, body.volume,
                   body.surface, body.t_plus, body.delta0 if delta0 is None else delta0, body.diameter)

    @property
    def xi_scale(self) -> float:
        """V^(2/n): converts xi = V^(2/n) mu back to mu."""
        return self.V ** (2 / self.n)

    def scaled(self, c: float) -> "NdBoundContext":
        n = self.n
        return NdBoundContext(n, self.dc, self.rc, self.rho, self.V * c**n, self.S * c ** (n - 1),
                              self.t_plus * c, self.delta0 * c, self.diameter * c)

    def to_dict(self) -> dict:
        return {"n": self.n, "regime": self.rc.regime.value, "rho": self.rho, "V": self.V, "S": self.S,
                "t_plus": self.t_plus, "delta0": self.delta0, "diameter": self.diameter}


# --------------------------------------------------------------------------
# pieces of f_rho


def _weyl_coeff(n: int) -> float:
    return unit_ball_volume(n) / (2 * math.pi) ** n


def _a(rc):
    return (1 + rc.eps0) / (1 - rc.eps0)


def _b(rc):
    return (1 + 1 / rc.eps0) / (1 - rc.eps0)


def _boundary_coeff(rc: RegimeConstants) -> float:
    n = rc.n
    return 3 * 2 ** (n / 2 - 1) * rc.M * rc.K ** (n / 2) / (rc.m_minus * rc.eps0 ** (n / 2))


def _remainder_coeff(n: int, M: float) -> float:
    return 2 * n * _weyl_coeff(n) * math.sqrt(math.pi * M)


def D_n(n: int) -> float:
    """Leading coefficient of f_rho: omega_n/(2 pi)^n - Lambda^(-n/2) a^(n/2)."""
    rc = constants_for(Regime.CONVEX_ND, n)
    return _weyl_coeff(n) - _a(rc) ** (n / 2) / rc.Lambda ** (n / 2)


def bulk_bound_nd(V: float, mu: float, delta: float, rc: RegimeConstants) -> float:
    n = rc.n
    return V / rc.Lambda ** (n / 2) * (_a(rc) * mu + _b(rc) * rc.C_cutoff**2 / delta**2) ** (n / 2)


def boundary_bound_nd(S: float, mu: float, delta: float, rc: RegimeConstants) -> float:
    n = rc.n
    return (_boundary_coeff(rc) * S * delta / rc.Lambda ** (n / 2)) * (mu + rc.C_cutoff**2 / delta**2) ** (n / 2)


def _threshold_I(ctx: NdBoundContext) -> float:
    return ctx.xi_scale / ctx.delta0**4


def _threshold_II(ctx: NdBoundContext) -> float:
    if ctx.rc.regime.is_convex:
        return 0.0
    n = ctx.n
    return (math.sqrt(math.pi / ctx.rc.M) * 4 * n * ctx.V ** (0.5 / n) / (3 * ctx.rho * ctx.delta0)) ** 4


def nodal_bound_nd(ctx: NdBoundContext, mu: float) -> float:
    """Nodal-count bound at delta = (V^(2/n)/mu)^(1/4), a function of xi and rho only."""
    thr = _threshold_I(ctx)
    if mu < thr * (1 - 1e-12):
        raise BelowThresholdError("nodal bound needs (V^(2/n)/mu)^(1/4) <= delta0", thr)
    rc, n = ctx.rc, ctx.n
    xi = ctx.xi_scale * mu
    c2 = rc.C_cutoff**2
    bulk = (_a(rc) * xi + _b(rc) * c2 * math.sqrt(xi)) ** (n / 2)
    bd = _boundary_coeff(rc) * ctx.rho**2 * xi**-0.25 * (xi + c2 * math.sqrt(xi)) ** (n / 2)
    return (bulk + bd) / rc.Lambda ** (n / 2)


def remainder_bound_nd(ctx: NdBoundContext, mu: float) -> float:
    thr = _threshold_II(ctx)
    if mu < thr * (1 - 1e-12):
        raise BelowThresholdError("remainder bound needs sqrt(pi n V/(M S)) mu^(-1/4) <= 3 delta0/(4 sqrt n)", thr)
    n = ctx.n
    xi = ctx.xi_scale * mu
    return _remainder_coeff(n, ctx.rc.M) * ctx.rho * xi ** (n / 2 - 0.25)


def _scaled_terms(ctx: NdBoundContext, xi, rho=None):
    """The four terms of f_rho divided by xi^(n/2), so nothing overflows."""
    rc, n = ctx.rc, ctx.n
    rho = ctx.rho if rho is None else rho
    c2 = rc.C_cutoff**2
    lam = rc.Lambda ** (n / 2)
    xi = np.asarray(xi, dtype=float)
    q = xi**-0.25
    weyl = _weyl_coeff(n) * np.ones_like(xi)
    rem = _remainder_coeff(n, rc.M) * rho * q
    bulk = (_a(rc) + _b(rc) * c2 * q * q) ** (n / 2) / lam
    bd = _boundary_coeff(rc) * rho**2 * q * (1 + c2 * q * q) ** (n / 2) / lam
    return weyl, rem, bulk, bd


def f_rho_nd(ctx: NdBoundContext, xi: float, rho: float | None = None) -> float:
    """Weyl term minus remainder, bulk and boundary nodal terms, at xi = V^(2/n) mu.

    ``rho`` overrides the context value (for probing f as a function of rho).
    """
    if not xi > 0:
        raise ValueError("xi must be positive")
    weyl, rem, bulk, bd = _scaled_terms(ctx, xi, rho)
    return float((weyl - rem - bulk - bd) * xi ** (ctx.n / 2))


def _g(ctx, xi):
    weyl, rem, bulk, bd = _scaled_terms(ctx, xi)
    return weyl - rem - bulk - bd, weyl + rem + bulk + bd


def xi_star_nd(ctx: NdBoundContext) -> float:
    """sup{xi > 0 : f_rho(xi) < 0}, by doubling from omega_n^(4/n) then bisection."""
    lo = unit_ball_volume(ctx.n) ** (4 / ctx.n)
    while _g(ctx, lo)[0] >= 0:
        lo *= 0.5
        if lo < 1e-300:
            raise NdRootError("f_rho is non-negative down to the underflow bound")
    hi = 2 * lo
    while _g(ctx, hi)[0] <= 0:
        lo, hi = hi, 2 * hi
        if hi > XI_MAX:
            raise NdRootError("no sign change of f_rho below the overflow bound")
    while hi - lo > XI_RTOL * hi:
        mid = 0.5 * (lo + hi)
        if _g(ctx, mid)[0] > 0:
            hi = mid
        else:
            lo = mid
    root = 0.5 * (lo + hi)
    grid = root * np.logspace(1e-9, math.log10(GRID_SPAN), 400)
    if np.any(_g(ctx, grid)[0] <= 0):
        raise NdRootError("f_rho changes sign again above the located root")
    return root


def xi_star_residual(ctx: NdBoundContext, xi: float) -> float:
    """|f(xi)| relative to the sum of term magnitudes."""
    val, scale = _g(ctx, xi)
    return float(abs(val) / scale)


# --------------------------------------------------------------------------
# propositions


def _thresholds(ctx, value):
    t1, t2 = _threshold_I(ctx), _threshold_II(ctx)
    return {"delta_threshold": t1, "delta_ok": bool(value >= t1),
            "side_threshold": t2, "side_ok": bool(value >= t2)}


def _inputs(ctx):
    return {"context": ctx.to_dict(), "constants": ctx.rc.to_dict()}


def prop_bound_gen_nd(ctx: NdBoundContext) -> BoundReport:
    n, V = ctx.n, ctx.V
    root = xi_star_nd(ctx)
    branches = [
        ("delta_threshold", (V ** (0.5 / n) / ctx.delta0) ** 4),
        # convex: the remainder bound is unconditional, so this branch is 0
        ("side_threshold", _threshold_II(ctx)),
        ("xi_star", root / ctx.xi_scale),
    ]
    value = max(v for _, v in branches)
    return BoundReport(Method.ND_GENERAL, value, branches, _thresholds(ctx, value), _inputs(ctx),
                       {"xi_star": root}, n=n)


def _require_convex(ctx: NdBoundContext) -> None:
    if ctx.rc.regime is not Regime.CONVEX_ND:
        raise ValueError("explicit bounds need the convex n-dimensional constants")


def _m_coeffs(n: int):
    """(alpha, beta, gamma_hat, D) with M1 = D^-4 V^(-2/n) (alpha rho + beta rho^2 + gamma_hat omega_n^(-1/n))^4."""
    rc = constants_for(Regime.CONVEX_ND, n)
    w = unit_ball_volume(n)
    lam = rc.Lambda ** (n / 2)
    eps = rc.eps0
    r = (1 + 1 / eps) / (1 + eps)
    alpha = 2 * n * w * math.sqrt(math.pi) / (2 * math.pi) ** n
    beta = (3 * 2 ** (n / 2 - 1) * (4.0 ** (n - 1)) ** (n / 2 + 1) / (lam * eps ** (n / 2))
            * (1 + 12 * w ** (-2 / n)) ** (n / 2))
    # 6n from the mean value step (1+x)^(n/2) - 1 <= (n/2)(1+x)^(n/2-1) x with x = 12 r xi^(-1/2)
    gamma_hat = 6 * n / lam * _a(rc) ** (n / 2) * r * (1 + 12 * r * w ** (-2 / n)) ** (n / 2 - 1)
    d = D_n(n)
    if not d > 0:
        raise ValueError(f"D_n = {d!r} is not positive")
    return alpha, beta, gamma_hat, d


@_guard
def M1_value(n: int, rho: float, V: float) -> float:
    alpha, beta, g, d = _m_coeffs(n)
    s = alpha * rho + beta * rho**2 + g * unit_ball_volume(n) ** (-1 / n)
    return s**4 / (d**4 * V ** (2 / n))


def gww_diameter_bound(n: int, V: float, S: float) -> float:
    """Upper bound on the diameter of a convex body from its volume and surface area."""
    return S ** (n - 1) / (unit_ball_volume(n - 1) * (n * V) ** (n - 2))


def xi_quarter_bound_gww(n: int, rho: float) -> float:
    """Upper bound on xi^(-1/4) from Payne-Weinberger and the diameter bound."""
    return rho ** (n - 1) / (math.sqrt(math.pi) * math.sqrt(unit_ball_volume(n - 1)) * n ** (n / 2 - 1))


@_guard
def M2_value(n: int, rho: float, V: float) -> float:
    alpha, beta, g, d = _m_coeffs(n)
    s = alpha * rho + beta * rho**2 + g * xi_quarter_bound_gww(n, rho)
    return s**4 / (d**4 * V ** (2 / n))


def _convex_report(method, ctx, label, value, extras=None):
    curv = ctx.xi_scale / ctx.t_plus**4
    top = max(curv, value)
    return BoundReport(method, top, [("curvature", curv), (label, value)], _thresholds(ctx, top),
                       _inputs(ctx), extras or {}, n=ctx.n)


def bound_M1(ctx: NdBoundContext) -> BoundReport:
    _require_convex(ctx)
    return _convex_report(Method.ND_M1, ctx, "M1", M1_value(ctx.n, ctx.rho, ctx.V))


def bound_M2(ctx: NdBoundContext) -> BoundReport:
    _require_convex(ctx)
    return _convex_report(Method.ND_M2, ctx, "M2", M2_value(ctx.n, ctx.rho, ctx.V))


@_guard
def simple_constants(n: int) -> tuple:
    """(C_n, C_n') for the simplified convex bounds.

    C_n: every term of the M1 sum is at most its coefficient times rho^2/rho_min^p,
    so M1 <= K rho^8 / V^(2/n); then max(a, b) <= max(1, K)(a + b).
    C_n': insert the mu bound into the counting bound, written in xi and
    W = max(X^2, rho^4) with X = V^(1/n)/t_plus; each lower-order term carries
    W^-(i+1)/2 <= w_min^-(i+1)/2.
    """
    alpha, beta, g, d = _m_coeffs(n)
    w = unit_ball_volume(n)
    rmin = nd_rho_lower_bound(n)
    K = (alpha / rmin + beta + g * w ** (-1 / n) / rmin**2) ** 4 / d**4
    C = max(1.0, K)
    wmin = max(w ** (2 / n), rmin**4)
    # sum in log space; C_n' leaves binary64 range from n = 7 on
    lc = math.log(2 * C)
    logs = [n / 2 * lc]
    for i in range(n):
        logs.append(math.log(comb(n - 1, i) * math.pi ** (i + 1) / (i + 1))
                    + (n - i - 1) / 2 * lc - (i + 1) / 2 * math.log(wmin))
    top = max(logs)
    log_cp = n / 2 * math.log(n) - n * math.log(math.pi) + top + math.log(sum(math.exp(v - top) for v in logs))
    if log_cp > math.log(np.finfo(float).max):
        raise BoundOverflowError(f"C_n' for n={n} exceeds binary64 range (log C_n' = {log_cp:.1f})")
    Cp = math.exp(log_cp)
    return C, Cp


class SimpleNdResult(NamedTuple):
    mu_bound: BoundReport
    k_bound: float


def bound_conv_simple_nd(ctx: NdBoundContext) -> SimpleNdResult:
    """mu <= C_n (V^(2/n)/t+^4 + rho^8/V^(2/n)) and k <= C_n' ((V^(1/n)/t+)^(2n) + rho^(4n))."""
    _require_convex(ctx)
    n = ctx.n
    C, Cp = simple_constants(n)
    curv, iso = ctx.xi_scale / ctx.t_plus**4, ctx.rho**8 / ctx.xi_scale
    mu = C * (curv + iso)
    X = ctx.V ** (1 / n) / ctx.t_plus
    k = Cp * (X ** (2 * n) + ctx.rho ** (4 * n))
    report = BoundReport(Method.ND_SIMPLE, mu, [("C_n*(V^(2/n)/t^4+rho^8/V^(2/n))", mu)],
                         _thresholds(ctx, mu), _inputs(ctx),
                         {"C_n": C, "C_n_prime": Cp, "k_bound": k, "curvature_term": curv,
                          "isoperimetric_term": iso}, n=n)
    return SimpleNdResult(report, k)
