"""Planar bound chain: nodal counts, Dirichlet remainder, the cubic necessary
condition and its largest root, and the explicit convex bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .geometry import ISOPERIMETRIC_RHO_2D, GeometricSummary
from .regimes import Regime, RegimeConstants, constants_for
from .reports import BelowThresholdError, BoundReport, Method

ROOT_RTOL = 1e-9


class RegimeError(ValueError):
    """Constant set unusable or inconsistent with the domain."""


class RootMismatchError(RuntimeError):
    """Cardano and bisection disagree on the largest root."""


# --------------------------------------------------------------------------
# constant groupings


def _bulk_factor(rc: RegimeConstants) -> float:
    return (1 + rc.eps0) / (1 - rc.eps0)


def _bulk_cutoff_factor(rc: RegimeConstants) -> float:
    return (1 + 1 / rc.eps0) / (1 - rc.eps0)


def _boundary_factor(rc: RegimeConstants) -> float:
    # 3KM / (eps0 m_-); 288 for the convex row
    return 3 * rc.K * rc.M / (rc.eps0 * rc.m_minus)


def regime_for(summary: GeometricSummary) -> Regime:
    if summary.is_convex:
        return Regime.CONVEX_2D
    if summary.connectivity_b <= 1:
        return Regime.SIMPLY_OR_DOUBLY_CONNECTED_2D
    return Regime.GENERAL_2D


def _resolve(summary: GeometricSummary, rc: RegimeConstants | None) -> RegimeConstants:
    if rc is None:
        return constants_for(regime_for(summary))
    if rc.regime.is_nd:
        raise RegimeError("planar bound requested with an n-dimensional constant set")
    if rc.regime is Regime.CONVEX_2D and not summary.is_convex:
        raise RegimeError("convex constants used on a non-convex domain")
    if rc.regime is Regime.SIMPLY_OR_DOUBLY_CONNECTED_2D and summary.connectivity_b > 1:
        raise RegimeError("domain has more than one hole")
    return rc


def delta_threshold(summary: GeometricSummary) -> float:
    """Smallest mu with (A/mu)^(1/4) <= delta0."""
    return summary.area / summary.delta0**4


def side_threshold(summary: GeometricSummary, rc: RegimeConstants) -> float:
    """Smallest mu with sqrt(4 pi A / (M L)) mu^(-1/4) <= (3/4) delta0; none for convex sets."""
    if rc.regime.is_convex:
        return 0.0
    A, rho, d0 = summary.area, summary.rho, summary.delta0
    return 4096 * math.pi**2 * A / (81 * rc.M**2 * rho**4 * d0**4)


def _thresholds(summary, rc, value):
    dt, st = delta_threshold(summary), side_threshold(summary, rc)
    return {
        "delta_threshold": dt,
        "delta_ok": bool(value >= dt),
        "side_threshold": st,
        "side_ok": bool(value >= st),
        "delta0_conservative": summary.delta0_conservative,
    }


def _inputs(summary, rc):
    return {"summary": summary.to_dict(), "constants": rc.to_dict()}


# --------------------------------------------------------------------------
# nodal count and remainder


def nodal_bound_bulk(A: float, mu: float, delta: float, rc: RegimeConstants) -> float:
    if delta <= 0 or mu < 0:
        raise ValueError("need delta > 0 and mu >= 0")
    return A / rc.Lambda * (_bulk_factor(rc) * mu + _bulk_cutoff_factor(rc) * rc.C_cutoff**2 / delta**2)


def nodal_bound_boundary(L: float, mu: float, delta: float, rc: RegimeConstants) -> float:
    if delta <= 0 or mu < 0:
        raise ValueError("need delta > 0 and mu >= 0")
    return 3 * rc.K * rc.M * L * delta / (rc.m_minus * rc.Lambda * rc.eps0) * (mu + rc.C_cutoff**2 / delta**2)


def nodal_bound_total(summary: GeometricSummary, mu: float, rc: RegimeConstants | None = None) -> float:
    """Scale-free bound on the number of nodal domains, with delta = (A/mu)^(1/4)."""
    rc = _resolve(summary, rc)
    thr = delta_threshold(summary)
    if mu < thr * (1 - 1e-12):
        raise BelowThresholdError("nodal bound needs (A/mu)^(1/4) <= delta0", thr)
    x = summary.area * mu
    b = _boundary_factor(rc) * summary.rho**2
    c2 = rc.C_cutoff**2
    return (
        _bulk_factor(rc) * x
        + b * x**0.75
        + c2 * _bulk_cutoff_factor(rc) * x**0.5
        + b * c2 * x**0.25
    ) / rc.Lambda


def weyl_term(area: float, mu: float) -> float:
    return area * mu / (4 * math.pi)


def remainder_bound(summary: GeometricSummary, mu: float, rc: RegimeConstants | None = None) -> float:
    """sqrt(M/pi) rho (A mu)^(3/4), bounding Weyl term minus the Dirichlet count."""
    rc = _resolve(summary, rc)
    thr = side_threshold(summary, rc)
    if mu < thr * (1 - 1e-12):
        raise BelowThresholdError("remainder bound needs sqrt(2) l <= 3 delta0 / 4", thr)
    return math.sqrt(rc.M / math.pi) * summary.rho * (summary.area * mu) ** 0.75


# --------------------------------------------------------------------------
# the cubic


@dataclass(frozen=True)
class CubicCoefficients:
    a0: float
    a1: float
    a2: float
    a3: float
    rho: float
    regime: RegimeConstants | None = None

    def __post_init__(self):
        if not self.a0 > 0:
            raise RegimeError(f"leading coefficient a0={self.a0!r} is not positive")

    def __call__(self, x: float) -> float:
        return ((self.a0 * x + self.a1) * x + self.a2) * x + self.a3

    def scale(self, x: float) -> float:
        """Sum of absolute term magnitudes at x, for relative residuals."""
        x = abs(x)
        return abs(self.a0) * x**3 + abs(self.a1) * x**2 + abs(self.a2) * x + abs(self.a3)


def cubic_for(rho: float, rc: RegimeConstants) -> CubicCoefficients:
    if rho < 0:
        raise ValueError("rho must be non-negative")
    lam = rc.Lambda
    b = _boundary_factor(rc) / lam
    a0 = 1 / (4 * math.pi) - _bulk_factor(rc) / lam
    a1 = -(b * rho**2 + math.sqrt(rc.M / math.pi) * rho)
    a2 = -rc.C_cutoff**2 * _bulk_cutoff_factor(rc) / lam
    a3 = -b * rc.C_cutoff**2 * rho**2
    return CubicCoefficients(a0, a1, a2, a3, rho, rc)


def cardano_roots(c: CubicCoefficients) -> list:
    """Real roots of the cubic in closed form (discriminant casework)."""
    b, cc, d = c.a1 / c.a0, c.a2 / c.a0, c.a3 / c.a0
    shift = -b / 3
    p = cc - b * b / 3
    q = 2 * b**3 / 27 - b * cc / 3 + d
    disc = (q / 2) ** 2 + (p / 3) ** 3
    if disc > 0:
        sq = math.sqrt(disc)
        # take the larger-magnitude cube root first to avoid cancellation
        u = math.copysign(abs(-q / 2 - math.copysign(sq, q)) ** (1 / 3), -q / 2 - math.copysign(sq, q))
        y = u - p / (3 * u) if u != 0 else 0.0
        return [y + shift]
    if p == 0:
        return [shift]
    r = 2 * math.sqrt(-p / 3)
    arg = 3 * q / (p * r)
    theta = math.acos(max(-1.0, min(1.0, arg)))
    return sorted(r * math.cos((theta - 2 * math.pi * k) / 3) + shift for k in range(3))


def bisection_root(c: CubicCoefficients, max_iter: int = 400) -> float:
    """Largest root by bisection on [0, Cauchy bound].

    With a0 > 0 and a1, a2, a3 <= 0 there is a single sign change, so f <= 0 on
    [0, xi*] and f > 0 beyond.
    """
    lo, hi = 0.0, 1.0 + (abs(c.a1) + abs(c.a2) + abs(c.a3)) / c.a0
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if c(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def xi_star_pair(c: CubicCoefficients) -> tuple:
    return max(cardano_roots(c)), bisection_root(c)


def xi_star(c: CubicCoefficients) -> float:
    """Largest real zero, computed by Cardano and cross-checked by bisection."""
    card, bis = xi_star_pair(c)
    if abs(card - bis) > ROOT_RTOL * max(abs(card), abs(bis), 1e-300):
        raise RootMismatchError(f"Cardano {card!r} vs bisection {bis!r}")
    return card


# --------------------------------------------------------------------------
# propositions


def prop_mu_bound(summary: GeometricSummary, rc: RegimeConstants | None = None) -> BoundReport:
    """Upper bound for any Courant-sharp Neumann (or Robin) eigenvalue."""
    rc = _resolve(summary, rc)
    A, rho, d0, M = summary.area, summary.rho, summary.delta0, rc.M
    root = xi_star(cubic_for(rho, rc))
    branches = [
        ("side_threshold", 4096 * math.pi**2 * A / (81 * M**2 * rho**4 * d0**4)),
        ("delta_threshold", A / d0**4),
        ("xi_star", root**4 / A),
    ]
    value = max(v for _, v in branches)
    return BoundReport(Method.PROP_MU_BOUND, value, branches, _thresholds(summary, rc, value),
                       _inputs(summary, rc), {"xi_star": root})


def _require_convex(summary: GeometricSummary) -> RegimeConstants:
    if not summary.is_convex:
        raise RegimeError("this bound requires a convex domain")
    return constants_for(Regime.CONVEX_2D)


def _convex_terms(rc):
    lam = rc.Lambda
    return (
        _boundary_factor(rc),  # 288
        rc.C_cutoff**2 * _bulk_cutoff_factor(rc),  # 504/5
        _boundary_factor(rc) * rc.C_cutoff**2,  # 3456
        lam,
        1 / (4 * math.pi) - _bulk_factor(rc) / lam,  # D2
    )


def _curvature_report(method, summary, rc, label, value, extras=None):
    curv = summary.area / summary.t_plus**4
    branches = [("curvature", curv), (label, value)]
    top = max(curv, value)
    return BoundReport(method, top, branches, _thresholds(summary, rc, top), _inputs(summary, rc),
                       extras or {})


def L1_value(rho: float, A: float) -> float:
    rc = constants_for(Regime.CONVEX_2D)
    b, p, q, lam, d2 = _convex_terms(rc)
    s = b * rho**2 / lam + rho / math.sqrt(math.pi) + p / (math.sqrt(math.pi) * lam) + q * rho**2 / (math.pi * lam)
    return s**4 / (d2**4 * A)


def bound_L1(summary: GeometricSummary) -> BoundReport:
    rc = _require_convex(summary)
    return _curvature_report(Method.L1, summary, rc, "L1", L1_value(summary.rho, summary.area))


def L2_value(rho: float, A: float, diam: float) -> float:
    rc = constants_for(Regime.CONVEX_2D)
    b, p, q, lam, d2 = _convex_terms(rc)
    sp = math.sqrt(math.pi)
    s = (b * rho**2 / (lam * A**0.25) + rho / (sp * A**0.25)
         + p * diam**0.5 / (lam * sp * A**0.5) + q * rho**2 * diam / (math.pi * lam * A**0.75))
    return s**4 / d2**4


def bound_L2(summary: GeometricSummary) -> BoundReport:
    """Convex bound using the Payne-Weinberger estimate mu_2 >= pi^2 / diam^2."""
    rc = _require_convex(summary)
    return _curvature_report(Method.L2, summary, rc, "L2",
                             L2_value(summary.rho, summary.area, summary.diameter))


def NCmu2_value(rho: float, A: float, mu2: float) -> float:
    rc = constants_for(Regime.CONVEX_2D)
    b, p, q, lam, d2 = _convex_terms(rc)
    s = (b * rho**2 / (lam * A**0.25) + rho / (math.sqrt(math.pi) * A**0.25)
         + p / (lam * A**0.5 * mu2**0.25) + q * rho**2 / (lam * A**0.75 * mu2**0.5))
    return s**4 / d2**4


def bound_with_mu2(summary: GeometricSummary, mu2: float) -> BoundReport:
    """Convex bound given a lower estimate (or the value) of the first positive eigenvalue."""
    if not mu2 > 0:
        raise ValueError("mu2 must be positive")
    rc = _require_convex(summary)
    return _curvature_report(Method.NC_MU2, summary, rc, "NCmu2",
                             NCmu2_value(summary.rho, summary.area, mu2), {"mu2": mu2})


def noeval_constant() -> float:
    """The domain-independent constant C of the simplified convex bound (about 8.98e17)."""
    rc = constants_for(Regime.CONVEX_2D)
    b, p, q, lam, d2 = _convex_terms(rc)
    rmin = ISOPERIMETRIC_RHO_2D
    s = b / lam + 1 / (math.sqrt(math.pi) * rmin) + p / (math.sqrt(math.pi) * lam * rmin**2) + q / (math.pi * lam)
    return s**4 / d2**4


class NoevalResult(NamedTuple):
    mu_bound: BoundReport
    k_bound: float
    C_const: float
    Cp_const: float


def bound_noeval_convex(summary: GeometricSummary) -> NoevalResult:
    """mu <= C (A/t+^4 + rho^8/A) and k <= C' (A^2/t+^4 + rho^8), C' = C + 1."""
    rc = _require_convex(summary)
    C = noeval_constant()
    Cp = C + 1.0
    A, tp, rho = summary.area, summary.t_plus, summary.rho
    curv, iso = A / tp**4, rho**8 / A
    mu = C * (curv + iso)
    k = Cp * (A**2 / tp**4 + rho**8)
    report = BoundReport(Method.NOEVAL_C, mu, [("C*(A/t^4+rho^8/A)", mu)], _thresholds(summary, rc, mu),
                         _inputs(summary, rc),
                         {"C": C, "C_prime": Cp, "k_bound": k, "curvature_term": curv, "isoperimetric_term": iso})
    return NoevalResult(report, k, C, Cp)
