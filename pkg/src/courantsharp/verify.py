"""Reference-number and property checks behind ``courantsharp verify``.

Each check yields rows of (check, reference, computed, tolerance, passed).
"""
from __future__ import annotations

import math
import time

import numpy as np

from . import bounds2d, boundsnd, counting, oracle, regimes
from .geometry import (Annulus, ConvexBodyND, Disc, Ellipse, FourierCurve, GeometricSummary,
                       ISOPERIMETRIC_RHO_2D, summarize, tube_volume_closed_form, tube_volume_quadrature)
from .specfun import ZeroKind, bessel_zero, dimension_constants

SEED = 20240611

DISC_REFERENCE = {
    "prop_mu_bound": 2.67e17,
    "NCmu2": 1.26e20,
    "L2": 2.09e20,
    "L1": 1.42e20,
    "noeval_C": 8.98e17,
    "noeval_mu": 1.51e20,
    "noeval_k": 1.51e20,
}


def _rel(a, b):
    return abs(a - b) / abs(b)


def _row(check, reference, computed, tolerance, passed):
    return {"check": check, "reference": reference, "computed": computed, "tolerance": tolerance,
            "passed": bool(passed)}


def _close(check, reference, computed, rtol):
    return _row(check, reference, computed, f"rel {rtol:g}", _rel(computed, reference) <= rtol)


def unit_disc_summary() -> GeometricSummary:
    return summarize(Disc.unit_area())


def disc_bounds(s: GeometricSummary | None = None) -> dict:
    s = s or unit_disc_summary()
    mu2 = math.pi * bessel_zero(1, ZeroKind.J_PRIME, 1).value ** 2
    nv = bounds2d.bound_noeval_convex(s)
    return {
        "prop_mu_bound": bounds2d.prop_mu_bound(s, regimes.constants_for(regimes.Regime.CONVEX_2D)).value,
        "NCmu2": bounds2d.bound_with_mu2(s, mu2).value,
        "L2": bounds2d.bound_L2(s).value,
        "L1": bounds2d.bound_L1(s).value,
        "noeval_C": nv.C_const,
        "noeval_Cp": nv.Cp_const,
        "noeval_mu": nv.mu_bound.value,
        "noeval_k": nv.k_bound,
    }


def random_convex_fourier(seed: int = SEED) -> FourierCurve:
    rng = np.random.default_rng(seed)
    while True:
        cos = np.concatenate([[1.0], rng.uniform(-0.04, 0.04, 4)])
        sin = np.concatenate([[0.0], rng.uniform(-0.04, 0.04, 4)])
        shape = FourierCurve.from_polar(cos, sin)
        if shape.is_convex:
            return shape


def random_cubics(count: int = 1000, seed: int = SEED) -> list:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        a0 = 10 ** rng.uniform(-4, 0)
        a1 = -(10 ** rng.uniform(-3, 3)) * rng.uniform()
        a2 = -(10 ** rng.uniform(-3, 3))
        a3 = -(10 ** rng.uniform(-3, 3)) * rng.uniform()
        out.append(bounds2d.CubicCoefficients(a0, a1, a2, a3, rho=float("nan")))
    return out


def random_convex_summaries(count: int = 100, seed: int = SEED) -> list:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        A = 10 ** rng.uniform(-3, 3)
        rho = ISOPERIMETRIC_RHO_2D * (1 + 10 ** rng.uniform(-6, 1))
        L = rho**2 * math.sqrt(A)
        tp = math.sqrt(A / math.pi) * rng.uniform(0.01, 1.0)
        out.append(GeometricSummary.from_invariants(A, L, tp, is_convex=True))
    return out


# --------------------------------------------------------------------------


def check_prop_runtime() -> list:
    t0 = time.perf_counter()
    bounds2d.prop_mu_bound(unit_disc_summary(), regimes.constants_for(regimes.Regime.CONVEX_2D))
    elapsed = time.perf_counter() - t0
    return [_row("1 prop_mu_bound runtime (s)", "< 1", elapsed, "wall", elapsed < 1)]


def check_disc_numbers(b: dict) -> list:
    rows = [
        _close("1 prop_mu_bound unit-area disc", DISC_REFERENCE["prop_mu_bound"], b["prop_mu_bound"], 0.01),
        _close("2 mu2 bound unit-area disc", DISC_REFERENCE["NCmu2"], b["NCmu2"], 0.01),
        _close("3 L2 unit-area disc", DISC_REFERENCE["L2"], b["L2"], 0.01),
        _close("4 L1 unit-area disc", DISC_REFERENCE["L1"], b["L1"], 0.01),
        _close("5 constant C", DISC_REFERENCE["noeval_C"], b["noeval_C"], 0.005),
        _close("5 simplified mu bound unit-area disc", DISC_REFERENCE["noeval_mu"], b["noeval_mu"], 0.01),
        _close("5 simplified k bound unit-area disc", DISC_REFERENCE["noeval_k"], b["noeval_k"], 0.01),
        _row("5 C' = C + 1", "C + 1", b["noeval_Cp"], "exact", b["noeval_Cp"] == b["noeval_C"] + 1),
    ]
    return rows


def check_disc_oracle(b: dict) -> list:
    spec = oracle.disc_spectrum(1 / math.sqrt(math.pi), 200)
    mu4 = spec[3].value
    certs = oracle.courant_sharp_enumerate(spec)
    idx = sorted(c.index for c in certs)
    top = max(c.value for c in certs)
    lowest = min(v for k, v in b.items() if k not in ("noeval_C", "noeval_Cp", "noeval_k"))
    return [
        _row("6 disc mu_4 in (29, 30)", "(29.0, 30.0)", mu4, "interval", 29.0 < mu4 < 30.0),
        _row("6 disc Courant-sharp indices", "[1, 2, 4]", idx, "exact", idx == [1, 2, 4]),
        _row("6 certified values below every bound", lowest, top, "strict", top < lowest),
    ]


def check_counting() -> list:
    t0 = time.perf_counter()
    spec = oracle.disc_spectrum(1 / math.sqrt(math.pi), mu_max=1e4)
    mus = np.logspace(-3, 4, 200)
    inp = dict(n=2, volume=1.0, surface=2 * math.sqrt(math.pi), t_plus=1 / math.sqrt(math.pi))
    margin = min(counting.counting_bound(counting.CountingBoundInput(mu=float(m), **inp))
                 - oracle.counting_function(spec, float(m)) for m in mus)
    elapsed = time.perf_counter() - t0
    return [
        _row("7 counting bound strictly dominates disc count", "> 0", margin, "strict", margin > 0),
        _row("7 counting dominance runtime (s)", "< 5", elapsed, "wall", elapsed < 5),
    ]


def check_tubes() -> list:
    rows = []
    for name, shape in (("disc", Disc(1.0)), ("annulus", Annulus(1.0, 2.0))):
        s = summarize(shape)
        r = s.delta0 / 2
        exact = tube_volume_closed_form(s.perimeter, s.connectivity_b, r)
        quad = tube_volume_quadrature(shape, r)
        rows.append(_close(f"8 tube volume {name} at delta0/2", exact, quad, 1e-6))
    return rows


def check_cutoffs() -> list:
    t = np.linspace(0, 1, 2048)
    part = float(np.max(np.abs(regimes.psi(t) ** 2 + regimes.psi(1 - t) ** 2 - 1)))
    # psi' is largest at the left end, so sample geometrically towards 0
    grid = np.concatenate([np.logspace(-12, 0, 2048, endpoint=False), t[1:-1]])
    sup = float(np.max(np.abs(regimes.psi_prime(grid))))
    return [
        _row("9 psi(t)^2 + psi(1-t)^2 = 1", 0.0, part, "abs 1e-13", part <= 1e-13),
        _close("9 sup |psi'| = sqrt(3)", math.sqrt(3), sup, 1e-6),
    ]


def check_dimension_constants() -> list:
    gam = max(dimension_constants(n).gamma_n for n in range(2, 21))
    dmin = min(boundsnd.D_n(n) for n in range(3, 11))
    coeff = boundsnd._remainder_coeff(2, 1.75) / math.sqrt(1.75 / math.pi)
    return [
        _row("10 gamma(n) < 1 for n = 2..20", "< 1", gam, "strict", gam < 1),
        _row("10 D_n > 0 for n = 3..10", "> 0", dmin, "strict", dmin > 0),
        _close("10 n = 2 remainder coefficient equals sqrt(M/pi)", 1.0, coeff, 1e-14),
    ]


def check_roots() -> list:
    worst_agree = worst_res = 0.0
    for c in random_cubics():
        card, bis = bounds2d.xi_star_pair(c)
        worst_agree = max(worst_agree, _rel(card, bis))
        worst_res = max(worst_res, abs(c(card)) / c.scale(card))
    nd_ok = True
    for n in range(3, 7):
        ctx = boundsnd.NdBoundContext.from_body(ConvexBodyND.ball(n))
        nd_ok &= boundsnd.f_rho_nd(ctx, 1.01 * boundsnd.xi_star_nd(ctx)) > 0
    return [
        _row("11 Cardano vs bisection (1000 cubics)", "<= 1e-9", worst_agree, "rel 1e-9", worst_agree <= 1e-9),
        _row("11 cubic residual at xi*", "<= 1e-9", worst_res, "rel 1e-9", worst_res <= 1e-9),
        _row("11 f_rho(1.01 xi*) > 0, balls n = 3..6", True, nd_ok, "exact", nd_ok),
    ]


def check_relaxations() -> list:
    worst = 0.0
    rc = regimes.constants_for(regimes.Regime.CONVEX_2D)
    for s in random_convex_summaries():
        root = bounds2d.xi_star(bounds2d.cubic_for(s.rho, rc))
        worst = max(worst, (root**4 / s.area) / bounds2d.L1_value(s.rho, s.area))
    worst_nd = 0.0
    for n in range(3, 7):
        ctx = boundsnd.NdBoundContext.from_body(ConvexBodyND.ball(n))
        worst_nd = max(worst_nd, boundsnd.xi_star_nd(ctx) / (ctx.xi_scale * boundsnd.M1_value(n, ctx.rho, ctx.V)))
    return [
        _row("12 xi*^4/A <= L1 (100 convex summaries)", "<= 1", worst, "ratio", worst <= 1),
        _row("12 xi* <= V^(2/n) M1, balls n = 3..6", "<= 1", worst_nd, "ratio", worst_nd <= 1),
    ]


def check_growth() -> list:
    t0 = time.perf_counter()
    rows = oracle.courant_sharp_growth([math.sqrt(2) * k for k in (1, 2, 4, 8)])
    counts = [r.count for r in rows]
    elapsed = time.perf_counter() - t0
    ok = all(a <= b for a, b in zip(counts, counts[1:])) and counts[-1] > counts[0]
    return [
        _row("13 rectangle certificate counts non-decreasing in L", "non-decreasing", counts, "exact", ok),
        _row("13 rectangle growth runtime (s)", "< 10", elapsed, "wall", elapsed < 10),
    ]


def check_scaling() -> list:
    c = 2.5
    worst = 0.0
    for shape in (Disc.unit_area(), Ellipse(2.0, 1.0), random_convex_fourier()):
        s0 = summarize(shape)
        v0 = bounds2d.prop_mu_bound(s0).value
        v1 = bounds2d.prop_mu_bound(summarize(shape.scaled(c))).value
        worst = max(worst, _rel(v1, v0 / c**2))
    s = unit_disc_summary()
    k0 = bounds2d.bound_noeval_convex(s).k_bound
    k1 = bounds2d.bound_noeval_convex(s.scaled(c)).k_bound
    return [
        _row("14 prop_mu_bound scales as 1/c^2", "rel 1e-9", worst, "rel 1e-9", worst <= 1e-9),
        _close("14 k bound scale invariant", k0, k1, 1e-12),
    ]


def run_checks() -> list:
    b = disc_bounds()
    rows = []
    rows += check_disc_numbers(b)
    rows += check_prop_runtime()
    rows += check_disc_oracle(b)
    rows += check_counting()
    rows += check_tubes()
    rows += check_cutoffs()
    rows += check_dimension_constants()
    rows += check_roots()
    rows += check_relaxations()
    rows += check_growth()
    rows += check_scaling()
    return rows


def format_table(rows: list) -> str:
    head = ("check", "reference", "computed", "tolerance", "status")
    body = [(r["check"], _fmt(r["reference"]), _fmt(r["computed"]), r["tolerance"], "PASS" if r["passed"] else "FAIL")
            for r in rows]
    widths = [max(len(str(x[i])) for x in [head, *body]) for i in range(5)]
    lines = ["  ".join(str(x[i]).ljust(widths[i]) for i in range(5)) for x in [head, *body]]
    return "\n".join(lines)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)
