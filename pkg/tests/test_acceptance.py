"""Exit criteria, one test per criterion, each printing a PASS/FAIL line."""
import math
import time

import numpy as np
import pytest

from courantsharp import bounds2d, boundsnd, counting, oracle, regimes
from courantsharp.geometry import (Annulus, ConvexBodyND, Disc, Ellipse, summarize, tube_volume_closed_form,
                                   tube_volume_quadrature)
from courantsharp.specfun import ZeroKind, bessel_zero, dimension_constants
from courantsharp.verify import random_convex_fourier, random_convex_summaries, random_cubics

pytestmark = pytest.mark.acceptance

R = 1 / math.sqrt(math.pi)
CONVEX = regimes.constants_for(regimes.Regime.CONVEX_2D)


@pytest.fixture
def verdict(capsys):
    def report(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return report


@pytest.fixture(scope="module")
def disc():
    return summarize(Disc.unit_area())


def rel(a, b):
    return abs(a - b) / abs(b)


def test_01_prop_bound(disc, verdict):
    t0 = time.perf_counter()
    value = bounds2d.prop_mu_bound(disc, CONVEX).value
    elapsed = time.perf_counter() - t0
    verdict(1, rel(value, 2.67e17) <= 0.01 and elapsed < 1, f"value {value:.4e}, {elapsed:.3f} s")


def test_02_mu2_path(disc, verdict):
    mu2 = math.pi * bessel_zero(1, ZeroKind.J_PRIME, 1).value ** 2
    value = bounds2d.bound_with_mu2(disc, mu2).value
    verdict(2, rel(value, 1.26e20) <= 0.01, f"mu2 {mu2:.5f}, value {value:.4e}")


def test_03_L2_path(disc, verdict):
    value = bounds2d.bound_L2(disc).value
    ok = rel(disc.diameter, 2 / math.sqrt(math.pi)) < 1e-12 and rel(value, 2.09e20) <= 0.01
    verdict(3, ok, f"value {value:.4e}")


def test_04_L1_path(disc, verdict):
    value = bounds2d.bound_L1(disc).value
    verdict(4, rel(value, 1.42e20) <= 0.01, f"value {value:.4e}")


def test_05_simplified_constants(disc, verdict):
    res = bounds2d.bound_noeval_convex(disc)
    ok = (rel(res.C_const, 8.98e17) <= 0.005 and rel(res.mu_bound.value, 1.51e20) <= 0.01
          and rel(res.k_bound, 1.51e20) <= 0.01 and res.Cp_const == res.C_const + 1
          and res.mu_bound.extras["C_prime"] == res.Cp_const)
    verdict(5, ok, f"C {res.C_const:.4e}, mu {res.mu_bound.value:.4e}, k {res.k_bound:.4e}")


def test_06_disc_oracle(disc, verdict):
    spec = oracle.disc_spectrum(R, 200)
    mu4 = spec[3].value
    certs = oracle.courant_sharp_enumerate(spec)
    idx = sorted(c.index for c in certs)
    mu2 = math.pi * bessel_zero(1, ZeroKind.J_PRIME, 1).value ** 2
    bounds = [bounds2d.prop_mu_bound(disc, CONVEX).value, bounds2d.bound_with_mu2(disc, mu2).value,
              bounds2d.bound_L2(disc).value, bounds2d.bound_L1(disc).value,
              bounds2d.bound_noeval_convex(disc).mu_bound.value]
    top = max(c.value for c in certs)
    ok = 29.0 < mu4 < 30.0 and idx == [1, 2, 4] and top < min(bounds)
    verdict(6, ok, f"mu4 {mu4:.4f}, certificates {idx}")


def test_07_counting_dominance(verdict):
    t0 = time.perf_counter()
    spec = oracle.disc_spectrum(R, mu_max=1e4)
    inp = dict(n=2, volume=1.0, surface=2 * math.sqrt(math.pi), t_plus=R)
    margins = [counting.counting_bound(counting.CountingBoundInput(mu=float(mu), **inp))
               - oracle.counting_function(spec, float(mu)) for mu in np.logspace(-4, 4, 200)]
    elapsed = time.perf_counter() - t0
    verdict(7, min(margins) > 0 and elapsed < 5, f"min margin {min(margins):.3f}, {elapsed:.2f} s")


def test_08_tube_volumes(verdict):
    errs = []
    for shape in (Disc.unit_area(), Annulus(0.5, 1.5)):
        s = summarize(shape)
        r = s.delta0 / 2
        errs.append(rel(tube_volume_quadrature(shape, r), tube_volume_closed_form(s.perimeter, s.connectivity_b, r)))
    verdict(8, max(errs) <= 1e-6, f"relative errors {errs[0]:.2e}, {errs[1]:.2e}")


def test_09_cutoffs(verdict):
    t = np.linspace(0, 1, 2048)
    partition = float(np.max(np.abs(regimes.psi(t) ** 2 + regimes.psi(1 - t) ** 2 - 1)))
    grid = np.concatenate([np.logspace(-14, 0, 4096), t])
    sup = float(np.max(np.abs(regimes.psi_prime(grid))))
    ok = partition <= 1e-13 and abs(sup - math.sqrt(3)) <= 1e-6
    verdict(9, ok, f"partition error {partition:.1e}, sup|psi'| {sup:.9f}")


def test_10_dimension_constants(verdict):
    gam = max(dimension_constants(n).gamma_n for n in range(2, 21))
    dmin = min(boundsnd.D_n(n) for n in range(3, 11))
    M = 1.0
    coeff = 2 * 2 * math.pi / (2 * math.pi) ** 2 * math.sqrt(math.pi * M)
    ok = gam < 1 and dmin > 0 and rel(coeff, math.sqrt(M / math.pi)) < 1e-14 \
        and rel(boundsnd._remainder_coeff(2, M), math.sqrt(M / math.pi)) < 1e-14
    verdict(10, ok, f"max gamma {gam:.4f}, min D_n {dmin:.3e}")


def test_11_roots(verdict):
    agree = resid = 0.0
    for c in random_cubics(1000):
        card, bis = bounds2d.xi_star_pair(c)
        agree = max(agree, rel(card, bis))
        resid = max(resid, abs(c(card)) / c.scale(card))
    disc_cubic = bounds2d.cubic_for((4 * math.pi) ** 0.25, CONVEX)
    root = bounds2d.xi_star(disc_cubic)
    resid = max(resid, abs(disc_cubic(root)) / disc_cubic.scale(root))
    nd_ok = True
    for n in range(3, 7):
        ctx = boundsnd.NdBoundContext.from_body(ConvexBodyND.ball(n))
        nd_ok &= boundsnd.f_rho_nd(ctx, 1.01 * boundsnd.xi_star_nd(ctx)) > 0
    ok = agree <= 1e-9 and resid < 1e-9 and nd_ok
    verdict(11, ok, f"Cardano/bisection {agree:.1e}, residual {resid:.1e}, nD {nd_ok}")


def test_12_relaxations(verdict):
    worst = 0.0
    for s in random_convex_summaries(100):
        root = bounds2d.xi_star(bounds2d.cubic_for(s.rho, CONVEX))
        worst = max(worst, root**4 / s.area / bounds2d.L1_value(s.rho, s.area))
    worst_nd = 0.0
    for n in range(3, 7):
        ctx = boundsnd.NdBoundContext.from_body(ConvexBodyND.ball(n))
        worst_nd = max(worst_nd, boundsnd.xi_star_nd(ctx) / (ctx.xi_scale * boundsnd.M1_value(n, ctx.rho, ctx.V)))
    verdict(12, worst <= 1 and worst_nd <= 1, f"max ratio 2D {worst:.3f}, nD {worst_nd:.3e}")


def test_13_rectangle_growth(verdict):
    t0 = time.perf_counter()
    counts = [r.count for r in oracle.courant_sharp_growth([math.sqrt(2) * k for k in (1, 2, 4, 8)], mu_bar=1e3)]
    elapsed = time.perf_counter() - t0
    ok = all(a <= b for a, b in zip(counts, counts[1:])) and counts[-1] > counts[0] and elapsed < 10
    verdict(13, ok, f"counts {counts}, {elapsed:.2f} s")


def test_14_scaling(disc, verdict):
    c = 3.7
    worst = 0.0
    for shape in (Disc.unit_area(), Ellipse(1.5, 1.0), random_convex_fourier()):
        v0 = bounds2d.prop_mu_bound(summarize(shape)).value
        v1 = bounds2d.prop_mu_bound(summarize(shape.scaled(c))).value
        worst = max(worst, rel(v1, v0 / c**2))
    k0 = bounds2d.bound_noeval_convex(disc).k_bound
    k1 = bounds2d.bound_noeval_convex(disc.scaled(c)).k_bound
    ok = worst <= 1e-9 and rel(k1, k0) <= 1e-12
    verdict(14, ok, f"mu scaling error {worst:.1e}, k drift {rel(k1, k0):.1e}")
