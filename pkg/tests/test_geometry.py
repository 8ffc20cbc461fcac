import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from courantsharp.geometry import (ISOPERIMETRIC_RHO_2D, Annulus, ConvexBodyND, Disc, Ellipse, FourierCurve,
                                   GeometricSummary, GeometryError, curvature, jacobian_factor, nd_body_summary,
                                   nd_rho_lower_bound, shape_from_dict, summarize, tube_volume,
                                   tube_volume_closed_form, tube_volume_quadrature, tubular_map)
from courantsharp.specfun import unit_ball_volume


@pytest.fixture(scope="module")
def bumpy():
    # r = 1 + 0.2 cos(3 th): star-shaped, not convex
    return FourierCurve.from_polar([1.0, 0.0, 0.0, 0.2], [])


@pytest.fixture(scope="module")
def bumpy_summary(bumpy):
    return summarize(bumpy)


@pytest.fixture(scope="module")
def annulus_summary():
    return summarize(Annulus(1.0, 2.0))


# curvature and the tubular map ---------------------------------------------


@pytest.mark.parametrize("s", [0.0, 0.7, 3.0, 6.0])
def test_disc_curvature(s):
    assert curvature(Disc(2.0), s) == pytest.approx(0.5, rel=1e-12)


def test_ellipse_curvature_at_major_axis_end():
    assert curvature(Ellipse(2.0, 1.0), 0.0) == pytest.approx(2.0, rel=1e-12)


def test_fourier_circle_curvature():
    circle = FourierCurve((0.0, 3.0), (0.0, 0.0), (0.0, 0.0), (0.0, 3.0))
    s = np.linspace(0, circle.perimeter, 50, endpoint=False)
    assert np.allclose(circle.curvature_at(s), 1 / 3, atol=1e-8)


def test_clockwise_input_is_reoriented():
    cw = FourierCurve((0.0, 3.0), (0.0, 0.0), (0.0, 0.0), (0.0, -3.0))
    assert cw.area == pytest.approx(9 * math.pi)
    assert curvature(cw, 1.0) == pytest.approx(1 / 3)


def test_annulus_inner_circle_is_concave():
    a = Annulus(1.0, 2.0)
    # the inner circle starts after the outer one in arc length
    assert curvature(a, 4 * math.pi + 1.0) == pytest.approx(-1.0, rel=1e-12)


def test_tubular_map_disc():
    d = Disc(1.0)
    p = tubular_map(d, 0.0, 0.5)
    assert np.linalg.norm(p) == pytest.approx(0.5)
    assert jacobian_factor(d, 0.0, 0.5) == pytest.approx(0.5)


def test_tubular_map_at_zero_is_boundary():
    e = Ellipse(2.0, 1.0)
    for s in (0.0, 1.3, 5.0):
        assert np.allclose(tubular_map(e, s, 0.0), e.point_at(s)[0])
        assert jacobian_factor(e, s, 0.0) == 1.0


def test_ellipse_jacobian():
    assert jacobian_factor(Ellipse(2.0, 1.0), 0.0, 0.25) == pytest.approx(0.5, rel=1e-12)


# summaries -------------------------------------------------------------------


def test_unit_area_disc_summary(unit_disc_summary):
    s = unit_disc_summary
    assert s.rho == pytest.approx((4 * math.pi) ** 0.25, rel=1e-12)
    assert s.t_plus == pytest.approx(1 / math.sqrt(math.pi), rel=1e-12)
    assert s.delta0 == s.t_plus
    assert s.is_convex and s.connectivity_b == 0


def test_disc_summary():
    s = summarize(Disc(1.0))
    assert s.area == pytest.approx(math.pi, rel=1e-13)
    assert s.perimeter == pytest.approx(2 * math.pi, rel=1e-13)
    assert s.diameter == pytest.approx(2.0, rel=1e-12)


def test_ellipse_summary_and_polygon_oracle():
    s = summarize(Ellipse(2.0, 1.0))
    assert s.area == pytest.approx(2 * math.pi, rel=1e-13)
    assert s.t_plus == pytest.approx(0.5, rel=1e-12)
    assert s.perimeter == pytest.approx(9.688448220547677, rel=1e-12)
    th = np.linspace(0, 2 * np.pi, 10**6 + 1)
    poly = np.sum(np.hypot(np.diff(2 * np.cos(th)), np.diff(np.sin(th))))
    assert s.perimeter == pytest.approx(poly, rel=1e-10)


def test_annulus_summary(annulus_summary):
    s = annulus_summary
    assert s.connectivity_b == 1 and not s.is_convex
    assert s.t_plus == pytest.approx(1.0)
    # the true cut distance is (2 - 1)/2; the sampled value is a lower bound
    assert 0.49 < s.delta0 <= 0.5 and s.delta0_conservative


def test_nonconvex_summary(bumpy, bumpy_summary):
    assert not bumpy.is_convex
    s = bumpy_summary
    assert s.delta0 <= s.t_plus and s.delta0_conservative
    assert s.rho >= ISOPERIMETRIC_RHO_2D


def test_non_simple_curve_rejected():
    with pytest.raises(GeometryError):
        FourierCurve((0, 0, 0), (0, 1, 0), (0, 0, 0), (0, 0, 1))


@pytest.mark.parametrize("bad", [lambda: Disc(0.0), lambda: Annulus(2.0, 1.0), lambda: Ellipse(-1.0, 1.0),
                                 lambda: Disc(1e-7)])
def test_degenerate_shapes_rejected(bad):
    with pytest.raises(GeometryError):
        bad()


@settings(max_examples=15, deadline=None)
@given(st.floats(0.2, 5.0), st.floats(0.2, 5.0), st.floats(0.1, 10.0))
def test_scaling_and_isoperimetry(a, b, c):
    e = Ellipse(a, b)
    s0, s1 = summarize(e), summarize(e.scaled(c))
    assert s1.area == pytest.approx(c * c * s0.area, rel=1e-10)
    assert s1.perimeter == pytest.approx(c * s0.perimeter, rel=1e-10)
    assert s1.t_plus == pytest.approx(c * s0.t_plus, rel=1e-9)
    assert s1.rho == pytest.approx(s0.rho, rel=1e-10)
    assert s0.rho >= ISOPERIMETRIC_RHO_2D - 1e-9
    assert s0.diameter <= s0.perimeter / 2


def test_disc_attains_isoperimetric_floor():
    assert summarize(Disc(3.7)).rho == pytest.approx(ISOPERIMETRIC_RHO_2D, abs=1e-6)


def test_summary_invariants():
    with pytest.raises(GeometryError):
        GeometricSummary.from_invariants(1.0, 4.0, 0.3, delta0=0.4)
    s = GeometricSummary.from_invariants(1.0, 4.0, 0.3)
    assert GeometricSummary.from_dict(s.to_dict()) == s


# tube volumes ------------------------------------------------------------------


def test_disc_tube_closed_form():
    assert tube_volume(Disc(1.0), 0.1) == pytest.approx(0.19 * math.pi, rel=1e-14)


def test_annulus_tube_is_linear(annulus_summary):
    r = 0.3
    assert tube_volume(annulus_summary, r) == pytest.approx(annulus_summary.perimeter * r, rel=1e-15)


def test_two_holes_summary():
    s = GeometricSummary.from_invariants(10.0, 12.0, 0.5, connectivity_b=2)
    assert tube_volume(s, 0.2) == pytest.approx(12.0 * 0.2 + math.pi * 0.04)


@pytest.mark.parametrize("shape", [Disc(1.0), Ellipse(2.0, 1.0)], ids=["disc", "ellipse"])
def test_tube_quadrature_matches_closed_form(shape):
    s = summarize(shape)
    for frac in (0.3, 1.0):
        r = frac * s.delta0
        exact = tube_volume_closed_form(s.perimeter, s.connectivity_b, r)
        assert tube_volume_quadrature(shape, r) == pytest.approx(exact, rel=1e-6)


def test_tube_beyond_cut_distance_uses_quadrature():
    # for the unit disc every r >= 1 covers the whole disc
    assert tube_volume(Disc(1.0), 1.5) == pytest.approx(math.pi, rel=1e-6)


def test_tube_bounded_by_M_L_r(bumpy, bumpy_summary):
    r = 0.75 * bumpy_summary.delta0
    assert tube_volume_quadrature(bumpy, r) <= 7 / 4 * bumpy_summary.perimeter * r
    e = Ellipse(2.0, 1.0)
    se = summarize(e)
    assert tube_volume_quadrature(e, 0.75 * se.delta0) <= se.perimeter * 0.75 * se.delta0


# n-dimensional bodies ------------------------------------------------------------


def test_ball_closed_forms():
    b = ConvexBodyND.ball(3)
    V, S, t, diam, rho = nd_body_summary(b)
    assert V == pytest.approx(4 * math.pi / 3) and S == pytest.approx(4 * math.pi)
    assert (t, diam) == (1.0, 2.0)
    assert rho == pytest.approx(math.sqrt(4 * math.pi) / (4 * math.pi / 3) ** (1 / 3))


@pytest.mark.parametrize("n", [3, 5, 10, 20])
def test_ball_rho_is_scale_free_and_minimal(n):
    r1 = ConvexBodyND.ball(n, 1.0).rho_nd
    r2 = ConvexBodyND.ball(n, 7.5).rho_nd
    assert r1 == pytest.approx(r2, rel=1e-12)
    assert r1 == pytest.approx(nd_rho_lower_bound(n), rel=1e-12)


def test_summary_body_floor():
    floor = math.sqrt(3) * unit_ball_volume(3) ** (1 / 6)
    assert math.sqrt(6) >= floor
    ConvexBodyND.summary(3, 1.0, 6.0, 0.3, 1.8)
    with pytest.raises(GeometryError):
        ConvexBodyND.summary(3, 1.0, 4.0, 0.3, 1.8)


def test_body_dimension_limits():
    with pytest.raises(GeometryError):
        ConvexBodyND.ball(2)
    with pytest.raises(GeometryError):
        ConvexBodyND.ball(21)


# shape files ----------------------------------------------------------------------


@pytest.mark.parametrize("shape", [Disc(1.5), Annulus(0.5, 1.0), Ellipse(3.0, 1.0),
                                   FourierCurve.from_polar([1.0, 0.05], [0.0, 0.02]),
                                   ConvexBodyND.ball(4, 2.0), ConvexBodyND.summary(3, 1.0, 6.0, 0.3, 1.8)])
def test_shape_round_trip(shape):
    assert shape_from_dict(shape.to_dict()) == shape


@pytest.mark.parametrize("bad", [{}, {"kind": "square"}, {"kind": "disc"}, {"kind": "ellipse", "semi_axis_a": 1}, []])
def test_bad_shape_descriptions(bad):
    with pytest.raises(GeometryError):
        shape_from_dict(bad)
