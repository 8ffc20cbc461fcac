import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from courantsharp.specfun import (BesselDomainError, ZeroKind, bessel_j, bessel_j_prime, bessel_zero,
                                  bessel_zeros_below, dimension_constants, unit_ball_volume)


@pytest.mark.parametrize("order,index", [(0, 1), (0, 5), (1, 1), (2.5, 3), (7, 2), (20, 10), (0.5, 1)])
def test_zeros_of_J_match_mpmath(order, index):
    ref = float(mpmath.besseljzero(order, index))
    assert bessel_zero(order, ZeroKind.J, index).value == pytest.approx(ref, rel=1e-13)


@pytest.mark.parametrize("order,index", [(1, 1), (2, 1), (0, 1), (3, 4), (12, 2), (1.5, 2)])
def test_zeros_of_J_prime_match_mpmath(order, index):
    # mpmath lists x = 0 as the first zero of J0'; only positive zeros count here
    shift = 1 if order == 0 else 0
    ref = float(mpmath.besseljzero(order, index + shift, derivative=1))
    assert bessel_zero(order, ZeroKind.J_PRIME, index).value == pytest.approx(ref, rel=1e-13)


def test_frozen_reference_zeros():
    assert bessel_zero(0, "zero_of_J", 1).value == pytest.approx(2.404825557695773, abs=1e-14)
    assert bessel_zero(1, "zero_of_J_prime", 1).value == pytest.approx(1.841183781340659, abs=1e-14)
    assert bessel_zero(2, "zero_of_J_prime", 1).value == pytest.approx(3.054236928227140, abs=1e-13)


def test_zero_of_J0_prime_is_zero_of_J1():
    # J0' = -J1, so the positive zeros coincide
    for k in range(1, 6):
        assert bessel_zero(0, ZeroKind.J_PRIME, k).value == pytest.approx(
            bessel_zero(1, ZeroKind.J, k).value, rel=1e-13)


def test_half_order_zeros_are_multiples_of_pi():
    # J_{1/2}(x) is proportional to sin(x)/sqrt(x)
    for k in range(1, 8):
        assert bessel_zero(0.5, ZeroKind.J, k).value == pytest.approx(k * math.pi, rel=1e-13)


def test_zeros_interlace():
    for nu in (0, 1, 3):
        a = bessel_zeros_below(nu, ZeroKind.J, 60.0)
        b = bessel_zeros_below(nu + 1, ZeroKind.J, 60.0)
        assert np.all(a[: len(b)] < b) and np.all(b[: len(a) - 1] < a[1:])


def test_evaluation_matches_mpmath():
    for nu, x in [(0, 1.3), (2.5, 7.1), (10, 30.0), (50, 60.0)]:
        assert bessel_j(nu, x) == pytest.approx(float(mpmath.besselj(nu, x)), rel=1e-10, abs=1e-300)
        assert bessel_j_prime(nu, x) == pytest.approx(float(mpmath.besselj(nu, x, derivative=1)),
                                                      rel=1e-9, abs=1e-300)


@pytest.mark.parametrize("bad", [dict(order=-1, x=1.0), dict(order=51, x=1.0), dict(order=1, x=-0.1),
                                 dict(order=1, x=2e4)])
def test_domain_errors(bad):
    with pytest.raises(BesselDomainError):
        bessel_j(bad["order"], bad["x"])


def test_zero_index_limits():
    with pytest.raises(BesselDomainError):
        bessel_zero(0, ZeroKind.J, 0)
    with pytest.raises(BesselDomainError):
        bessel_zero(0, ZeroKind.J, 101)
    assert bessel_zero(0, ZeroKind.J, 100).value == pytest.approx(float(mpmath.besseljzero(0, 100)), rel=1e-13)


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 30), st.integers(1, 6))
def test_zero_is_a_root(nu, k):
    z = bessel_zero(nu, ZeroKind.J, k).value
    assert abs(bessel_j(nu, z)) < 1e-12


def test_unit_ball_volume():
    assert unit_ball_volume(2) == pytest.approx(math.pi)
    assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3)
    assert unit_ball_volume(4) == pytest.approx(math.pi**2 / 2)


def test_dimension_constants_reference_values():
    d2 = dimension_constants(2)
    assert d2.Lambda_n == pytest.approx(math.pi * 2.404825557695773**2, rel=1e-14)
    assert d2.Lambda_n == pytest.approx(18.168, abs=1e-3)
    assert d2.gamma_n == pytest.approx(0.69166, abs=1e-5)
    d3 = dimension_constants(3)
    assert d3.Lambda_n == pytest.approx(25.646, abs=1e-3)
    assert d3.gamma_n == pytest.approx(0.45595, abs=1e-5)
    assert d3.eps0_n == pytest.approx(0.12799, abs=1e-5)


def test_gamma_below_one_and_eps0_positive():
    for n in range(2, 21):
        d = dimension_constants(n)
        assert 0 < d.gamma_n < 1
        g = d.gamma_n ** (2 / n)
        assert 0 < d.eps0_n < (1 - g) / (1 + g)


def test_dimension_out_of_range():
    with pytest.raises(ValueError):
        dimension_constants(21)
    with pytest.raises(ValueError):
        dimension_constants(1)
