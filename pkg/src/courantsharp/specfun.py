"""Bessel functions, their zeros, and the dimension-dependent constants.

Evaluation of J_nu is delegated to :mod:`scipy.special`; zero finding is done
here by a sign-change scan followed by bisection and a guarded Newton step.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

MAX_ORDER = 50.0
MAX_X = 1.0e4
MAX_INDEX = 100
ZERO_TOL = 1e-14

_SCAN_STEP = 0.25


class BesselDomainError(ValueError):
    """Argument outside the supported range of the Bessel routines."""


class ConvergenceError(RuntimeError):
    """A root search did not converge within its iteration budget."""


class ZeroKind(enum.Enum):
    J = "zero_of_J"
    J_PRIME = "zero_of_J_prime"


@dataclass(frozen=True)
class BesselZero:
    order: float
    kind: ZeroKind
    index: int
    value: float


@dataclass(frozen=True)
class DimensionConstants:
    n: int
    omega_n: float
    Lambda_n: float
    gamma_n: float
    eps0_n: float


def _check_order(order: float, limit: float = MAX_ORDER) -> None:
    if not (0.0 <= order <= limit):
        raise BesselDomainError(f"unsupported Bessel order {order!r} (need 0 <= order <= {limit})")


def bessel_j(order: float, x: float) -> float:
    """J_order(x) for real order in [0, 50] and x in [0, 1e4]."""
    _check_order(order)
    if not (0.0 <= x <= MAX_X):
        raise BesselDomainError(f"x={x!r} outside [0, {MAX_X}]")
    return float(special.jv(order, x))


def bessel_j_prime(order: float, x: float) -> float:
    """Derivative J'_order(x), same domain as :func:`bessel_j`."""
    _check_order(order)
    if not (0.0 <= x <= MAX_X):
        raise BesselDomainError(f"x={x!r} outside [0, {MAX_X}]")
    return float(special.jvp(order, x, 1))


def _target(order: float, kind: ZeroKind):
    if kind is ZeroKind.J:
        return (lambda x: special.jv(order, x)), (lambda x: special.jvp(order, x, 1))
    return (lambda x: special.jvp(order, x, 1)), (lambda x: special.jvp(order, x, 2))


def bessel_zeros_below(order: float, kind: ZeroKind, xmax: float) -> np.ndarray:
    """All positive zeros of J_order (or J'_order) in (0, xmax], increasing.

    No order limit is imposed here; the oracle module needs orders beyond 50.
    Every zero of J_nu and of J'_nu (nu > 0) exceeds nu, so the scan starts
    just below nu to avoid underflow of J_nu near the origin.
    """
    if order < 0:
        raise BesselDomainError("negative order")
    if xmax > MAX_X:
        raise BesselDomainError(f"xmax={xmax!r} beyond {MAX_X}")
    f, fp = _target(order, kind)
    start = max(0.5 * order, _SCAN_STEP)
    if xmax <= start:
        return np.empty(0)
    grid = np.arange(start, xmax + _SCAN_STEP, _SCAN_STEP)
    vals = f(grid)
    exact = grid[vals == 0.0]
    s = np.sign(vals)
    idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
    lo, hi = grid[idx].copy(), grid[idx + 1].copy()
    flo = vals[idx].copy()
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
        if np.all(hi - lo <= ZERO_TOL * np.maximum(1.0, hi)):
            break
    else:
        raise ConvergenceError("bisection did not reach tolerance")
    roots = 0.5 * (lo + hi)
    # one Newton polish, kept only where it stays inside the bracket
    d = fp(roots)
    with np.errstate(divide="ignore", invalid="ignore"):
        polished = roots - f(roots) / d
    ok = np.isfinite(polished) & (polished >= lo) & (polished <= hi)
    roots = np.where(ok, polished, roots)
    out = np.concatenate([roots, exact])
    out = np.sort(out[(out > 0) & (out <= xmax)])
    return out


@lru_cache(maxsize=4096)
def _zero_table(order: float, kind: ZeroKind, count: int) -> tuple:
    xmax = order + (count + 2) * math.pi + 10.0
    zeros = bessel_zeros_below(order, kind, min(xmax, MAX_X))
    if len(zeros) < count:
        raise ConvergenceError(f"found only {len(zeros)} zeros of {kind.value} order {order}")
    return tuple(float(z) for z in zeros[:count])


def bessel_zero(order: float, kind: ZeroKind | str, index: int) -> BesselZero:
    """The ``index``-th positive zero of J_order (or of J'_order).

    >>> round(bessel_zero(0, "zero_of_J", 1).value, 12)
    2.404825557695
    """
    kind = ZeroKind(kind)
    _check_order(order)
    if not (1 <= index <= MAX_INDEX):
        raise BesselDomainError(f"index {index} outside 1..{MAX_INDEX}")
    value = _zero_table(float(order), kind, int(index))[index - 1]
    return BesselZero(float(order), kind, int(index), value)


def gamma(x: float) -> float:
    return math.gamma(x)


def unit_ball_volume(n: int) -> float:
    """omega_n = pi^(n/2) / Gamma(n/2 + 1)."""
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


@lru_cache(maxsize=None)
def dimension_constants(n: int) -> DimensionConstants:
    """Faber-Krahn constant, Weyl ratio gamma(n) and the bulk threshold eps0(n).

    eps0 is half of the largest admissible value (1 - g)/(1 + g), g = gamma^(2/n),
    which keeps the leading coefficient of the necessary condition positive.
    """
    if not (2 <= int(n) <= 20) or int(n) != n:
        raise ValueError(f"dimension n={n!r} outside 2..20")
    n = int(n)
    omega = unit_ball_volume(n)
    j = bessel_zero(n / 2 - 1, ZeroKind.J, 1).value
    lam = omega ** (2 / n) * j**2
    gam = (2 * math.pi) ** n / (omega * lam ** (n / 2))
    g = gam ** (2 / n)
    eps0 = 0.5 * (1 - g) / (1 + g)
    return DimensionConstants(n=n, omega_n=omega, Lambda_n=lam, gamma_n=gam, eps0_n=eps0)
