"""Constant sets by domain class, and the cut-off profile psi / chi0 / chi1."""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np

from .specfun import ZeroKind, bessel_zero, dimension_constants

CUTOFF_C = 2.0 * math.sqrt(3.0)
EPS0_2D = 1.0 / 6.0


class Regime(enum.Enum):
    GENERAL_2D = "General2D"
    SIMPLY_OR_DOUBLY_CONNECTED_2D = "SimplyOrDoublyConnected2D"
    CONVEX_2D = "Convex2D"
    GENERAL_ND = "GeneralND"
    CONVEX_ND = "ConvexND"

    @property
    def is_nd(self) -> bool:
        return self in (Regime.GENERAL_ND, Regime.CONVEX_ND)

    @property
    def is_convex(self) -> bool:
        return self in (Regime.CONVEX_2D, Regime.CONVEX_ND)


@dataclass(frozen=True)
class RegimeConstants:
    regime: Regime
    Lambda: float
    C_cutoff: float
    m_minus: float
    eps0: float
    M: float
    K: float
    n: int = 2

    def to_dict(self) -> dict:
        d = asdict(self)
        d["regime"] = self.regime.value
        return d


_TABLE_2D = {
    Regime.GENERAL_2D: (7 / 4, 7.0),
    Regime.SIMPLY_OR_DOUBLY_CONNECTED_2D: (1.0, 7.0),
    Regime.CONVEX_2D: (1.0, 4.0),
}


def constants_for(regime: Regime | str, n: int | None = None) -> RegimeConstants:
    """One row of the constant tables.

    2D rows share Lambda = pi j_{0,1}^2, C = 2 sqrt(3), m_- = 1/4, eps0 = 1/6.
    nD rows use Lambda(n), m_- = 4^-(n-1) and eps0 from the dimension constants.
    """
    regime = Regime(regime)
    if not regime.is_nd:
        M, K = _TABLE_2D[regime]
        lam = math.pi * bessel_zero(0, ZeroKind.J, 1).value ** 2
        return RegimeConstants(regime, lam, CUTOFF_C, 0.25, EPS0_2D, M, K, 2)
    if n is None or int(n) != n or not (3 <= n <= 20):
        raise ValueError(f"nD regime needs 3 <= n <= 20, got {n!r}")
    n = int(n)
    dc = dimension_constants(n)
    if regime is Regime.GENERAL_ND:
        M, K = (7 / 4) ** (n - 1), 7.0 ** (n - 1)
    else:
        M, K = 1.0, 4.0 ** (n - 1)
    return RegimeConstants(regime, dc.Lambda_n, CUTOFF_C, 0.25 ** (n - 1), dc.eps0_n, M, K, n)


def psi(t):
    """sqrt(3t^2 - 2t^3) on [0, 1], 0 below, 1 above."""
    t = np.asarray(t, dtype=float)
    tc = np.clip(t, 0.0, 1.0)
    out = np.sqrt(np.maximum(3 * tc**2 - 2 * tc**3, 0.0))
    return out if out.ndim else float(out)


def psi_prime(t):
    """Derivative of psi on the open interval (0, 1); zero outside [0, 1]."""
    t = np.asarray(t, dtype=float)
    inside = (t > 0) & (t < 1)
    tc = np.where(inside, t, 0.5)
    # d/dt sqrt(3t^2 - 2t^3) = 3t(1 - t) / sqrt(3t^2 - 2t^3) = 3(1 - t) / sqrt(3 - 2t)
    out = np.where(inside, 3 * (1 - tc) / np.sqrt(3 - 2 * tc), 0.0)
    return out if out.ndim else float(out)


def chi0(t):
    return psi(2 * (np.asarray(t, dtype=float) - 0.25))


def chi1(t):
    return psi(2 * (0.75 - np.asarray(t, dtype=float)))


def spatial_cutoffs(dist, delta):
    """(phi0, phi1) at points with the given boundary distance; diagnostic only."""
    x = np.asarray(dist, dtype=float) / delta
    return chi0(x), chi1(x)


@dataclass(frozen=True)
class CutoffProfile:
    """psi, chi0, chi1 bundled with B = sup|chi0'| = 2 sup|psi'| = 2 sqrt(3), the constant C."""

    B: float = CUTOFF_C

    psi = staticmethod(psi)
    psi_prime = staticmethod(psi_prime)
    chi0 = staticmethod(chi0)
    chi1 = staticmethod(chi1)
