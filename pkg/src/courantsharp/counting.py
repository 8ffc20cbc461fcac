"""Upper bound for the Neumann counting function of a convex body, and the
resulting bound on an eigenvalue's index."""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

from .reports import ROBIN_NOTE


@dataclass(frozen=True)
class CountingBoundInput:
    n: int
    volume: float
    surface: float
    t_plus: float
    mu: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or not (2 <= self.n <= 20):
            raise ValueError(f"dimension {self.n!r} outside 2..20")
        if not all(v > 0 for v in (self.volume, self.surface, self.t_plus)):
            raise ValueError("volume, surface and t_plus must be positive")
        if self.mu < 0:
            raise ValueError("mu must be non-negative")

    def scaled(self, c: float) -> "CountingBoundInput":
        n = self.n
        return CountingBoundInput(n, self.volume * c**n, self.surface * c ** (n - 1), self.t_plus * c,
                                  self.mu / c**2)


def _coefficients(n: int) -> list:
    # binomials stay exact integers until the final product
    return [comb(n - 1, i) * math.pi ** (i + 1) / (i + 1) for i in range(n)]


def counting_bound(inp: CountingBoundInput) -> float:
    """F_n(V, S, t_plus, mu) >= N(mu), continuous and increasing in mu."""
    n, mu, t = inp.n, inp.mu, inp.t_plus
    surface_sum = sum(c * mu ** ((n - i - 1) / 2) / t**i for i, c in enumerate(_coefficients(n)))
    return n ** (n / 2) / math.pi**n * (inp.volume * mu ** (n / 2) + inp.surface * surface_sum)


def counting_bound_2d(area: float, perimeter: float, t_plus: float, mu: float) -> float:
    """Planar closed form (2/pi^2)[A mu + L(pi sqrt(mu) + pi^2/(2 t_plus))]."""
    return 2 / math.pi**2 * (area * mu + perimeter * (math.pi * math.sqrt(mu) + math.pi**2 / (2 * t_plus)))


def index_bound(inp: CountingBoundInput, mu_k: float) -> float:
    """Any k with mu_k(Omega) = mu_k satisfies k <= F_n(V, S, t_plus, mu_k)."""
    if mu_k < 0:
        raise ValueError("mu_k must be non-negative")
    return counting_bound(CountingBoundInput(inp.n, inp.volume, inp.surface, inp.t_plus, mu_k))


def robin_flag() -> dict:
    """Both bounds also hold for Robin problems with a non-negative Lipschitz beta."""
    return {"applies_to_robin": True, "robin_note": ROBIN_NOTE}


def counting_report(inp: CountingBoundInput) -> dict:
    return {"quantity": "counting_bound", "n": inp.n, "volume": inp.volume, "surface": inp.surface,
            "t_plus": inp.t_plus, "mu": inp.mu, "value": counting_bound(inp), **robin_flag()}


def index_report(inp: CountingBoundInput, mu_k: float) -> dict:
    return {"quantity": "index_bound", "n": inp.n, "volume": inp.volume, "surface": inp.surface,
            "t_plus": inp.t_plus, "mu_k": mu_k, "value": index_bound(inp, mu_k), **robin_flag()}
