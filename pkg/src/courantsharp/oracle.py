"""Exact Neumann spectra of discs and rectangles, nodal counts of the standard
separable eigenfunctions, and a Courant-sharp scan over them.

Within a degenerate cluster only the standard product/polar eigenfunctions are
examined; linear combinations are not analysed, so every certificate carries
``basis_restricted=True``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .specfun import ZeroKind, bessel_zeros_below

CLUSTER_RTOL = 1e-12
MAX_DISC_COUNT = 10_000
MAX_RECT_COUNT = 100_000


class CoverageError(ValueError):
    """The requested eigenvalue lies beyond the computed part of the spectrum."""


@dataclass(frozen=True)
class SpectrumEntry:
    index: int
    value: float
    multiplicity_class: int
    mode: tuple
    nodal_count: int

    @property
    def mode_label(self) -> str:
        return ":".join(str(x) for x in self.mode)


@dataclass(frozen=True)
class CourantSharpCertificate:
    index: int
    value: float
    nodal_count: int
    mode: tuple
    predecessor_strictly_smaller: bool
    basis_restricted: bool = True

    def __post_init__(self):
        if self.nodal_count != self.index or not self.predecessor_strictly_smaller:
            raise ValueError("not a valid Courant-sharp certificate")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mode"] = list(self.mode)
        return d


class Spectrum(list):
    """List of entries plus ``coverage``: every eigenvalue below it is present."""

    def __init__(self, entries=(), coverage: float = 0.0):
        super().__init__(entries)
        self.coverage = coverage


def _assemble(values, modes, nodal, count, mu_max=None):
    order = sorted(range(len(values)), key=lambda i: (values[i], modes[i]))
    truncated = count is not None and len(order) > count
    if count is not None:
        order = order[:count]
    out, cls = Spectrum(), 0
    prev = None
    for pos, i in enumerate(order, start=1):
        v = float(values[i])
        if prev is None or v - prev > CLUSTER_RTOL * max(abs(v), 1.0):
            cls = pos
        out.append(SpectrumEntry(pos, v, cls, modes[i], int(nodal[i])))
        prev = v
    if mu_max is not None and not truncated:
        out.coverage = float(mu_max)
    elif out:
        out.coverage = out[-1].value
    return out


def _disc_modes(radius: float, kind: ZeroKind, xmax: float):
    values, modes, nodal = [], [], []
    if kind is ZeroKind.J_PRIME:
        values.append(0.0)
        modes.append((0, 1, ""))
        nodal.append(1)
    m = 0
    while True:
        zeros = bessel_zeros_below(m, kind, xmax)
        if m > 0 and len(zeros) == 0:
            break
        offset = 1 if kind is ZeroKind.J_PRIME and m == 0 else 0
        for j, z in enumerate(zeros, start=1 + offset):
            v = (z / radius) ** 2
            if m == 0:
                values.append(v)
                modes.append((0, j, ""))
                nodal.append(j)
            else:
                for trig in ("cos", "sin"):
                    values.append(v)
                    modes.append((m, j, trig))
                    nodal.append(2 * m * j)
        m += 1
    return values, modes, nodal


def _disc_spectrum(radius, count, mu_max, kind, limit):
    if radius <= 0:
        raise ValueError("radius must be positive")
    if mu_max is not None:
        values, modes, nodal = _disc_modes(radius, kind, radius * math.sqrt(mu_max))
        return _assemble(values, modes, nodal, count, mu_max)
    if count < 0 or count > limit:
        raise ValueError(f"count must lie in 0..{limit}")
    if count == 0:
        return Spectrum()
    area = math.pi * radius**2
    # Weyl estimate with a factor 2 margin, doubled until enough modes appear
    mu_max = 2 * (4 * math.pi * count / area) + 50 / area
    while True:
        values, modes, nodal = _disc_modes(radius, kind, radius * math.sqrt(mu_max))
        if len(values) >= count:
            return _assemble(values, modes, nodal, count)
        mu_max *= 2


def disc_spectrum(radius: float, count: int | None = None, mu_max: float | None = None) -> list:
    """Neumann eigenvalues (j'_{m,k}/R)^2 with multiplicity.

    Either the first ``count`` entries, or (with ``mu_max``) every eigenvalue
    up to ``mu_max``, optionally truncated to ``count``.
    """
    if count is None and mu_max is None:
        raise ValueError("give count or mu_max")
    return _disc_spectrum(radius, count, mu_max, ZeroKind.J_PRIME, MAX_DISC_COUNT)


def disc_dirichlet_spectrum(radius: float, count: int | None = None, mu_max: float | None = None) -> list:
    """Dirichlet eigenvalues (j_{m,k}/R)^2, used to check the remainder bound."""
    if count is None and mu_max is None:
        raise ValueError("give count or mu_max")
    return _disc_spectrum(radius, count, mu_max, ZeroKind.J, MAX_DISC_COUNT)


def _rect_modes(a, b, mu_max):
    pmax = int(a * math.sqrt(mu_max) / math.pi) + 1
    qmax = int(b * math.sqrt(mu_max) / math.pi) + 1
    p, q = np.meshgrid(np.arange(pmax + 1), np.arange(qmax + 1), indexing="ij")
    vals = math.pi**2 * (p**2 / a**2 + q**2 / b**2)
    keep = vals <= mu_max
    p, q, vals = p[keep], q[keep], vals[keep]
    modes = list(zip(p.tolist(), q.tolist()))
    return vals.tolist(), modes, ((p + 1) * (q + 1)).tolist()


def rectangle_spectrum(a: float, b: float, count: int | None = None, mu_max: float | None = None) -> list:
    """Neumann eigenvalues pi^2 (p^2/a^2 + q^2/b^2) of (0, a) x (0, b)."""
    if a <= 0 or b <= 0:
        raise ValueError("side lengths must be positive")
    if mu_max is not None:
        return _assemble(*_rect_modes(a, b, mu_max), count, mu_max)
    if count is None or count < 0 or count > MAX_RECT_COUNT:
        raise ValueError(f"count must lie in 0..{MAX_RECT_COUNT}")
    if count == 0:
        return Spectrum()
    mu = 2 * (4 * math.pi * count / (a * b)) + 50 / (a * b)
    while True:
        vals, modes, nodal = _rect_modes(a, b, mu)
        if len(vals) >= count:
            return _assemble(vals, modes, nodal, count)
        mu *= 2


def courant_sharp_enumerate(spectrum: list) -> list:
    """Certificates for every cluster whose first index k carries a standard mode with k nodal domains."""
    certs = []
    clusters: dict = {}
    for e in spectrum:
        clusters.setdefault(e.multiplicity_class, []).append(e)
    for k, members in clusters.items():
        hit = next((e for e in members if e.nodal_count == k), None)
        if hit is not None:
            certs.append(CourantSharpCertificate(k, hit.value, hit.nodal_count, hit.mode, True))
    return certs


def counting_function(spectrum: list, mu: float) -> int:
    """#{k : mu_k < mu}; ``mu`` may not exceed the spectrum's coverage."""
    if isinstance(spectrum, Spectrum):
        coverage = spectrum.coverage
    else:
        coverage = spectrum[-1].value if spectrum else 0.0
    if mu > coverage:
        raise CoverageError(f"mu={mu!r} beyond spectrum coverage {coverage!r}")
    values = np.fromiter((e.value for e in spectrum), dtype=float)
    return int(np.searchsorted(values, mu, side="left"))


def has_degeneracy(spectrum: list) -> bool:
    """True when some cluster holds two different modes (exact coincidences included)."""
    seen = set()
    for e in spectrum:
        if e.multiplicity_class in seen:
            return True
        seen.add(e.multiplicity_class)
    return False


@dataclass(frozen=True)
class GrowthRow:
    L: float
    count: int
    degenerate: bool
    certified_values: tuple


def courant_sharp_growth(L_values, mu_bar: float = 1e3) -> list:
    """Number of certificates with value <= mu_bar on (0, 1) x (0, L), per L."""
    rows = []
    for L in L_values:
        spec = rectangle_spectrum(1.0, float(L), mu_max=mu_bar)
        certs = [c for c in courant_sharp_enumerate(spec) if c.value <= mu_bar]
        rows.append(GrowthRow(float(L), len(certs), has_degeneracy(spec), tuple(c.value for c in certs)))
    return rows


def spectrum_to_csv(spectrum: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "value", "mode", "multiplicity_class", "nodal_count"])
    for e in spectrum:
        w.writerow([e.index, repr(e.value), e.mode_label, e.multiplicity_class, e.nodal_count])
    return buf.getvalue()


def certificates_to_json(certs: list) -> str:
    return json.dumps([c.to_dict() for c in certs], sort_keys=True)
