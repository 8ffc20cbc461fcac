"""Planar C^2 domains, convex bodies in R^n, and their geometric invariants.

Every planar shape is reduced to one or more closed trigonometric-polynomial
curves, each oriented so that its left normal points into the domain.  With
that convention the signed curvature is positive on convex arcs and the
tubular map is ``F(s, t) = gamma(s) + t n(s)``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Sequence, Union

import numpy as np
from scipy import optimize
from scipy.spatial import cKDTree
from shapely.geometry import LinearRing

from .specfun import unit_ball_volume

ARC_NODES = 4096
CLOUD_NODES = 1024
CUT_SAMPLES = 1024
CONVEXITY_TOL = 1e-9
MIN_AREA = 1e-12
MAX_CURVATURE = 1e9

ISOPERIMETRIC_RHO_2D = math.sqrt(2.0) * math.pi**0.25


class GeometryError(ValueError):
    """Invalid or degenerate geometric input."""


# --------------------------------------------------------------------------
# boundary curves


class _TrigCurve:
    """Closed curve x(th), y(th) given by cosine/sine coefficients, th in [0, 2pi)."""

    def __init__(self, ax, bx, ay, by):
        size = max(len(ax), len(bx), len(ay), len(by))

        def pad(c):
            out = np.zeros(size)
            out[: len(c)] = c
            return out

        self.ax, self.bx, self.ay, self.by = (pad(np.asarray(c, float)) for c in (ax, bx, ay, by))
        self.k = np.arange(size, dtype=float)
        self._arc = None

    def _eval(self, theta, order):
        th = np.atleast_1d(np.asarray(theta, float))
        kt = np.outer(th, self.k)
        c, s = np.cos(kt), np.sin(kt)
        kp = self.k**order
        # d^m/dth^m of a cos(k th) + b sin(k th) cycles with period 4
        phase = order % 4
        if phase == 0:
            fx = c @ (self.ax * kp) + s @ (self.bx * kp)
            fy = c @ (self.ay * kp) + s @ (self.by * kp)
        elif phase == 1:
            fx = -s @ (self.ax * kp) + c @ (self.bx * kp)
            fy = -s @ (self.ay * kp) + c @ (self.by * kp)
        elif phase == 2:
            fx = -c @ (self.ax * kp) - s @ (self.bx * kp)
            fy = -c @ (self.ay * kp) - s @ (self.by * kp)
        else:
            fx = s @ (self.ax * kp) - c @ (self.bx * kp)
            fy = s @ (self.ay * kp) - c @ (self.by * kp)
        return np.stack([fx, fy], axis=-1)

    def point(self, th):
        return self._eval(th, 0)

    def d1(self, th):
        return self._eval(th, 1)

    def d2(self, th):
        return self._eval(th, 2)

    def speed(self, th):
        return np.linalg.norm(self.d1(th), axis=-1)

    def curvature(self, th):
        d1, d2 = self.d1(th), self.d2(th)
        cross = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
        return cross / np.linalg.norm(d1, axis=-1) ** 3

    def inward_normal(self, th):
        d1 = self.d1(th)
        t = d1 / np.linalg.norm(d1, axis=-1, keepdims=True)
        return np.stack([-t[:, 1], t[:, 0]], axis=-1)

    def signed_area(self, nodes=ARC_NODES):
        th = 2 * np.pi * np.arange(nodes) / nodes
        p, d = self.point(th), self.d1(th)
        return 0.5 * np.mean(p[:, 0] * d[:, 1] - p[:, 1] * d[:, 0]) * 2 * np.pi

    # arc length ------------------------------------------------------------

    def _arc_series(self):
        """Fourier series of the speed; doubled until the length is stable."""
        if self._arc is not None:
            return self._arc
        nodes, prev = ARC_NODES, None
        while True:
            th = 2 * np.pi * np.arange(nodes) / nodes
            coef = np.fft.rfft(self.speed(th)) / nodes
            length = 2 * np.pi * coef[0].real
            if prev is not None and abs(length - prev) <= 1e-9 * length:
                break
            if nodes >= 2**17:
                raise GeometryError("arc length did not stabilise")
            prev, nodes = length, nodes * 2
        keep = np.abs(coef) > 1e-17 * abs(coef[0])
        keep[0] = True
        last = np.nonzero(keep)[0].max()
        coef = coef[: last + 1].copy()
        if nodes % 2 == 0 and last == nodes // 2:
            coef[-1] *= 0.5
        self._arc = (coef, length)
        return self._arc

    @property
    def length(self) -> float:
        return self._arc_series()[1]

    def arclength(self, th):
        coef, _ = self._arc_series()
        th = np.atleast_1d(np.asarray(th, float))
        k = np.arange(1, len(coef))
        e = np.exp(1j * np.outer(th, k)) - 1.0
        return coef[0].real * th + 2.0 * np.real(e @ (coef[1:] / (1j * k)))

    def theta_of_s(self, s):
        s = np.atleast_1d(np.asarray(s, float))
        length = self.length
        th = 2 * np.pi * s / length
        active = np.arange(len(th))
        for _ in range(50):
            step = (self.arclength(th[active]) - s[active]) / self.speed(th[active])
            th[active] -= step
            # a few ulps of theta is the floor set by rounding
            active = active[np.abs(step) > 4 * np.finfo(float).eps * np.maximum(1.0, np.abs(th[active]))]
            if not len(active):
                break
        return th


def _circle(radius, clockwise=False):
    sgn = -1.0 if clockwise else 1.0
    return _TrigCurve([0.0, radius], [0.0, 0.0], [0.0, 0.0], [0.0, sgn * radius])


# --------------------------------------------------------------------------
# planar shapes


class _PlanarBase:
    kind = ""

    @cached_property
    def _curves(self) -> list:
        raise NotImplementedError

    @property
    def connectivity_b(self) -> int:
        return len(self._curves) - 1

    @cached_property
    def _lengths(self) -> np.ndarray:
        return np.array([c.length for c in self._curves])

    @property
    def perimeter(self) -> float:
        return float(self._lengths.sum())

    def _locate(self, s):
        """Map global arc length s in [0, L) to (component index, theta)."""
        s = np.atleast_1d(np.asarray(s, float))
        total = self.perimeter
        s = np.mod(s, total)
        edges = np.concatenate([[0.0], np.cumsum(self._lengths)])
        comp = np.clip(np.searchsorted(edges, s, side="right") - 1, 0, len(self._curves) - 1)
        th = np.empty_like(s)
        for h, curve in enumerate(self._curves):
            mask = comp == h
            if mask.any():
                th[mask] = curve.theta_of_s(s[mask] - edges[h])
        return comp, th

    def _per_component(self, s, method):
        comp, th = self._locate(s)
        out = None
        for h, curve in enumerate(self._curves):
            mask = comp == h
            if not mask.any():
                continue
            val = getattr(curve, method)(th[mask])
            if out is None:
                out = np.zeros((len(th),) + val.shape[1:])
            out[mask] = val
        return out

    def point_at(self, s):
        return self._per_component(s, "point")

    def normal_at(self, s):
        return self._per_component(s, "inward_normal")

    def curvature_at(self, s):
        return self._per_component(s, "curvature")

    # point cloud and distance ------------------------------------------------

    @cached_property
    def _cloud(self):
        pts, ths, comps = [], [], []
        for h, curve in enumerate(self._curves):
            th = 2 * np.pi * np.arange(CLOUD_NODES) / CLOUD_NODES
            pts.append(curve.point(th))
            ths.append(th)
            comps.append(np.full(CLOUD_NODES, h))
        return np.concatenate(pts), np.concatenate(ths), np.concatenate(comps)

    @cached_property
    def _cloud_tree(self):
        return cKDTree(self._cloud[0])

    def signed_distance(self, points) -> np.ndarray:
        """Distance to the boundary, positive inside the domain.

        Nearest cloud point, then Newton on the foot-point condition
        (gamma - p) . gamma' = 0 along the owning component.
        """
        points = np.atleast_2d(np.asarray(points, float))
        cloud, cth, ccomp = self._cloud
        out = np.empty(len(points))
        dth = 2 * np.pi / CLOUD_NODES
        for start in range(0, len(points), 2048):
            p = points[start : start + 2048]
            coarse, j = self._cloud_tree.query(p)
            th = cth[j].copy()
            comp = ccomp[j]
            dist = coarse.copy()
            sign = np.ones(len(p))
            for h, curve in enumerate(self._curves):
                m = comp == h
                if not m.any():
                    continue
                q, t0 = p[m], th[m]
                t = t0.copy()
                for _ in range(12):
                    g_pt, g1, g2 = curve.point(t), curve.d1(t), curve.d2(t)
                    r = g_pt - q
                    g = (r * g1).sum(-1)
                    gp = (g1 * g1).sum(-1) + (r * g2).sum(-1)
                    step = np.where(gp > 0, g / np.where(gp > 0, gp, 1.0), 0.0)
                    step = np.clip(step, -dth, dth)
                    t = np.clip(t - step, t0 - 2 * dth, t0 + 2 * dth)
                    if np.all(np.abs(step) < 1e-15):
                        break
                foot = curve.point(t)
                fine = np.linalg.norm(foot - q, axis=-1)
                better = fine < coarse[m]
                t = np.where(better, t, t0)
                foot = curve.point(t)
                nrm = curve.inward_normal(t)
                dist[m] = np.minimum(fine, coarse[m])
                sign[m] = np.where(((q - foot) * nrm).sum(-1) >= 0, 1.0, -1.0)
            out[start : start + 2048] = sign * dist
        return out

    # derived invariants ------------------------------------------------------

    @cached_property
    def area(self) -> float:
        return float(sum(c.signed_area() for c in self._curves))

    @cached_property
    def centroid(self) -> np.ndarray:
        th = 2 * np.pi * np.arange(ARC_NODES) / ARC_NODES
        mx = my = 0.0
        for c in self._curves:
            p, d = c.point(th), c.d1(th)
            mx += np.mean(0.5 * p[:, 0] ** 2 * d[:, 1]) * 2 * np.pi
            my -= np.mean(0.5 * p[:, 1] ** 2 * d[:, 0]) * 2 * np.pi
        return np.array([mx, my]) / self.area

    @cached_property
    def _curvature_extremes(self):
        kmax, kmin = 0.0, np.inf
        nodes = ARC_NODES
        for c in self._curves:
            th = 2 * np.pi * np.arange(nodes) / nodes
            kap = c.curvature(th)
            kmin = min(kmin, kap.min())
            i = int(np.argmax(np.abs(kap)))
            h = 2 * np.pi / nodes
            res = optimize.minimize_scalar(
                lambda t: -abs(c.curvature(t)[0]),
                bounds=(th[i] - 2 * h, th[i] + 2 * h),
                method="bounded",
                options={"xatol": 1e-14},
            )
            kmax = max(kmax, abs(kap[i]), -res.fun)
        return kmax, kmin

    @property
    def t_plus(self) -> float:
        return 1.0 / self._curvature_extremes[0]

    @property
    def is_convex(self) -> bool:
        # min curvature normalised by the mean curvature 2pi/L of a convex curve
        kmin = self._curvature_extremes[1]
        return self.connectivity_b == 0 and kmin * self.perimeter / (2 * np.pi) >= -CONVEXITY_TOL

    def _validate(self):
        if not (self.area >= MIN_AREA):
            raise GeometryError(f"degenerate shape: area {self.area!r}")
        if self._curvature_extremes[0] > MAX_CURVATURE:
            raise GeometryError("degenerate shape: curvature exceeds 1e9")

    def scaled(self, c: float):
        raise NotImplementedError

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        d.update({k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(self).items()})
        return d


@dataclass(frozen=True, eq=True)
class Disc(_PlanarBase):
    radius: float
    kind = "disc"

    def __post_init__(self):
        if not self.radius > 0:
            raise GeometryError("radius must be positive")
        self._validate()

    @cached_property
    def _curves(self):
        return [_circle(self.radius)]

    def scaled(self, c):
        return Disc(self.radius * c)

    @classmethod
    def unit_area(cls) -> "Disc":
        return cls(1.0 / math.sqrt(math.pi))


@dataclass(frozen=True, eq=True)
class Annulus(_PlanarBase):
    r_inner: float
    r_outer: float
    kind = "annulus"

    def __post_init__(self):
        if not (0 < self.r_inner < self.r_outer):
            raise GeometryError("annulus needs 0 < r_inner < r_outer")
        self._validate()

    @cached_property
    def _curves(self):
        return [_circle(self.r_outer), _circle(self.r_inner, clockwise=True)]

    def scaled(self, c):
        return Annulus(self.r_inner * c, self.r_outer * c)


@dataclass(frozen=True, eq=True)
class Ellipse(_PlanarBase):
    semi_axis_a: float
    semi_axis_b: float
    kind = "ellipse"

    def __post_init__(self):
        if not (self.semi_axis_a > 0 and self.semi_axis_b > 0):
            raise GeometryError("semi-axes must be positive")
        self._validate()

    @cached_property
    def _curves(self):
        return [_TrigCurve([0, self.semi_axis_a], [0, 0], [0, 0], [0, self.semi_axis_b])]

    def scaled(self, c):
        return Ellipse(self.semi_axis_a * c, self.semi_axis_b * c)


@dataclass(frozen=True, eq=True)
class FourierCurve(_PlanarBase):
    """Boundary x(th) = sum ax[k] cos(k th) + bx[k] sin(k th), likewise y.

    A clockwise input is reversed so the interior lies to the left.
    """

    ax: tuple
    bx: tuple
    ay: tuple
    by: tuple
    kind = "fourier"

    def __post_init__(self):
        for name in ("ax", "bx", "ay", "by"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        probe = _TrigCurve(self.ax, self.bx, self.ay, self.by)
        if probe.signed_area() < 0:
            object.__setattr__(self, "bx", tuple(-v for v in self.bx))
            object.__setattr__(self, "by", tuple(-v for v in self.by))
        th = 2 * np.pi * np.arange(2048) / 2048
        if np.min(probe.speed(th)) < 1e-9:
            raise GeometryError("degenerate parametrisation (vanishing speed)")
        if not LinearRing(probe.point(th)).is_simple:
            raise GeometryError("boundary curve is not simple")
        self._validate()

    @property
    def truncation_order(self) -> int:
        return max(len(self.ax), len(self.bx), len(self.ay), len(self.by)) - 1

    @cached_property
    def _curves(self):
        return [_TrigCurve(self.ax, self.bx, self.ay, self.by)]

    def scaled(self, c):
        return FourierCurve(*(tuple(c * v for v in a) for a in (self.ax, self.bx, self.ay, self.by)))

    @classmethod
    def from_polar(cls, cos_coef: Sequence[float], sin_coef: Sequence[float]) -> "FourierCurve":
        """Star-shaped curve r(th)(cos th, sin th) with r a trigonometric polynomial."""
        m = max(len(cos_coef), len(sin_coef))
        a = np.zeros(m)
        b = np.zeros(m)
        a[: len(cos_coef)] = cos_coef
        b[: len(sin_coef)] = sin_coef
        ax, bx, ay, by = (np.zeros(m + 1) for _ in range(4))
        # r cos th and r sin th via product-to-sum identities
        for k in range(m):
            ax[k + 1] += 0.5 * a[k]
            by[k + 1] += 0.5 * a[k]
            bx[k + 1] += 0.5 * b[k]
            ay[k + 1] -= 0.5 * b[k]
            if k == 0:
                ax[1] += 0.5 * a[0]
                by[1] += 0.5 * a[0]
                continue
            ax[k - 1] += 0.5 * a[k]
            by[k - 1] -= 0.5 * a[k]
            bx[k - 1] += 0.5 * b[k]
            ay[k - 1] += 0.5 * b[k]
        by[0] = 0.0
        bx[0] = 0.0
        return cls(tuple(ax), tuple(bx), tuple(ay), tuple(by))


PlanarShape = Union[Disc, Annulus, Ellipse, FourierCurve]


# --------------------------------------------------------------------------
# summary


@dataclass(frozen=True)
class GeometricSummary:
    area: float
    perimeter: float
    t_plus: float
    delta0: float
    diameter: float
    rho: float
    connectivity_b: int
    is_convex: bool
    delta0_conservative: bool = False

    @classmethod
    def from_invariants(cls, area, perimeter, t_plus, delta0=None, diameter=None,
                        connectivity_b=0, is_convex=False, delta0_conservative=False):
        delta0 = t_plus if delta0 is None else delta0
        diameter = perimeter / 2 if diameter is None else diameter
        if not (area > 0 and perimeter > 0 and t_plus > 0 and delta0 > 0):
            raise GeometryError("summary invariants must be positive")
        if delta0 > t_plus * (1 + 1e-12):
            raise GeometryError("delta0 cannot exceed t_plus")
        rho = math.sqrt(perimeter) / area**0.25
        return cls(float(area), float(perimeter), float(t_plus), float(delta0), float(diameter),
                   float(rho), int(connectivity_b), bool(is_convex), bool(delta0_conservative))

    def scaled(self, c: float) -> "GeometricSummary":
        return GeometricSummary(self.area * c * c, self.perimeter * c, self.t_plus * c,
                                self.delta0 * c, self.diameter * c, self.rho,
                                self.connectivity_b, self.is_convex, self.delta0_conservative)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "GeometricSummary":
        return cls(**d)


def curvature(shape: PlanarShape, s: float) -> float:
    """Signed curvature at arc length s (positive on convex arcs)."""
    return float(shape.curvature_at(s)[0])


def tubular_map(shape: PlanarShape, s: float, t: float) -> np.ndarray:
    return shape.point_at(s)[0] + t * shape.normal_at(s)[0]


def jacobian_factor(shape: PlanarShape, s: float, t: float) -> float:
    return 1.0 - t * curvature(shape, s)


def _diameter(shape: PlanarShape) -> float:
    cloud, cth, ccomp = shape._cloud
    # only the outer component can realise the diameter
    outer = ccomp == 0
    pts, ths = cloud[outer], cth[outer]
    d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1)
    i, j = np.unravel_index(np.argmax(d2), d2.shape)
    curve = shape._curves[0]

    def neg(x):
        p = curve.point(np.asarray(x))
        return -float(((p[0] - p[1]) ** 2).sum())

    res = optimize.minimize(neg, x0=[ths[i], ths[j]], method="Nelder-Mead",
                            options={"xatol": 1e-13, "fatol": 1e-16, "maxiter": 4000})
    return math.sqrt(max(d2[i, j], -res.fun))


def cut_distance(shape: PlanarShape, samples: int = CUT_SAMPLES) -> float:
    """Lower bound for min_s delta_+(s), capped at t_plus.

    For each boundary sample, bisect on t for the largest t with
    dist(F(s, t), boundary) = t; the predicate is monotone in t.
    """
    tp = shape.t_plus
    s = shape.perimeter * np.arange(samples) / samples
    base, nrm = shape.point_at(s), shape.normal_at(s)
    lo = np.zeros(samples)
    hi = np.full(samples, tp)
    tol = 1e-9
    ok_top = shape.signed_distance(base + tp * nrm) >= tp * (1 - tol)
    lo[ok_top] = tp
    for _ in range(48):
        active = ~ok_top
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        ok = shape.signed_distance(base[active] + mid[active, None] * nrm[active]) >= mid[active] * (1 - tol)
        lo[active] = np.where(ok, mid[active], lo[active])
        hi[active] = np.where(ok, hi[active], mid[active])
    return float(lo.min())


def summarize(shape: PlanarShape) -> GeometricSummary:
    tp = shape.t_plus
    convex = shape.is_convex
    if convex:
        delta0, conservative = tp, False
    else:
        # one grid step below the sampled minimum
        step = tp / CUT_SAMPLES
        delta0 = min(tp, cut_distance(shape) - step)
        conservative = True
        if delta0 <= 0:
            raise GeometryError("cut distance vanishes: boundary too close to itself")
    return GeometricSummary.from_invariants(
        area=shape.area,
        perimeter=shape.perimeter,
        t_plus=tp,
        delta0=delta0,
        diameter=_diameter(shape),
        connectivity_b=shape.connectivity_b,
        is_convex=convex,
        delta0_conservative=conservative,
    )


# --------------------------------------------------------------------------
# tube volumes


def tube_volume_closed_form(perimeter: float, connectivity_b: int, r: float) -> float:
    """tau(r) = L r - pi (1 - b) r^2, exact for r up to the cut distance."""
    return perimeter * r - math.pi * (1 - connectivity_b) * r * r


def tube_volume_quadrature(shape: PlanarShape, r: float, rtol: float = 1e-10,
                           radial: int = 129, max_rays: int = 8192) -> float:
    """Area of {x in Omega : dist(x, boundary) < r} by direct quadrature.

    Rays from the centroid; along each ray the indicator of the tube is
    integrated exactly (rho d rho between its refined jump points), and the
    angular integral uses the periodic trapezoid rule, doubled until stable.
    """
    centre = shape.centroid
    cloud = shape._cloud[0]
    rmax = 1.001 * np.max(np.linalg.norm(cloud - centre, axis=1)) + 1e-12

    def ray_integrals(phis):
        u = np.stack([np.cos(phis), np.sin(phis)], axis=-1)
        rr = np.linspace(0.0, rmax, radial)
        pts = centre + rr[None, :, None] * u[:, None, :]
        sd = shape.signed_distance(pts.reshape(-1, 2)).reshape(len(phis), radial)
        brackets = []
        for level in (0.0, r):
            g = sd - level
            sgn = np.sign(g)
            ii, jj = np.nonzero(sgn[:, :-1] * sgn[:, 1:] < 0)
            brackets.append((ii, rr[jj], rr[jj + 1], level, sgn[ii, jj]))
        ray_id = np.concatenate([b[0] for b in brackets])
        lo = np.concatenate([b[1] for b in brackets])
        hi = np.concatenate([b[2] for b in brackets])
        lev = np.concatenate([np.full(len(b[0]), b[3]) for b in brackets])
        slo = np.concatenate([b[4] for b in brackets])
        for _ in range(55):
            mid = 0.5 * (lo + hi)
            g = shape.signed_distance(centre + mid[:, None] * u[ray_id]) - lev
            same = np.sign(g) == slo
            lo = np.where(same, mid, lo)
            hi = np.where(same, hi, mid)
        roots = 0.5 * (lo + hi)
        seg_ray, seg_a, seg_b = [], [], []
        order = np.argsort(ray_id, kind="stable")
        split = np.split(roots[order], np.cumsum(np.bincount(ray_id, minlength=len(phis)))[:-1])
        for k, rk in enumerate(split):
            knots = np.concatenate([[0.0], np.sort(rk), [rmax]])
            seg_ray.append(np.full(len(knots) - 1, k))
            seg_a.append(knots[:-1])
            seg_b.append(knots[1:])
        seg_ray = np.concatenate(seg_ray)
        seg_a = np.concatenate(seg_a)
        seg_b = np.concatenate(seg_b)
        val = shape.signed_distance(centre + (0.5 * (seg_a + seg_b))[:, None] * u[seg_ray])
        inside = (val > 0) & (val < r)
        return np.bincount(seg_ray, weights=0.5 * (seg_b**2 - seg_a**2) * inside, minlength=len(phis))

    n = 64
    phis = 2 * np.pi * np.arange(n) / n
    vals = ray_integrals(phis)
    est = 2 * np.pi * vals.mean()
    while n < max_rays:
        new_phis = 2 * np.pi * (np.arange(n) + 0.5) / n
        new_vals = ray_integrals(new_phis)
        vals = np.column_stack([vals, new_vals]).ravel()
        n *= 2
        new_est = 2 * np.pi * vals.mean()
        if abs(new_est - est) <= rtol * abs(new_est):
            return float(new_est)
        est = new_est
    return float(est)


def tube_volume(shape: Union[PlanarShape, GeometricSummary], r: float) -> float:
    """Area of the inner tube of width r.

    Closed form when r does not exceed the cut distance; quadrature otherwise.
    A bare summary only supports the closed-form range.
    """
    if r <= 0:
        raise GeometryError("tube width must be positive")
    if isinstance(shape, GeometricSummary):
        if r > shape.delta0:
            raise GeometryError("closed-form tube volume needs r <= delta0")
        return tube_volume_closed_form(shape.perimeter, shape.connectivity_b, r)
    summary = summarize(shape)
    if r <= summary.delta0:
        return tube_volume_closed_form(summary.perimeter, summary.connectivity_b, r)
    return tube_volume_quadrature(shape, r)


# --------------------------------------------------------------------------
# convex bodies in R^n


def nd_rho_lower_bound(n: int) -> float:
    """Isoperimetric floor sqrt(n) * omega_n^(1/(2n)) of rho = S^(1/2) / V^(1/2 - 1/(2n))."""
    return math.sqrt(n) * unit_ball_volume(n) ** (1 / (2 * n))


@dataclass(frozen=True)
class ConvexBodyND:
    n: int
    volume: float
    surface: float
    t_plus: float
    diameter: float
    variant: str = "summary"
    radius: float | None = field(default=None, compare=False)

    def __post_init__(self):
        if int(self.n) != self.n or not (3 <= self.n <= 20):
            raise GeometryError(f"dimension {self.n!r} outside 3..20")
        if not all(v > 0 for v in (self.volume, self.surface, self.t_plus, self.diameter)):
            raise GeometryError("body invariants must be positive")
        floor = nd_rho_lower_bound(self.n)
        if self.rho_nd < floor * (1 - 1e-12):
            raise GeometryError(f"inconsistent body: rho={self.rho_nd:.6g} below isoperimetric floor {floor:.6g}")

    @classmethod
    def ball(cls, n: int, radius: float = 1.0) -> "ConvexBodyND":
        w = unit_ball_volume(n)
        return cls(n, w * radius**n, n * w * radius ** (n - 1), radius, 2 * radius, "ball", radius)

    @classmethod
    def summary(cls, n, volume, surface, t_plus, diameter) -> "ConvexBodyND":
        return cls(n, volume, surface, t_plus, diameter, "summary")

    @property
    def rho_nd(self) -> float:
        return math.sqrt(self.surface) / self.volume ** (0.5 - 0.5 / self.n)

    @property
    def delta0(self) -> float:
        return self.t_plus

    def scaled(self, c: float) -> "ConvexBodyND":
        n = self.n
        return ConvexBodyND(n, self.volume * c**n, self.surface * c ** (n - 1), self.t_plus * c,
                            self.diameter * c, self.variant,
                            None if self.radius is None else self.radius * c)

    def to_dict(self) -> dict:
        if self.variant == "ball":
            return {"kind": "nd_ball", "n": self.n, "radius": self.radius}
        return {"kind": "nd_summary", "n": self.n, "volume": self.volume, "surface": self.surface,
                "t_plus": self.t_plus, "diameter": self.diameter}


def nd_body_summary(body: ConvexBodyND):
    """(V, S, t_plus, diameter, rho_nd)."""
    return body.volume, body.surface, body.t_plus, body.diameter, body.rho_nd


# --------------------------------------------------------------------------
# shape files


def shape_from_dict(d: dict):
    """Build a shape from its JSON description (see README for the schema)."""
    if not isinstance(d, dict) or "kind" not in d:
        raise GeometryError("shape description needs a 'kind' field")
    kind = d["kind"]
    try:
        if kind == "disc":
            return Disc(float(d["radius"]))
        if kind == "annulus":
            return Annulus(float(d["r_inner"]), float(d["r_outer"]))
        if kind == "ellipse":
            return Ellipse(float(d["semi_axis_a"]), float(d["semi_axis_b"]))
        if kind == "fourier":
            return FourierCurve(tuple(d["ax"]), tuple(d["bx"]), tuple(d["ay"]), tuple(d["by"]))
        if kind == "nd_ball":
            return ConvexBodyND.ball(int(d["n"]), float(d.get("radius", 1.0)))
        if kind == "nd_summary":
            return ConvexBodyND.summary(int(d["n"]), float(d["volume"]), float(d["surface"]),
                                        float(d["t_plus"]), float(d["diameter"]))
    except (KeyError, TypeError) as exc:
        raise GeometryError(f"bad '{kind}' description: {exc}") from exc
    raise GeometryError(f"unknown shape kind {kind!r}")
