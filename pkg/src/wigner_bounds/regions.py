"""Phase-plane regions, their areas and indicators, and area-preserving maps.

A region is one of five shapes in the (q, p) plane:

* ``Graph``: b < q < c between two piecewise-linear boundaries f1 <= f2,
  with b = -inf or c = +inf allowed;
* ``Disk``, ``Ellipse``, ``Annulus``: the usual conic shapes;
* ``RegionUnion``: a pairwise-disjoint union of the above.

Boundary points count as outside everywhere (a measure-zero convention
that keeps indicator complements exact).  ``CanonicalMap`` carries the
affine maps q' = alpha q + beta p + gamma, p' = nu q + mu p + rho with
unit determinant; such maps preserve area and, downstream, the extremal
integrals of Wigner functions.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "Annulus",
    "CanonicalMap",
    "Disk",
    "Ellipse",
    "Graph",
    "PiecewiseLinear",
    "Region",
    "RegionUnion",
    "apply_canonical",
    "area",
    "bounding_box",
    "describe",
    "indicator",
    "load_region",
    "reduce_ellipse",
    "region_from_dict",
    "region_to_dict",
]

_UNION_SAMPLES = 100_000


@dataclass(frozen=True, eq=False)
class PiecewiseLinear:
    """Polyline q -> value over strictly increasing knots."""

    qs: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        qs = np.asarray(self.qs, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if qs.ndim != 1 or qs.shape != values.shape or qs.size < 2:
            raise ValueError("need matching 1-d knot arrays with at least 2 knots")
        if np.any(np.diff(qs) <= 0.0):
            raise ValueError("knot positions must be strictly increasing")
        qs.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "qs", qs)
        object.__setattr__(self, "values", values)

    @property
    def qmin(self) -> float:
        return float(self.qs[0])

    @property
    def qmax(self) -> float:
        return float(self.qs[-1])

    def evaluate(self, q):
        q = np.asarray(q, dtype=float)
        if np.any(q < self.qs[0]) or np.any(q > self.qs[-1]):
            raise ValueError(
                "evaluation outside knot range [%g, %g]: extend the knot"
                " lists to cover every q the kernel samples" % (self.qs[0], self.qs[-1])
            )
        out = np.interp(q, self.qs, self.values)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class Disk:
    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        if not self.radius > 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class Ellipse:
    center: tuple[float, float]
    semi_major: float
    semi_minor: float
    angle: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        if not (self.semi_major > 0 and self.semi_minor > 0):
            raise ValueError("semi-axes must be positive")


@dataclass(frozen=True)
class Annulus:
    center: tuple[float, float]
    r_inner: float
    r_outer: float

    def __post_init__(self):
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        if self.r_inner < 0 or not self.r_outer > self.r_inner:
            raise ValueError("need 0 <= r_inner < r_outer")


@dataclass(frozen=True, eq=False)
class Graph:
    """Region b < q < c, f1(q) < p < f2(q).

    For finite b, c the knot tables of both boundaries must span [b, c].
    The boundaries need not pinch together at b and c: open strips are
    legitimate regions and their kernels are well defined.
    """

    b: float
    c: float
    f1: PiecewiseLinear
    f2: PiecewiseLinear

    def __post_init__(self):
        b, c = float(self.b), float(self.c)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if not b < c:
            raise ValueError("need b < c")
        for f in (self.f1, self.f2):
            if math.isfinite(b) and f.qmin > b:
                raise ValueError("boundary knots must span [b, c]")
            if math.isfinite(c) and f.qmax < c:
                raise ValueError("boundary knots must span [b, c]")
        # piecewise-linear difference attains its minimum at a knot
        lo = max(self.f1.qmin, self.f2.qmin, b) if math.isfinite(b) else max(self.f1.qmin, self.f2.qmin)
        hi = min(self.f1.qmax, self.f2.qmax, c) if math.isfinite(c) else min(self.f1.qmax, self.f2.qmax)
        qs = np.unique(np.concatenate([self.f1.qs, self.f2.qs, [lo, hi]]))
        qs = qs[(qs >= lo) & (qs <= hi)]
        if np.any(self.f2.evaluate(qs) < self.f1.evaluate(qs) - 1e-12):
            raise ValueError("upper boundary must dominate lower boundary on (b, c)")


@dataclass(frozen=True, eq=False)
class RegionUnion:
    """Pairwise-disjoint union, checked by Monte Carlo sampling when bounded."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("union needs at least one part")
        object.__setattr__(self, "parts", parts)
        box = bounding_box(self)
        if all(math.isfinite(v) for v in box):
            rng = np.random.default_rng(181093)
            qs = rng.uniform(box[0], box[1], _UNION_SAMPLES)
            ps = rng.uniform(box[2], box[3], _UNION_SAMPLES)
            hits = np.zeros(_UNION_SAMPLES, dtype=int)
            for part in parts:
                hits += indicator(part, qs, ps)
            if np.any(hits > 1):
                raise ValueError("union parts overlap")


Region = Union[Disk, Ellipse, Annulus, Graph, RegionUnion]


def indicator(s: Region, q, p):
    """1 strictly inside s, else 0; vectorizes over q, p."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    q, p = np.broadcast_arrays(q, p)
    if isinstance(s, Disk):
        out = (q - s.center[0]) ** 2 + (p - s.center[1]) ** 2 < s.radius**2
    elif isinstance(s, Annulus):
        d2 = (q - s.center[0]) ** 2 + (p - s.center[1]) ** 2
        out = (d2 > s.r_inner**2) & (d2 < s.r_outer**2)
    elif isinstance(s, Ellipse):
        ca, sa = math.cos(s.angle), math.sin(s.angle)
        u = ca * (q - s.center[0]) + sa * (p - s.center[1])
        v = -sa * (q - s.center[0]) + ca * (p - s.center[1])
        out = (u / s.semi_major) ** 2 + (v / s.semi_minor) ** 2 < 1.0
    elif isinstance(s, Graph):
        out = np.zeros(q.shape, dtype=bool)
        strip = (q > s.b) & (q < s.c)
        if np.any(strip):
            qq, pp = q[strip], p[strip]
            out[strip] = (pp > s.f1.evaluate(qq)) & (pp < s.f2.evaluate(qq))
    elif isinstance(s, RegionUnion):
        out = np.zeros(q.shape, dtype=bool)
        for part in s.parts:
            out |= indicator(part, q, p).astype(bool)
    else:
        raise TypeError("not a region: %r" % (s,))
    out = out.astype(int)
    return out if out.ndim else int(out)


def area(s: Region) -> float:
    """Region area; exact for conics, trapezoid-exact for graphs, +inf if unbounded."""
    if isinstance(s, Disk):
        return math.pi * s.radius**2
    if isinstance(s, Ellipse):
        return math.pi * s.semi_major * s.semi_minor
    if isinstance(s, Annulus):
        return math.pi * (s.r_outer**2 - s.r_inner**2)
    if isinstance(s, Graph):
        if not (math.isfinite(s.b) and math.isfinite(s.c)):
            return math.inf
        qs = np.unique(np.concatenate([s.f1.qs, s.f2.qs, [s.b, s.c]]))
        qs = qs[(qs >= s.b) & (qs <= s.c)]
        gap = s.f2.evaluate(qs) - s.f1.evaluate(qs)
        return float(np.sum((gap[1:] + gap[:-1]) * np.diff(qs)) / 2.0)
    if isinstance(s, RegionUnion):
        return sum(area(part) for part in s.parts)
    raise TypeError("not a region: %r" % (s,))


def bounding_box(s: Region) -> tuple[float, float, float, float]:
    """(qmin, qmax, pmin, pmax) enclosing s; infinite for unbounded graphs."""
    if isinstance(s, Disk):
        cq, cp = s.center
        return cq - s.radius, cq + s.radius, cp - s.radius, cp + s.radius
    if isinstance(s, Annulus):
        cq, cp = s.center
        return cq - s.r_outer, cq + s.r_outer, cp - s.r_outer, cp + s.r_outer
    if isinstance(s, Ellipse):
        ca, sa = math.cos(s.angle), math.sin(s.angle)
        hq = math.hypot(s.semi_major * ca, s.semi_minor * sa)
        hp = math.hypot(s.semi_major * sa, s.semi_minor * ca)
        cq, cp = s.center
        return cq - hq, cq + hq, cp - hp, cp + hp
    if isinstance(s, Graph):
        if not (math.isfinite(s.b) and math.isfinite(s.c)):
            return s.b, s.c, -math.inf, math.inf
        qs = np.unique(np.concatenate([s.f1.qs, s.f2.qs, [s.b, s.c]]))
        qs = qs[(qs >= s.b) & (qs <= s.c)]
        return s.b, s.c, float(np.min(s.f1.evaluate(qs))), float(np.max(s.f2.evaluate(qs)))
    if isinstance(s, RegionUnion):
        boxes = [bounding_box(part) for part in s.parts]
        return (
            min(b[0] for b in boxes),
            max(b[1] for b in boxes),
            min(b[2] for b in boxes),
            max(b[3] for b in boxes),
        )
    raise TypeError("not a region: %r" % (s,))


def describe(s: Region) -> str:
    if isinstance(s, Disk):
        return "disk(r=%g at %g,%g)" % (s.radius, *s.center)
    if isinstance(s, Ellipse):
        return "ellipse(%g x %g at %g,%g)" % (s.semi_major, s.semi_minor, *s.center)
    if isinstance(s, Annulus):
        return "annulus(%g..%g at %g,%g)" % (s.r_inner, s.r_outer, *s.center)
    if isinstance(s, Graph):
        return "graph(q in %g..%g)" % (s.b, s.c)
    if isinstance(s, RegionUnion):
        return "union(%d parts)" % len(s.parts)
    raise TypeError("not a region: %r" % (s,))


@dataclass(frozen=True)
class CanonicalMap:
    """Affine map q' = alpha q + beta p + gamma, p' = nu q + mu p + rho, det 1."""

    alpha: float
    beta: float
    gamma: float
    mu: float
    nu: float
    rho: float

    def __post_init__(self):
        if abs(self.alpha * self.mu - self.beta * self.nu - 1.0) > 1e-12:
            raise ValueError("map must have unit determinant (alpha mu - beta nu = 1)")

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.alpha, self.beta], [self.nu, self.mu]])

    @property
    def shift(self) -> np.ndarray:
        return np.array([self.gamma, self.rho])

    def apply(self, q, p):
        return (
            self.alpha * q + self.beta * p + self.gamma,
            self.nu * q + self.mu * p + self.rho,
        )


def _map_from_parts(matrix: np.ndarray, shift: np.ndarray) -> CanonicalMap:
    return CanonicalMap(
        alpha=float(matrix[0, 0]),
        beta=float(matrix[0, 1]),
        gamma=float(shift[0]),
        mu=float(matrix[1, 1]),
        nu=float(matrix[1, 0]),
        rho=float(shift[1]),
    )


def _ellipse_quadratic(s) -> tuple[np.ndarray, np.ndarray]:
    # (x-c)^T A (x-c) = 1 on the boundary
    if isinstance(s, Disk):
        a = b = s.radius
        ang = 0.0
    else:
        a, b, ang = s.semi_major, s.semi_minor, s.angle
    ca, sa = math.cos(ang), math.sin(ang)
    rot = np.array([[ca, -sa], [sa, ca]])
    A = rot @ np.diag([a**-2.0, b**-2.0]) @ rot.T
    return A, np.asarray(s.center, dtype=float)


def _ellipse_from_quadratic(A: np.ndarray, center: np.ndarray) -> Region:
    evals, evecs = np.linalg.eigh(A)
    axes = evals**-0.5  # descending axes since eigh sorts ascending
    if abs(axes[0] - axes[1]) <= 1e-12 * axes[0]:
        return Disk(center=tuple(center), radius=float(np.sqrt(axes[0] * axes[1])))
    major = evecs[:, 0]
    return Ellipse(
        center=tuple(center),
        semi_major=float(axes[0]),
        semi_minor=float(axes[1]),
        angle=float(math.atan2(major[1], major[0]) % math.pi),
    )


def apply_canonical(s: Region, m: CanonicalMap) -> Region:
    """Image of s under m, within the same shape family.

    Disks and ellipses map to disks or ellipses for any canonical map.
    Annuli survive only rigid maps (rotation plus translation) and graphs
    only maps with beta = 0; anything else raises.
    """
    M, t = m.matrix, m.shift
    if isinstance(s, (Disk, Ellipse)):
        A, c = _ellipse_quadratic(s)
        Minv = np.array([[m.mu, -m.beta], [-m.nu, m.alpha]])  # inverse, det 1
        return _ellipse_from_quadratic(Minv.T @ A @ Minv, M @ c + t)
    if isinstance(s, Annulus):
        if np.max(np.abs(M.T @ M - np.eye(2))) > 1e-12:
            raise ValueError("shape not closed under map: annulus needs a rigid map")
        cq, cp = M @ np.asarray(s.center) + t
        return Annulus(center=(float(cq), float(cp)), r_inner=s.r_inner, r_outer=s.r_outer)
    if isinstance(s, Graph):
        if m.beta != 0.0:
            raise ValueError("shape not closed under map: graph needs beta = 0")

        def image(f: PiecewiseLinear) -> PiecewiseLinear:
            qs = m.alpha * f.qs + m.gamma
            vals = m.mu * f.values + m.nu * f.qs + m.rho
            if m.alpha < 0:
                qs, vals = qs[::-1], vals[::-1]
            return PiecewiseLinear(qs.copy(), vals.copy())

        lo, hi = m.alpha * s.b + m.gamma, m.alpha * s.c + m.gamma
        g1, g2 = image(s.f1), image(s.f2)
        if m.alpha < 0:  # mu = 1/alpha < 0 flips the vertical order too
            lo, hi, g1, g2 = hi, lo, g2, g1
        return Graph(b=lo, c=hi, f1=g1, f2=g2)
    if isinstance(s, RegionUnion):
        return RegionUnion(tuple(apply_canonical(part, m) for part in s.parts))
    raise TypeError("not a region: %r" % (s,))


def reduce_ellipse(e: Ellipse) -> tuple[float, CanonicalMap]:
    """Area-preserving map taking e onto the origin-centered disk of equal area.

    Returns (radius, map) with radius = sqrt(semi_major * semi_minor).
    Rotate the axes straight, then squeeze both onto the mean radius; the
    squeeze has unit determinant by construction.
    """
    a, b = e.semi_major, e.semi_minor
    r = math.sqrt(a * b)
    ca, sa = math.cos(e.angle), math.sin(e.angle)
    rot_back = np.array([[ca, sa], [-sa, ca]])
    M = np.diag([r / a, r / b]) @ rot_back
    shift = -M @ np.asarray(e.center, dtype=float)
    m = _map_from_parts(M, shift)
    phi = 2.0 * np.pi * np.arange(16) / 16.0
    bq = e.center[0] + a * np.cos(phi) * ca - b * np.sin(phi) * sa
    bp = e.center[1] + a * np.cos(phi) * sa + b * np.sin(phi) * ca
    iq, ip = m.apply(bq, bp)
    if np.max(np.abs(np.hypot(iq, ip) - r)) > 1e-10:
        raise RuntimeError("ellipse reduction failed its boundary check")
    return r, m


# --- JSON serialization -------------------------------------------------

def _knots_from_json(rows) -> PiecewiseLinear:
    try:
        arr = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError("malformed region: knots must be [[q, value], ...]") from exc
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("malformed region: knots must be [[q, value], ...]")
    return PiecewiseLinear(arr[:, 0].copy(), arr[:, 1].copy())


def region_from_dict(obj) -> Region:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError("malformed region: expected an object with a 'type' key")
    kind = obj["type"]
    try:
        if kind == "disk":
            return Disk(center=tuple(obj.get("center", (0.0, 0.0))), radius=float(obj["radius"]))
        if kind == "ellipse":
            return Ellipse(
                center=tuple(obj.get("center", (0.0, 0.0))),
                semi_major=float(obj["semi_major"]),
                semi_minor=float(obj["semi_minor"]),
                angle=float(obj.get("angle", 0.0)),
            )
        if kind == "annulus":
            return Annulus(
                center=tuple(obj.get("center", (0.0, 0.0))),
                r_inner=float(obj["r_inner"]),
                r_outer=float(obj["r_outer"]),
            )
        if kind == "graph":
            b = obj["b"]
            c = obj["c"]
            b = float("-inf") if b == "-inf" else float(b)
            c = float("inf") if c in ("+inf", "inf") else float(c)
            return Graph(b=b, c=c, f1=_knots_from_json(obj["f1"]), f2=_knots_from_json(obj["f2"]))
        if kind == "union":
            return RegionUnion(tuple(region_from_dict(part) for part in obj["parts"]))
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError("malformed region: %s" % exc) from exc
    raise ValueError("malformed region: unknown type %r" % (kind,))


def region_to_dict(s: Region) -> dict:
    if isinstance(s, Disk):
        return {"type": "disk", "center": list(s.center), "radius": s.radius}
    if isinstance(s, Ellipse):
        return {
            "type": "ellipse",
            "center": list(s.center),
            "semi_major": s.semi_major,
            "semi_minor": s.semi_minor,
            "angle": s.angle,
        }
    if isinstance(s, Annulus):
        return {
            "type": "annulus",
            "center": list(s.center),
            "r_inner": s.r_inner,
            "r_outer": s.r_outer,
        }
    if isinstance(s, Graph):
        return {
            "type": "graph",
            "b": "-inf" if math.isinf(s.b) else s.b,
            "c": "+inf" if math.isinf(s.c) else s.c,
            "f1": [[q, v] for q, v in zip(s.f1.qs, s.f1.values)],
            "f2": [[q, v] for q, v in zip(s.f2.qs, s.f2.values)],
        }
    if isinstance(s, RegionUnion):
        return {"type": "union", "parts": [region_to_dict(part) for part in s.parts]}
    raise TypeError("not a region: %r" % (s,))


def load_region(path) -> Region:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError("malformed region: %s" % exc) from exc
    return region_from_dict(obj)
