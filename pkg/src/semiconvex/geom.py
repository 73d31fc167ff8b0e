"""Points, rays and closure-aware arc sets on the direction circle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

TWO_PI = 2.0 * math.pi
DEFAULT_EPS_ANGLE = 1e-9


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scaled(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


def dot(a, b) -> float:
    return a[0] * b[0] + a[1] * b[1]


def cross(a, b) -> float:
    return a[0] * b[1] - a[1] * b[0]


def unit(theta: float) -> Point:
    return Point(math.cos(theta), math.sin(theta))


def angle_of(v) -> float:
    return normalize_angle(math.atan2(v[1], v[0]))


def normalize_angle(t: float) -> float:
    """Reduce ``t`` to the canonical range [0, 2*pi)."""
    if not math.isfinite(t):
        raise ValueError(f"angle must be finite, got {t!r}")
    r = math.fmod(t, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


def ccw_delta(a: float, b: float) -> float:
    """Counterclockwise angular distance from ``a`` to ``b`` in [0, 2*pi)."""
    return normalize_angle(b - a)


class Ray(NamedTuple):
    """Open ray: the origin itself is not part of the point set."""

    origin: Point
    direction: float

    @property
    def u(self) -> Point:
        return unit(self.direction)

    def at(self, t: float) -> Point:
        u = self.u
        return Point(self.origin[0] + t * u.x, self.origin[1] + t * u.y)


@dataclass(frozen=True)
class Arc:
    """Counterclockwise arc of directions ``[start, start + width]``.

    ``width == 2*pi`` with a closed endpoint is the full circle; with both
    endpoints open it is the circle minus the single direction ``start``.
    ``width == 0`` is a single direction and is only meaningful when closed.
    """

    start: float
    width: float
    start_closed: bool = True
    end_closed: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.width)):
            raise ValueError("arc bounds must be finite")
        if self.width < 0.0 or self.width > TWO_PI + 1e-12:
            raise ValueError(f"arc width out of range: {self.width}")

    @property
    def end(self) -> float:
        return self.start + self.width

    @classmethod
    def between(cls, start: float, end: float, start_closed=True, end_closed=True) -> "Arc":
        s = normalize_angle(start)
        return cls(s, ccw_delta(s, end), start_closed, end_closed)

    @classmethod
    def full(cls) -> "Arc":
        return cls(0.0, TWO_PI, True, True)

    @classmethod
    def point(cls, theta: float) -> "Arc":
        return cls(normalize_angle(theta), 0.0, True, True)

    @property
    def is_full(self) -> bool:
        return self.width >= TWO_PI and (self.start_closed or self.end_closed)

    @property
    def is_empty(self) -> bool:
        return self.width == 0.0 and not (self.start_closed and self.end_closed)

    def contains(self, theta: float, eps: float = DEFAULT_EPS_ANGLE) -> bool:
        if self.is_full:
            return True
        d = ccw_delta(self.start, theta)
        if d > TWO_PI - eps:
            d -= TWO_PI  # theta sits just clockwise of start
        if abs(d) <= eps:
            return self.start_closed or (self.width >= TWO_PI - eps and self.end_closed)
        if abs(d - self.width) <= eps:
            return self.end_closed
        return 0.0 < d < self.width

    def rotated(self, phi: float) -> "Arc":
        if self.is_full:
            return self
        return Arc(normalize_angle(self.start + phi), self.width, self.start_closed, self.end_closed)

    def midpoint(self) -> float:
        return normalize_angle(self.start + 0.5 * self.width)


# Linear intervals on [0, 2*pi] used internally while canonicalizing.
class _Iv(NamedTuple):
    lo: float
    hi: float
    lo_c: bool
    hi_c: bool


def _split(arc: Arc, eps: float) -> list[_Iv]:
    if arc.is_empty:
        return []
    s = arc.start
    if s > TWO_PI - eps:
        s = 0.0
    e = s + arc.width
    if e <= TWO_PI + eps:
        return [_Iv(s, min(e, TWO_PI), arc.start_closed, arc.end_closed)]
    # wraps through direction 0, which is interior to the arc
    return [_Iv(s, TWO_PI, arc.start_closed, True), _Iv(0.0, e - TWO_PI, True, arc.end_closed)]


def _merge_linear(ivs: list[_Iv], eps: float) -> list[_Iv]:
    ivs = sorted(ivs, key=lambda v: (v.lo, not v.lo_c))
    out: list[_Iv] = []
    for iv in ivs:
        if not out:
            out.append(iv)
            continue
        cur = out[-1]
        if abs(iv.lo - cur.lo) <= eps:
            lo, lo_c = cur.lo, cur.lo_c or iv.lo_c
        else:
            lo, lo_c = cur.lo, cur.lo_c
        gap = iv.lo - cur.hi
        if gap > eps or (abs(gap) <= eps and not (cur.hi_c or iv.lo_c)):
            if abs(iv.lo - cur.lo) <= eps and cur.hi - cur.lo <= eps and iv.hi - iv.lo <= eps:
                pass  # two coincident open-touching points cannot occur after filtering
            out.append(iv)
            continue
        if abs(iv.hi - cur.hi) <= eps:
            hi, hi_c = max(iv.hi, cur.hi), cur.hi_c or iv.hi_c
        elif iv.hi > cur.hi:
            hi, hi_c = iv.hi, iv.hi_c
        else:
            hi, hi_c = cur.hi, cur.hi_c
        out[-1] = _Iv(lo, hi, lo_c, hi_c)
    return out


@dataclass(frozen=True)
class ArcSet:
    """Canonical finite union of arcs: disjoint, sorted by start, maximally merged."""

    arcs: tuple[Arc, ...] = ()
    eps: float = DEFAULT_EPS_ANGLE

    @classmethod
    def from_arcs(cls, arcs: Iterable[Arc], eps: float = DEFAULT_EPS_ANGLE) -> "ArcSet":
        ivs: list[_Iv] = []
        for a in arcs:
            if a.is_full:
                return cls((Arc.full(),), eps)
            ivs.extend(_split(a, eps))
        merged = _merge_linear(ivs, eps)
        if not merged:
            return cls((), eps)
        first, last = merged[0], merged[-1]
        wraps = first.lo <= eps and last.hi >= TWO_PI - eps and (first.lo_c or last.hi_c)
        if len(merged) == 1:
            iv = merged[0]
            if iv.lo <= eps and iv.hi >= TWO_PI - eps:
                if wraps:
                    return cls((Arc.full(),), eps)
                return cls((Arc(0.0, TWO_PI, False, False),), eps)
            return cls((_to_arc(iv),), eps)
        arcs_out = [_to_arc(iv) for iv in merged]
        if wraps:
            head = merged[0]
            tail = merged[-1]
            joined = Arc(normalize_angle(tail.lo), (TWO_PI - tail.lo) + head.hi, tail.lo_c, head.hi_c)
            arcs_out = arcs_out[1:-1] + [joined]
            arcs_out.sort(key=lambda a: a.start)
        return cls(tuple(arcs_out), eps)

    @classmethod
    def full(cls, eps: float = DEFAULT_EPS_ANGLE) -> "ArcSet":
        return cls((Arc.full(),), eps)

    @property
    def is_empty(self) -> bool:
        return not self.arcs

    @property
    def is_full(self) -> bool:
        return len(self.arcs) == 1 and self.arcs[0].is_full

    def measure(self) -> float:
        return sum(a.width for a in self.arcs)

    def contains(self, theta: float) -> bool:
        return any(a.contains(theta, self.eps) for a in self.arcs)

    def endpoints(self) -> list[float]:
        pts: list[float] = []
        for a in self.arcs:
            if a.is_full:
                continue
            pts.append(a.start)
            pts.append(normalize_angle(a.end))
        return pts

    def rotated(self, phi: float) -> "ArcSet":
        return ArcSet.from_arcs([a.rotated(phi) for a in self.arcs], self.eps)

    def __or__(self, other: "ArcSet") -> "ArcSet":
        return arcset_union(self, other)

    def __invert__(self) -> "ArcSet":
        return arcset_complement(self)

    def __and__(self, other: "ArcSet") -> "ArcSet":
        return arcset_intersection(self, other)

    def issubset(self, other: "ArcSet") -> bool:
        return arcset_intersection(self, arcset_complement(other)).is_empty


def _to_arc(iv: _Iv) -> Arc:
    width = max(0.0, iv.hi - iv.lo)
    start = iv.lo if iv.lo < TWO_PI else 0.0
    if width == 0.0:
        return Arc(start, 0.0, True, True)
    return Arc(start, width, iv.lo_c, iv.hi_c)


def arcset_union(a: ArcSet, b: ArcSet) -> ArcSet:
    return ArcSet.from_arcs(list(a.arcs) + list(b.arcs), max(a.eps, b.eps))


def arcset_complement(a: ArcSet) -> ArcSet:
    eps = a.eps
    if a.is_empty:
        return ArcSet.full(eps)
    if a.is_full:
        return ArcSet((), eps)
    arcs = sorted(a.arcs, key=lambda x: x.start)
    out: list[Arc] = []
    for i, cur in enumerate(arcs):
        nxt = arcs[(i + 1) % len(arcs)]
        gap_start = normalize_angle(cur.end)
        if len(arcs) == 1:
            width = TWO_PI - cur.width
        else:
            width = ccw_delta(gap_start, nxt.start)
            if width > TWO_PI - eps:
                width = 0.0
        sc, ec = not cur.end_closed, not nxt.start_closed
        if width <= eps:
            if sc and ec:
                out.append(Arc(gap_start, 0.0, True, True))
            continue
        out.append(Arc(gap_start, width, sc, ec))
    return ArcSet.from_arcs(out, eps)


def arcset_intersection(a: ArcSet, b: ArcSet) -> ArcSet:
    return arcset_complement(arcset_union(arcset_complement(a), arcset_complement(b)))


def arcset_covers_circle(a: ArcSet) -> tuple[bool, Optional[float]]:
    """Return ``(True, None)`` if every direction is covered, else ``(False, witness)``."""
    if a.is_full:
        return True, None
    comp = arcset_complement(a)
    if comp.is_empty:
        return True, None
    widest = max(comp.arcs, key=lambda arc: arc.width)
    return False, widest.midpoint()


def arcset_from_pairs(pairs: Sequence[tuple[float, float, bool, bool]], eps=DEFAULT_EPS_ANGLE) -> ArcSet:
    return ArcSet.from_arcs([Arc.between(s, e, sc, ec) for s, e, sc, ec in pairs], eps)
