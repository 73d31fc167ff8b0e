"""Ray/obstacle intersection with open, closed and partial boundaries.

Every shape reports how a ray meets its *closure* as a list of pieces:
``("cross", t0, t1)`` for an open parameter interval through the interior
and ``("graze", t0, t1)`` for a closed interval of boundary-only contact.
Boundary modes are applied on top of that geometry, so the same pieces
serve hit tests, supporting-ray tests and the sampling oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from .geom import (
    DEFAULT_EPS_ANGLE,
    TWO_PI,
    Arc,
    ArcSet,
    Point,
    Ray,
    angle_of,
    cross,
    dot,
    normalize_angle,
)

DEFAULT_EPS_SPACE = 1e-9

OPEN = "open"
CLOSED = "closed"
PARTIAL = "partial"
# contact ending within this many eps of the origin counts as touching only the origin
ORIGIN_BAND = 4.0
MODES = (OPEN, CLOSED, PARTIAL)


class Piece(NamedTuple):
    kind: str  # "cross" or "graze"
    t0: float
    t1: float


# --------------------------------------------------------------------------
# shapes


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", Point(*self.center))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValueError(f"disk radius must be positive, got {self.radius}")

    def signed_distance(self, p) -> float:
        return math.hypot(p[0] - self.center.x, p[1] - self.center.y) - self.radius

    def bounds(self):
        c, r = self.center, self.radius
        return (c.x - r, c.y - r, c.x + r, c.y + r)

    def pieces(self, o, u, eps: float) -> list[Piece]:
        wx, wy = self.center.x - o[0], self.center.y - o[1]
        tf = u[0] * wx + u[1] * wy
        h = abs(u[0] * wy - u[1] * wx)
        r = self.radius
        if h > r + eps:
            return []
        if h >= r - eps:
            return [Piece("graze", tf, tf)]
        half = math.sqrt(r * r - h * h)
        return [Piece("cross", tf - half, tf + half)]

    def transformed(self, f) -> "Disk":
        c, s = f(self.center)
        return Disk(c, self.radius * s)


def _outward_normals(verts: Sequence[Point]):
    n = len(verts)
    normals = []
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        ex, ey = b[0] - a[0], b[1] - a[1]
        length = math.hypot(ex, ey)
        nx, ny = ey / length, -ex / length
        normals.append((nx, ny, nx * a[0] + ny * a[1]))
    return tuple(normals)


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple

    def __post_init__(self):
        verts = tuple(Point(*v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        validate_convex(verts)
        object.__setattr__(self, "_normals", _outward_normals(verts))

    @property
    def normals(self):
        return self._normals  # type: ignore[attr-defined]

    def signed_distance(self, p) -> float:
        inside = max(nx * p[0] + ny * p[1] - d for nx, ny, d in self.normals)
        if inside <= 0.0:
            return inside
        return min(_point_segment_distance(p, a, b) for a, b in self.edges())

    def edges(self):
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def centroid(self) -> Point:
        xs = sum(v.x for v in self.vertices) / len(self.vertices)
        ys = sum(v.y for v in self.vertices) / len(self.vertices)
        return Point(xs, ys)

    def bounds(self):
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))

    def _clip(self, o, u, slack: float):
        lo, hi = -math.inf, math.inf
        for nx, ny, d in self.normals:
            num = d + slack - (nx * o[0] + ny * o[1])
            den = nx * u[0] + ny * u[1]
            if abs(den) < 1e-15:
                if num < 0.0:
                    return None
                continue
            t = num / den
            if den > 0.0:
                hi = min(hi, t)
            else:
                lo = max(lo, t)
            if lo > hi:
                return None
        return lo, hi

    def pieces(self, o, u, eps: float) -> list[Piece]:
        outer = self._clip(o, u, eps)
        if outer is None:
            return []
        inner = self._clip(o, u, -eps)
        exact = self._clip(o, u, 0.0)
        if inner is not None and inner[1] > inner[0]:
            t0, t1 = exact if exact is not None else inner
            return [Piece("cross", t0, t1)]
        t0, t1 = exact if exact is not None else outer
        return [Piece("graze", t0, t1)]

    def transformed(self, f) -> "ConvexPolygon":
        return ConvexPolygon(tuple(f(v)[0] for v in self.vertices))


@dataclass(frozen=True)
class Capsule:
    a: Point
    b: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "a", Point(*self.a))
        object.__setattr__(self, "b", Point(*self.b))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ValueError(f"capsule radius must be positive, got {self.radius}")
        if math.hypot(self.b.x - self.a.x, self.b.y - self.a.y) == 0.0:
            raise ValueError("capsule with a == b is a disk; use a disk obstacle")
        object.__setattr__(self, "_parts", self._build_parts())

    def _build_parts(self):
        a, b, r = self.a, self.b, self.radius
        ex, ey = b.x - a.x, b.y - a.y
        length = math.hypot(ex, ey)
        nx, ny = -ey / length * r, ex / length * r
        rect = ConvexPolygon(
            (
                Point(a.x - nx, a.y - ny),
                Point(b.x - nx, b.y - ny),
                Point(b.x + nx, b.y + ny),
                Point(a.x + nx, a.y + ny),
            )
        )
        return (Disk(a, r), Disk(b, r), rect)

    @property
    def parts(self):
        return self._parts  # type: ignore[attr-defined]

    def signed_distance(self, p) -> float:
        return _point_segment_distance(p, self.a, self.b) - self.radius

    def bounds(self):
        r = self.radius
        return (
            min(self.a.x, self.b.x) - r,
            min(self.a.y, self.b.y) - r,
            max(self.a.x, self.b.x) + r,
            max(self.a.y, self.b.y) + r,
        )

    def pieces(self, o, u, eps: float) -> list[Piece]:
        out: list[Piece] = []
        for part in self.parts:
            out.extend(part.pieces(o, u, eps))
        return out

    def transformed(self, f) -> "Capsule":
        a, s = f(self.a)
        return Capsule(a, f(self.b)[0], self.radius * s)


Shape = Union[Disk, ConvexPolygon, Capsule]


def validate_convex(verts: Sequence[Point]) -> None:
    """Raise ``ValueError`` unless ``verts`` is a strictly convex CCW polygon."""
    n = len(verts)
    if n < 3:
        raise ValueError("polygon needs at least 3 vertices")
    for v in verts:
        if not (math.isfinite(v[0]) and math.isfinite(v[1])):
            raise ValueError("polygon vertices must be finite")
    turn = 0.0
    for i in range(n):
        a, b, c = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
        z = cross((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1]))
        if z <= 0.0:
            if z == 0.0:
                raise ValueError(f"collinear or repeated vertices at index {(i + 1) % n}")
            raise ValueError(f"polygon is not convex counterclockwise at vertex {(i + 1) % n}")
        e1 = math.atan2(b[1] - a[1], b[0] - a[0])
        e2 = math.atan2(c[1] - b[1], c[0] - b[0])
        turn += normalize_angle(e2 - e1)
    if abs(turn - TWO_PI) > 1e-6:
        raise ValueError("polygon winds more than once; not simple")


def _point_segment_distance(p, a, b) -> float:
    ax, ay = b[0] - a[0], b[1] - a[1]
    l2 = ax * ax + ay * ay
    t = 0.0 if l2 == 0.0 else max(0.0, min(1.0, ((p[0] - a[0]) * ax + (p[1] - a[1]) * ay) / l2))
    return math.hypot(p[0] - a[0] - t * ax, p[1] - a[1] - t * ay)


# --------------------------------------------------------------------------
# obstacles and scenes


@dataclass(frozen=True)
class Obstacle:
    shape: Shape
    mode: str = CLOSED
    included: Optional[ArcSet] = None  # partial disks: boundary angles about the center
    id: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown boundary mode {self.mode!r}")
        if self.mode == PARTIAL:
            if not isinstance(self.shape, Disk):
                raise ValueError("partial boundary is only supported on disks")
            if self.included is None:
                object.__setattr__(self, "included", ArcSet(()))
        elif self.included is not None:
            raise ValueError("included arcs are only allowed with a partial boundary")

    @property
    def kind(self) -> str:
        return {Disk: "disk", ConvexPolygon: "polygon", Capsule: "capsule"}[type(self.shape)]

    @property
    def smooth(self) -> bool:
        return isinstance(self.shape, (Disk, Capsule))

    def boundary_member(self, p) -> bool:
        """Whether boundary point ``p`` belongs to the obstacle's point set."""
        if self.mode == CLOSED:
            return True
        if self.mode == OPEN:
            return False
        c = self.shape.center  # type: ignore[union-attr]
        return self.included.contains(angle_of((p[0] - c.x, p[1] - c.y)))  # type: ignore[union-attr]

    def contains(self, p, eps: float = DEFAULT_EPS_SPACE) -> bool:
        sd = self.shape.signed_distance(p)
        if sd < -eps:
            return True
        if sd > eps:
            return False
        return self.boundary_member(p)

    def with_mode(self, mode: str, included: Optional[ArcSet] = None) -> "Obstacle":
        return Obstacle(self.shape, mode, included if mode == PARTIAL else None, self.id)


@dataclass(frozen=True)
class Scene:
    obstacles: tuple = ()
    eps_angle: float = DEFAULT_EPS_ANGLE
    eps_space: float = DEFAULT_EPS_SPACE

    def __post_init__(self):
        obs = tuple(self.obstacles)
        ids = [o.id for o in obs]
        if len(set(ids)) != len(ids):
            obs = tuple(Obstacle(o.shape, o.mode, o.included, i) for i, o in enumerate(obs))
        object.__setattr__(self, "obstacles", obs)
        if not (self.eps_angle > 0.0 and self.eps_space > 0.0):
            raise ValueError("tolerances must be positive")

    @classmethod
    def of(cls, obstacles, **kw) -> "Scene":
        return cls(tuple(Obstacle(o.shape, o.mode, o.included, i) for i, o in enumerate(obstacles)), **kw)

    @property
    def bbox(self):
        if not self.obstacles:
            return (-1.0, -1.0, 1.0, 1.0)
        bs = [o.shape.bounds() for o in self.obstacles]
        x0, y0 = min(b[0] for b in bs), min(b[1] for b in bs)
        x1, y1 = max(b[2] for b in bs), max(b[3] for b in bs)
        px, py = 0.1 * (x1 - x0), 0.1 * (y1 - y0)
        return (x0 - px, y0 - py, x1 + px, y1 + py)

    def by_id(self, oid: int) -> Obstacle:
        for o in self.obstacles:
            if o.id == oid:
                return o
        raise KeyError(oid)

    def without(self, oid: int) -> "Scene":
        return Scene.of([o for o in self.obstacles if o.id != oid], eps_angle=self.eps_angle, eps_space=self.eps_space)

    def with_mode(self, mode: str) -> "Scene":
        return Scene(
            tuple(o.with_mode(mode, o.included) if mode != PARTIAL else o for o in self.obstacles),
            self.eps_angle,
            self.eps_space,
        )

    def in_closure(self, p) -> Optional[Obstacle]:
        for o in self.obstacles:
            if o.shape.signed_distance(p) <= self.eps_space:
                return o
        return None

    def strictly_inside(self, p) -> Optional[Obstacle]:
        for o in self.obstacles:
            if o.shape.signed_distance(p) < -self.eps_space:
                return o
        return None


@dataclass(frozen=True)
class HitResult:
    hit: bool
    t_first: Optional[float] = None
    point: Optional[Point] = None
    obstacle_id: Optional[int] = None


NO_HIT = HitResult(False)


def contact_pieces(ray: Ray, o: Obstacle, eps: float = DEFAULT_EPS_SPACE) -> list[Piece]:
    return o.shape.pieces(ray.origin, ray.u, eps)


def ray_hits_obstacle(ray: Ray, o: Obstacle, eps: float = DEFAULT_EPS_SPACE) -> HitResult:
    """First contact of the open ray with the obstacle's point set.

    Interior crossings always hit.  Boundary-only contact hits iff a touched
    boundary point at a positive parameter is a member.  ``t_first`` is the
    infimum of member parameters; when that infimum is the excluded origin it
    is reported as ``eps``.
    """
    u = ray.u
    best = math.inf
    for piece in o.shape.pieces(ray.origin, u, eps):
        if piece.t1 <= ORIGIN_BAND * eps:
            continue
        if piece.kind == "cross":
            best = min(best, piece.t0)
            continue
        if o.mode == CLOSED:
            best = min(best, piece.t0)
        elif o.mode == PARTIAL:
            # grazing contact with a disk is a single point
            t = piece.t0
            p = (ray.origin[0] + t * u[0], ray.origin[1] + t * u[1])
            if o.boundary_member(p):
                best = min(best, t)
    if best == math.inf:
        return NO_HIT
    t = best if best > eps else eps
    return HitResult(True, t, ray.at(t), o.id)


def first_hit(ray: Ray, scene: Scene) -> HitResult:
    best = NO_HIT
    for o in scene.obstacles:
        h = ray_hits_obstacle(ray, o, scene.eps_space)
        if not h.hit:
            continue
        if (
            not best.hit
            or h.t_first < best.t_first  # type: ignore[operator]
            or (h.t_first == best.t_first and h.obstacle_id < best.obstacle_id)  # type: ignore[operator]
        ):
            best = h
    return best


# --------------------------------------------------------------------------
# vectorized hit masks, used by the sampling oracle


def _disk_hits(c, r, mode, included, origin, ux, uy, eps):
    wx, wy = c[0] - origin[0], c[1] - origin[1]
    tf = ux * wx + uy * wy
    h = np.abs(ux * wy - uy * wx)
    crossing = h < r - eps
    half = np.sqrt(np.maximum(r * r - h * h, 0.0))
    hit = crossing & (tf + half > ORIGIN_BAND * eps)
    if mode == OPEN:
        return hit
    graze = (~crossing) & (h <= r + eps) & (tf > ORIGIN_BAND * eps)
    if mode == CLOSED:
        return hit | graze
    px, py = origin[0] + tf * ux, origin[1] + tf * uy
    ang = np.mod(np.arctan2(py - c[1], px - c[0]), TWO_PI)
    member = _arcset_contains_many(included, ang)
    return hit | (graze & member)


def _arcset_contains_many(arcs: ArcSet, theta: np.ndarray) -> np.ndarray:
    out = np.zeros(theta.shape, dtype=bool)
    eps = arcs.eps
    for a in arcs.arcs:
        if a.is_full:
            return np.ones(theta.shape, dtype=bool)
        d = np.mod(theta - a.start, TWO_PI)
        d = np.where(d > TWO_PI - eps, d - TWO_PI, d)
        inner = (d > eps) & (d < a.width - eps)
        at_start = np.abs(d) <= eps
        at_end = np.abs(d - a.width) <= eps
        out |= inner | (at_start & a.start_closed) | (at_end & a.end_closed)
    return out


def _polygon_hits(poly: ConvexPolygon, mode, origin, ux, uy, eps):
    nrm = np.asarray(poly.normals, dtype=float)
    base = nrm[:, 2] - (nrm[:, 0] * origin[0] + nrm[:, 1] * origin[1])
    den = np.outer(nrm[:, 0], ux) + np.outer(nrm[:, 1], uy)
    par = np.abs(den) < 1e-15
    safe = np.where(par, 1.0, den)
    entering, leaving = (den < 0.0) & ~par, (den > 0.0) & ~par

    def clip(slack):
        num = (base + slack)[:, None]
        ok = ~(par & (num < 0.0)).any(axis=0)
        t = num / safe
        hi = np.where(leaving, t, np.inf).min(axis=0)
        lo = np.where(entering, t, -np.inf).max(axis=0)
        return ok & (lo <= hi), lo, hi

    band = ORIGIN_BAND * eps
    ok_ex, _, hi_ex = clip(0.0)
    if mode == CLOSED:
        # any contact counts, interior or graze
        ok_out, _, hi_out = clip(eps)
        return ok_out & (np.where(ok_ex, hi_ex, hi_out) > band)
    ok_in, lo_in, hi_in = clip(-eps)
    interior = ok_in & (hi_in > lo_in)
    return interior & (np.where(ok_ex, hi_ex, hi_in) > band)


def hits_many(o: Obstacle, origin, thetas: np.ndarray, eps: float = DEFAULT_EPS_SPACE) -> np.ndarray:
    """Boolean hit mask of open rays from ``origin`` in directions ``thetas``."""
    ux, uy = np.cos(thetas), np.sin(thetas)
    s = o.shape
    if isinstance(s, Disk):
        return _disk_hits(s.center, s.radius, o.mode, o.included, origin, ux, uy, eps)
    if isinstance(s, ConvexPolygon):
        return _polygon_hits(s, o.mode, origin, ux, uy, eps)
    d1, d2, rect = s.parts
    hit = _disk_hits(d1.center, d1.radius, o.mode, None, origin, ux, uy, eps)
    hit |= _disk_hits(d2.center, d2.radius, o.mode, None, origin, ux, uy, eps)
    hit |= _polygon_hits(rect, o.mode, origin, ux, uy, eps)
    return hit


def critical_directions(o: Obstacle, x) -> list[float]:
    """Directions from exterior point ``x`` where the obstacle's footprint can end."""
    s = o.shape
    out: list[float] = []
    disks = [s] if isinstance(s, Disk) else list(s.parts[:2]) if isinstance(s, Capsule) else []
    for d in disks:
        dx, dy = d.center.x - x[0], d.center.y - x[1]
        dist = math.hypot(dx, dy)
        if dist <= d.radius:
            continue
        phi = math.atan2(dy, dx)
        half = math.asin(d.radius / dist)
        out += [normalize_angle(phi - half), normalize_angle(phi + half)]
    if isinstance(s, ConvexPolygon):
        out += [angle_of((v.x - x[0], v.y - x[1])) for v in s.vertices]
    if isinstance(s, Capsule):
        out += [angle_of((v.x - x[0], v.y - x[1])) for v in s.parts[2].vertices]
    if o.mode == PARTIAL and o.included is not None:
        # directions toward the ends of included boundary pieces
        c, r = s.center, s.radius  # type: ignore[union-attr]
        for theta in o.included.endpoints():
            out.append(angle_of((c.x + r * math.cos(theta) - x[0], c.y + r * math.sin(theta) - x[1])))
    return out


def _all_hit(scene: Scene, x, thetas: np.ndarray) -> bool:
    remaining = thetas
    for o in scene.obstacles:
        remaining = remaining[~hits_many(o, x, remaining, scene.eps_space)]
        if remaining.size == 0:
            return True
    return remaining.size == 0


def oracle_shadowed(scene: Scene, x, n_dirs: int = 100000) -> bool:
    """Brute-force shadow test: do all sampled directions from ``x`` hit the scene?

    Samples ``n_dirs`` uniform directions plus every critical direction of every
    obstacle and the midpoints between consecutive critical directions.
    """
    if n_dirs < 4:
        raise ValueError("n_dirs must be at least 4")
    hit_obs = scene.in_closure(x)
    if hit_obs is not None:
        raise ValueError(f"oracle query point {tuple(x)} lies in the closure of obstacle {hit_obs.id}")
    if not scene.obstacles:
        return False
    crit = sorted({c for o in scene.obstacles for c in critical_directions(o, x)})
    mids = []
    for i, c in enumerate(crit):
        nxt = crit[(i + 1) % len(crit)] + (TWO_PI if i + 1 == len(crit) else 0.0)
        mids.append(normalize_angle(0.5 * (c + nxt)))
    if not _all_hit(scene, x, np.array(crit + mids, dtype=float)):
        return False
    uniform = np.arange(n_dirs) * (TWO_PI / n_dirs)
    # coarse interleaving finds wide gaps early
    stride = 97 if n_dirs > 97 * 4 else 1
    order = np.concatenate([uniform[s::stride] for s in range(stride)])
    for start in range(0, order.size, 8192):
        if not _all_hit(scene, x, order[start : start + 8192]):
            return False
    return True
