"""Scene-level analyses: components, weak test, shadow raster, supporting rays, audit."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import ndimage

from .coverage import (
    InteriorPointError,
    component_cover,
    hit_arc,
    is_semiconvex_at,
    shadowed_many,
    signed_distance_many,
)
from .geom import TWO_PI, Point, Ray, normalize_angle
from .raycast import (
    CLOSED,
    OPEN,
    ORIGIN_BAND,
    PARTIAL,
    Capsule,
    ConvexPolygon,
    Disk,
    Obstacle,
    Scene,
    _point_segment_distance,
    ray_hits_obstacle,
)

# --------------------------------------------------------------------------
# components


@dataclass(frozen=True)
class ComponentPartition:
    groups: tuple  # tuple of sorted obstacle-id tuples, ordered by smallest id
    smooth_flags: tuple

    def component_of(self, oid: int) -> int:
        for i, g in enumerate(self.groups):
            if oid in g:
                return i
        raise KeyError(oid)

    def __len__(self) -> int:
        return len(self.groups)


def _segment_segment_distance(p1, p2, q1, q2) -> float:
    if _segments_intersect(p1, p2, q1, q2):
        return 0.0
    return min(
        _point_segment_distance(p1, q1, q2),
        _point_segment_distance(p2, q1, q2),
        _point_segment_distance(q1, p1, p2),
        _point_segment_distance(q2, p1, p2),
    )


def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _segments_intersect(p1, p2, q1, q2) -> bool:
    d1, d2 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    d3, d4 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 * d2 < 0 and d3 * d4 < 0


def _core(shape):
    if isinstance(shape, Disk):
        return ("point", shape.center, shape.radius)
    if isinstance(shape, Capsule):
        return ("segment", (shape.a, shape.b), shape.radius)
    return ("polygon", shape, 0.0)


def _core_polygon_gap(kind, geom, poly: ConvexPolygon) -> float:
    """Signed gap between a point/segment core and a polygon (negative when inside)."""
    if kind == "point":
        return poly.signed_distance(geom)
    a, b = geom
    if poly.signed_distance(a) <= 0.0 or poly.signed_distance(b) <= 0.0:
        return min(poly.signed_distance(a), poly.signed_distance(b), 0.0)
    for e0, e1 in poly.edges():
        if _segments_intersect(a, b, e0, e1):
            return 0.0
    return min(
        min(_point_segment_distance(v, a, b) for v in poly.vertices),
        poly.signed_distance(a),
        poly.signed_distance(b),
    )


def _polygon_separation(p: ConvexPolygon, q: ConvexPolygon) -> float:
    best = -math.inf
    for a, b in ((p, q), (q, p)):
        for nx, ny, d in a.normals:
            gap = min(nx * v.x + ny * v.y for v in b.vertices) - d
            best = max(best, gap)
    return best


def shape_gap(s1, s2) -> float:
    """Separation of two closures: > 0 apart, ~0 touching, < 0 interiors overlap."""
    k1, g1, r1 = _core(s1)
    k2, g2, r2 = _core(s2)
    if k1 == "polygon" and k2 == "polygon":
        return _polygon_separation(g1, g2)
    if k1 == "polygon":
        k1, g1, r1, k2, g2, r2 = k2, g2, r2, k1, g1, r1
    if k2 == "polygon":
        gap = _core_polygon_gap(k1, g1, g2)
        if gap <= 0.0 and r1 > 0.0:
            return -r1 if gap == 0.0 else gap - r1
        return gap - r1
    if k1 == "point" and k2 == "point":
        d = math.hypot(g1[0] - g2[0], g1[1] - g2[1])
    elif k1 == "point":
        d = _point_segment_distance(g1, *g2)
    elif k2 == "point":
        d = _point_segment_distance(g2, *g1)
    else:
        d = _segment_segment_distance(g1[0], g1[1], g2[0], g2[1])
    return d - r1 - r2


def _closest_point_on(shape, p) -> Point:
    if isinstance(shape, Disk):
        dx, dy = p[0] - shape.center.x, p[1] - shape.center.y
        d = math.hypot(dx, dy) or 1.0
        return Point(shape.center.x + dx / d * shape.radius, shape.center.y + dy / d * shape.radius)
    if isinstance(shape, Capsule):
        ax, ay = shape.b.x - shape.a.x, shape.b.y - shape.a.y
        t = max(0.0, min(1.0, ((p[0] - shape.a.x) * ax + (p[1] - shape.a.y) * ay) / (ax * ax + ay * ay)))
        q = Point(shape.a.x + t * ax, shape.a.y + t * ay)
        return _closest_point_on(Disk(q, shape.radius), p)
    best, best_d = None, math.inf
    for a, b in shape.edges():
        ax, ay = b.x - a.x, b.y - a.y
        t = max(0.0, min(1.0, ((p[0] - a.x) * ax + (p[1] - a.y) * ay) / (ax * ax + ay * ay)))
        q = Point(a.x + t * ax, a.y + t * ay)
        d = math.hypot(q.x - p[0], q.y - p[1])
        if d < best_d:
            best, best_d = q, d
    return best  # type: ignore[return-value]


def _touch_connects(o1: Obstacle, o2: Obstacle) -> bool:
    if o1.mode == CLOSED or o2.mode == CLOSED:
        return True
    if o1.mode == OPEN and o2.mode == OPEN:
        return False
    # at least one partial disk; its contact with the other closure is a single point
    for pd, other in ((o1, o2), (o2, o1)):
        if pd.mode != PARTIAL:
            continue
        c = pd.shape.center
        q = _closest_point_on(other.shape, c)
        contact = _closest_point_on(pd.shape, q)
        if pd.boundary_member(contact) or other.boundary_member(contact):
            return True
    return False


def components(s: Scene) -> ComponentPartition:
    """Group obstacles whose union is connected, honoring boundary membership."""
    ids = [o.id for o in s.obstacles]
    parent = {i: i for i in ids}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for o1, o2 in itertools.combinations(s.obstacles, 2):
        gap = shape_gap(o1.shape, o2.shape)
        if gap > s.eps_space:
            continue
        if gap < -s.eps_space or _touch_connects(o1, o2):
            parent[find(o1.id)] = find(o2.id)
    groups: dict[int, list[int]] = {}
    for i in ids:
        groups.setdefault(find(i), []).append(i)
    ordered = sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0])
    by_id = {o.id: o for o in s.obstacles}
    smooth = tuple(len(g) == 1 and by_id[g[0]].smooth for g in ordered)
    return ComponentPartition(tuple(ordered), smooth)


# --------------------------------------------------------------------------
# boundary samples


def _uniform_boundary(shape, n: int) -> list[Point]:
    if isinstance(shape, Disk):
        c, r = shape.center, shape.radius
        return [Point(c.x + r * math.cos(TWO_PI * k / n), c.y + r * math.sin(TWO_PI * k / n)) for k in range(n)]
    if isinstance(shape, ConvexPolygon):
        edges = shape.edges()
        lengths = [math.hypot(b.x - a.x, b.y - a.y) for a, b in edges]
        return _walk(edges, lengths, n, lambda e, t: Point(e[0].x + t * (e[1].x - e[0].x), e[0].y + t * (e[1].y - e[0].y)))
    # capsule: side a->b, cap at b, side b->a, cap at a
    a, b, r = shape.a, shape.b, shape.radius
    ex, ey = b.x - a.x, b.y - a.y
    length = math.hypot(ex, ey)
    phi = math.atan2(ey, ex)
    nx, ny = ey / length * r, -ex / length * r  # right-hand side
    pieces = [
        ("seg", Point(a.x + nx, a.y + ny), Point(b.x + nx, b.y + ny)),
        ("arc", b, phi - math.pi / 2),
        ("seg", Point(b.x - nx, b.y - ny), Point(a.x - nx, a.y - ny)),
        ("arc", a, phi + math.pi / 2),
    ]
    lengths = [length, math.pi * r, length, math.pi * r]

    def at(piece, t):
        if piece[0] == "seg":
            p, q = piece[1], piece[2]
            return Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))
        c, ang0 = piece[1], piece[2]
        ang = ang0 + math.pi * t
        return Point(c.x + r * math.cos(ang), c.y + r * math.sin(ang))

    return _walk(pieces, lengths, n, at)


def _walk(pieces, lengths, n, at) -> list[Point]:
    total = sum(lengths)
    out = []
    for k in range(n):
        s = total * k / n
        for piece, length in zip(pieces, lengths):
            if s <= length or piece is pieces[-1]:
                out.append(at(piece, min(1.0, s / length)))
                break
            s -= length
    return out


def generator_circles(shape) -> list[tuple[Point, float]]:
    """Circles (possibly of zero radius) whose hull is the shape."""
    if isinstance(shape, Disk):
        return [(shape.center, shape.radius)]
    if isinstance(shape, Capsule):
        return [(shape.a, shape.radius), (shape.b, shape.radius)]
    return [(v, 0.0) for v in shape.vertices]


def common_tangents(c1, r1, c2, r2):
    """Common tangent lines of two circles as ``(p1, p2)`` contact-point pairs."""
    wx, wy = c2[0] - c1[0], c2[1] - c1[1]
    d = math.hypot(wx, wy)
    if d == 0.0:
        return []
    psi = math.atan2(wy, wx)
    out = []
    for q, sign2 in ((r2 - r1, 1.0), (-(r1 + r2), -1.0)):
        if abs(q) > d:
            continue
        base = math.acos(max(-1.0, min(1.0, q / d)))
        for beta in {psi + base, psi - base}:
            n = (math.cos(beta), math.sin(beta))
            p1 = Point(c1[0] - r1 * n[0], c1[1] - r1 * n[1])
            p2 = Point(c2[0] - sign2 * r2 * n[0], c2[1] - sign2 * r2 * n[1])
            out.append((p1, p2))
    return out


def _extreme_points(shape) -> list[Point]:
    out = []
    for c, r in generator_circles(shape):
        out += [Point(c.x + r, c.y), Point(c.x - r, c.y), Point(c.x, c.y + r), Point(c.x, c.y - r)]
    return out


def _critical_points(s: Scene) -> list[tuple[Point, int]]:
    pts: list[tuple[Point, int]] = []
    for o in s.obstacles:
        if isinstance(o.shape, ConvexPolygon):
            pts += [(v, o.id) for v in o.shape.vertices]
        pts += [(p, o.id) for p in _extreme_points(o.shape)]
        if o.mode == PARTIAL:
            c, r = o.shape.center, o.shape.radius
            for theta in o.included.endpoints():
                pts.append((Point(c.x + r * math.cos(theta), c.y + r * math.sin(theta)), o.id))
    for o1, o2 in itertools.combinations(s.obstacles, 2):
        for c1, r1 in generator_circles(o1.shape):
            for c2, r2 in generator_circles(o2.shape):
                for p1, p2 in common_tangents(c1, r1, c2, r2):
                    pts += [(p1, o1.id), (p2, o2.id)]
    return pts


def boundary_samples(s: Scene, n_per_obstacle: int = 64, include_critical: bool = True) -> list[tuple[Point, int]]:
    """Test points on the boundary of the union, tagged with their component id."""
    if n_per_obstacle < 16:
        raise ValueError("n_per_obstacle must be at least 16")
    part = components(s)
    tagged: list[tuple[Point, int]] = []
    for o in s.obstacles:
        tagged += [(p, o.id) for p in _uniform_boundary(o.shape, n_per_obstacle)]
    if include_critical:
        tagged += _critical_points(s)
    out: list[tuple[Point, int]] = []
    seen = set()
    tol = max(s.eps_space, 1e-12)
    quant = 1e-7
    by_id = {o.id: o for o in s.obstacles}
    for p, oid in tagged:
        if abs(by_id[oid].shape.signed_distance(p)) > 1e-7:
            continue  # tangent contact landed off the obstacle boundary
        if s.strictly_inside(p) is not None:
            continue
        key = (round(p.x / quant), round(p.y / quant))
        if key in seen:
            continue
        seen.add(key)
        out.append((p, part.component_of(oid)))
    return out


# --------------------------------------------------------------------------
# weak semiconvexity


@dataclass(frozen=True)
class WeakReport:
    passed: bool
    tested: int
    failures: tuple
    critical_points_included: bool
    nonmember_boundary_points: int = 0


def weak_semiconvexity_report(
    s: Scene, samples=None, *, include_critical: bool = True, stop_at_first: bool = False
) -> WeakReport:
    """Sampled check that every tested boundary point has a free open ray."""
    if samples is None:
        samples = boundary_samples(s, 64, include_critical)
    failures = []
    nonmember = 0
    tested = 0
    for p, comp in samples:
        tested += 1
        if not any(o.contains(p, s.eps_space) for o in s.obstacles):
            nonmember += 1
        try:
            v = is_semiconvex_at(s, p)
        except InteriorPointError:
            continue
        if v.shadowed:
            failures.append((p, comp))
            if stop_at_first:
                break
    return WeakReport(not failures, tested, tuple(failures), include_critical, nonmember)


# --------------------------------------------------------------------------
# shadow raster

FREE, SHADOW, INSIDE = 0, 1, 2


@dataclass(frozen=True)
class ShadowRaster:
    bbox: tuple
    resolution: float
    cells: np.ndarray = field(repr=False)  # [row (y), col (x)] codes FREE / SHADOW / INSIDE
    labels: np.ndarray = field(repr=False)
    shadow_components: int

    @property
    def shape(self):
        return self.cells.shape

    def centers(self):
        return grid_centers(self.bbox, self.resolution)

    def shadow_points(self) -> list[Point]:
        xs, ys = self.centers()
        rows, cols = np.nonzero(self.cells == SHADOW)
        return [Point(float(xs[c]), float(ys[r])) for r, c in zip(rows, cols)]

    @property
    def n_shadow(self) -> int:
        return int((self.cells == SHADOW).sum())

    def cell_of(self, p) -> tuple[int, int]:
        x0, y0 = self.bbox[0], self.bbox[1]
        return int((p[1] - y0) // self.resolution), int((p[0] - x0) // self.resolution)


def grid_centers(bbox, resolution: float):
    x0, y0, x1, y1 = bbox
    nx = max(1, int(math.ceil((x1 - x0) / resolution - 1e-9)))
    ny = max(1, int(math.ceil((y1 - y0) / resolution - 1e-9)))
    xs = x0 + (np.arange(nx) + 0.5) * resolution
    ys = y0 + (np.arange(ny) + 0.5) * resolution
    return xs, ys


def inside_mask(s: Scene, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """Points in the closure of some obstacle (interior or boundary)."""
    mask = np.zeros(px.shape, dtype=bool)
    for o in s.obstacles:
        mask |= signed_distance_many(o.shape, px, py) <= s.eps_space
    return mask


EIGHT = np.ones((3, 3), dtype=int)


def shadow_scan(s: Scene, resolution: float, bbox=None) -> ShadowRaster:
    if not resolution > 0.0:
        raise ValueError("resolution must be positive")
    bbox = tuple(bbox or s.bbox)
    xs, ys = grid_centers(bbox, resolution)
    px, py = np.meshgrid(xs, ys)
    inside = inside_mask(s, px, py)
    cells = np.full(px.shape, FREE, dtype=np.int8)
    cells[inside] = INSIDE
    ext = ~inside
    shadow = np.zeros(px.shape, dtype=bool)
    shadow[ext] = shadowed_many(s, px[ext], py[ext])
    cells[shadow] = SHADOW
    labels, n = ndimage.label(shadow, structure=EIGHT)
    return ShadowRaster(bbox, resolution, cells, labels, int(n))


# --------------------------------------------------------------------------
# supporting rays


@dataclass(frozen=True)
class SupportRay:
    ray: Ray
    touch_point: Point
    touch_obstacle: int
    component: int
    touch_t: float
    inner: bool
    beyond_hits: tuple  # ((component id, t), ...)

    @property
    def direction(self) -> float:
        return self.ray.direction


def _support_for_component(s: Scene, ray: Ray, group) -> Optional[tuple[float, int]]:
    """Touch parameter and obstacle if the ray meets the group's boundary but not its interior."""
    u = ray.u
    touch = None
    for oid in group:
        o = s.by_id(oid)
        for piece in o.shape.pieces(ray.origin, u, s.eps_space):
            if piece.t1 <= ORIGIN_BAND * s.eps_space:
                continue
            if piece.kind == "cross":
                return None
            if touch is None or piece.t0 < touch[0]:
                touch = (max(piece.t0, 0.0), oid)
    return touch


def supporting_rays(s: Scene, x, partition: Optional[ComponentPartition] = None) -> list[SupportRay]:
    """Rays from exterior ``x`` touching a component's boundary without entering its interior."""
    x = Point(*x)
    if s.in_closure(x) is not None:
        raise InteriorPointError(f"supporting rays need an exterior point, got {tuple(x)}")
    part = partition or components(s)
    candidates = []
    for o in s.obstacles:
        arc = hit_arc(x, o, s.eps_angle, s.eps_space)
        for theta in (arc.start, normalize_angle(arc.end)):
            candidates.append((o.id, theta))
    found: list[SupportRay] = []
    for oid, theta in sorted(candidates):
        if any(_angle_close(theta, r.direction, s.eps_angle) for r in found):
            continue
        ray = Ray(x, theta)
        comp = part.component_of(oid)
        touch = _support_for_component(s, ray, part.groups[comp])
        if touch is None:
            continue
        t_touch, touch_oid = touch
        beyond = []
        for j, group in enumerate(part.groups):
            if j == comp:
                continue
            ts = [h.t_first for h in (ray_hits_obstacle(ray, s.by_id(g), s.eps_space) for g in group) if h.hit]
            if ts and min(ts) > t_touch + s.eps_space:
                beyond.append((j, min(ts)))
        found.append(SupportRay(ray, ray.at(t_touch), touch_oid, comp, t_touch, bool(beyond), tuple(beyond)))
    found.sort(key=lambda r: (r.touch_obstacle, r.direction))
    return found


def _angle_close(a: float, b: float, eps: float) -> bool:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d) <= eps


def inner_supporting_rays(s: Scene, x, partition: Optional[ComponentPartition] = None) -> list[SupportRay]:
    return [r for r in supporting_rays(s, x, partition) if r.inner]


# --------------------------------------------------------------------------
# probes for degenerate (measure-zero) shadows


def shadow_probe_points(s: Scene, partition: Optional[ComponentPartition] = None) -> list[Point]:
    """Points on common tangent segments between different components.

    Shadows of closed or partial scenes can be segments on such lines, which
    no raster can hit; these probes make them visible to the audit.
    """
    part = partition or components(s)
    mids = []
    for o1, o2 in itertools.combinations(s.obstacles, 2):
        if part.component_of(o1.id) == part.component_of(o2.id):
            continue
        pairs = [
            pq
            for c1, r1 in generator_circles(o1.shape)
            for c2, r2 in generator_circles(o2.shape)
            for pq in common_tangents(c1, r1, c2, r2)
        ]
        if not pairs:
            continue
        arr = np.asarray(pairs, dtype=float)  # (m, 2 points, 2 coords)
        on1 = np.abs(signed_distance_many(o1.shape, arr[:, 0, 0], arr[:, 0, 1])) <= 1e-7
        on2 = np.abs(signed_distance_many(o2.shape, arr[:, 1, 0], arr[:, 1, 1])) <= 1e-7
        arr = arr[on1 & on2]
        for w in (0.25, 0.5, 0.75):
            mids.append(arr[:, 0] + w * (arr[:, 1] - arr[:, 0]))
    if not mids:
        return []
    pts = np.concatenate(mids)
    pts = pts[~inside_mask(s, pts[:, 0], pts[:, 1])]
    _, first = np.unique(np.round(pts, 9), axis=0, return_index=True)
    return [Point(float(x), float(y)) for x, y in pts[np.sort(first)]]


def find_shadow_point(s: Scene, cells: int = 24, partition: Optional[ComponentPartition] = None) -> Optional[Point]:
    """Some shadowed exterior point, or None if a coarse grid plus tangent probes find none.

    Cheap screening for large randomized runs; ``shadow_scan`` is the thorough path.
    """
    if not s.obstacles:
        return None
    x0, y0, x1, y1 = s.bbox
    xs, ys = grid_centers(s.bbox, max(x1 - x0, y1 - y0) / cells)
    gx, gy = np.meshgrid(xs, ys)
    probes = shadow_probe_points(s, partition)
    px = np.concatenate([[p.x for p in probes], gx.ravel()])
    py = np.concatenate([[p.y for p in probes], gy.ravel()])
    keep = ~inside_mask(s, px, py)
    px, py = px[keep], py[keep]
    hit = np.flatnonzero(shadowed_many(s, px, py))
    if hit.size == 0:
        return None
    return Point(float(px[hit[0]]), float(py[hit[0]]))


# --------------------------------------------------------------------------
# audit


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    applicable: bool
    consistent: bool
    details: str


@dataclass(frozen=True)
class AuditReport:
    n_components: int
    all_smooth: bool
    mode_summary: dict
    weakly_semiconvex_sampled: bool
    semiconvex_sampled: bool
    shadow_nonempty: bool
    shadow_cells: int
    shadow_probe_hits: int
    samples_tested: int
    checks: tuple

    @property
    def all_consistent(self) -> bool:
        return all(c.consistent for c in self.checks)

    def check(self, name: str) -> TheoremCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_text(self) -> str:
        lines = [
            f"n_components={self.n_components}",
            f"all_smooth={str(self.all_smooth).lower()}",
            f"modes=open:{self.mode_summary.get(OPEN, 0)},closed:{self.mode_summary.get(CLOSED, 0)},"
            f"partial:{self.mode_summary.get(PARTIAL, 0)}",
            f"weakly_semiconvex_sampled={str(self.weakly_semiconvex_sampled).lower()}",
            f"semiconvex_sampled={str(self.semiconvex_sampled).lower()}",
            f"shadow_nonempty={str(self.shadow_nonempty).lower()}",
            f"shadow_cells={self.shadow_cells}",
            f"shadow_probe_hits={self.shadow_probe_hits}",
            f"samples_tested={self.samples_tested}",
        ]
        for c in self.checks:
            lines.append(
                f"{c.name}=applicable:{str(c.applicable).lower()},consistent:{str(c.consistent).lower()},{c.details}"
            )
        lines.append(f"all_consistent={str(self.all_consistent).lower()}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        import csv
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theorem", "applicable", "consistent", "details"])
        for c in self.checks:
            w.writerow([c.name, str(c.applicable).lower(), str(c.consistent).lower(), c.details])
        return buf.getvalue()


def _component_holes(s: Scene, part: ComponentPartition, resolution: float) -> list[int]:
    xs, ys = grid_centers(s.bbox, resolution)
    px, py = np.meshgrid(xs, ys)
    ringed = []
    for i, group in enumerate(part.groups):
        if len(group) < 2:
            continue  # a single convex obstacle has no hole
        mask = np.zeros(px.shape, dtype=bool)
        for oid in group:
            mask |= signed_distance_many(s.by_id(oid).shape, px, py) <= s.eps_space
        labels, n = ndimage.label(~mask)
        border = set(np.unique(np.concatenate([labels[0], labels[-1], labels[:, 0], labels[:, -1]])))
        if any(k not in border for k in range(1, n + 1)):
            ringed.append(i)
    return ringed


def _exterior_points(s: Scene, n: int, rng: np.random.Generator) -> list[Point]:
    x0, y0, x1, y1 = s.bbox
    out = []
    while len(out) < n:
        p = Point(float(rng.uniform(x0, x1)), float(rng.uniform(y0, y1)))
        if s.in_closure(p) is None and min(abs(o.shape.signed_distance(p)) for o in s.obstacles) > 1e-6:
            out.append(p)
    return out


def _pick(points: list, k: int) -> list:
    if len(points) <= k:
        return list(points)
    idx = np.linspace(0, len(points) - 1, k).round().astype(int)
    return [points[i] for i in idx]


def theorem_audit(
    s: Scene,
    resolution: float = 0.05,
    samples: int = 64,
    *,
    seed: int = 0,
    support_points: int = 50,
    max_shadow_points: int = 100,
) -> AuditReport:
    """Evaluate each structural statement against the scene and report consistency."""
    part = components(s)
    n = len(part)
    modes = {m: sum(o.mode == m for o in s.obstacles) for m in (OPEN, CLOSED, PARTIAL)}
    all_open = bool(s.obstacles) and modes[OPEN] == len(s.obstacles)
    all_closed = bool(s.obstacles) and modes[CLOSED] == len(s.obstacles)
    all_smooth = all(part.smooth_flags) if n else True

    samples_list = boundary_samples(s, samples, True) if s.obstacles else []
    weak = weak_semiconvexity_report(s, samples_list)
    raster = shadow_scan(s, resolution)
    probes = [p for p in shadow_probe_points(s, part) if is_semiconvex_at(s, p).shadowed]
    shadow_nonempty = raster.n_shadow > 0 or bool(probes)
    ringed = _component_holes(s, part, resolution)
    w = weak.passed
    checks = []

    def add(name, applicable, ok, details):
        checks.append(TheoremCheck(name, bool(applicable), bool(ok) if applicable else True, details))

    premise = w and shadow_nonempty
    add("two_components", premise, n >= 2, f"components={n} need>=2")
    add("open_three_components", premise and all_open, n >= 3, f"components={n} need>=3 (open sets only)")
    add(
        "smooth_three_components",
        premise and all_smooth and (all_open or all_closed),
        n >= 3,
        f"components={n} need>=3 smooth={str(all_smooth).lower()}",
    )
    add("smooth_open_four_components", premise and all_open and all_smooth, n >= 4, f"components={n} need>=4 smooth={str(all_smooth).lower()}")
    add("connected_no_shadow", w and n == 1 and not ringed, not shadow_nonempty, f"shadow_nonempty={str(shadow_nonempty).lower()}")

    # supporting-ray count at random exterior points
    rng = np.random.default_rng(seed)
    support_app = w and n == 1 and all_smooth and modes[PARTIAL] == 0
    counts = {}
    if n == 1 and s.obstacles:
        for p in _exterior_points(s, support_points, rng):
            k = len(supporting_rays(s, p, part))
            counts[k] = counts.get(k, 0) + 1
    count_txt = ";".join(f"{k}rays:{v}" for k, v in sorted(counts.items())) or "none"
    add("two_support_rays", support_app, set(counts) <= {2}, f"counts={count_txt}")

    shadow_pts = _pick(raster.shadow_points(), max_shadow_points - min(len(probes), max_shadow_points // 2))
    shadow_pts += probes[: max_shadow_points - len(shadow_pts)]
    projected = 0
    no_inner = 0
    for p in shadow_pts if premise else []:
        for c in range(n):
            if _projected_at(s, part, c, p):
                projected += 1
        if not inner_supporting_rays(s, p, part):
            no_inner += 1
    projection_app = premise and all_open and (n == 3 or (n == 4 and all_smooth))
    add("none_projected", projection_app, projected == 0, f"points={len(shadow_pts) if premise else 0} projected={projected}")
    add("inner_ray_exists", premise, no_inner == 0, f"points={len(shadow_pts) if premise else 0} without_inner={no_inner}")
    add("open_free_is_weak", all_open and not shadow_nonempty, w, f"weak={str(w).lower()}")
    add("no_ring_holes", w and not ringed, True, f"ringed_components={len(ringed)}")
    return AuditReport(
        n_components=n,
        all_smooth=all_smooth,
        mode_summary=modes,
        weakly_semiconvex_sampled=w,
        semiconvex_sampled=not shadow_nonempty,
        shadow_nonempty=shadow_nonempty,
        shadow_cells=raster.n_shadow,
        shadow_probe_hits=len(probes),
        samples_tested=weak.tested,
        checks=tuple(checks),
    )


def _projected_at(s: Scene, part: ComponentPartition, comp: int, x) -> bool:
    own = component_cover(s, x, part.groups[comp])
    rest = [oid for j, g in enumerate(part.groups) if j != comp for oid in g]
    return own.issubset(component_cover(s, x, rest))
