"""Angular footprints of obstacles and the shadow decision by arc coverage."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geom import TWO_PI, Arc, ArcSet, Point, Ray, angle_of, arcset_covers_circle, arcset_complement, normalize_angle
from .raycast import CLOSED, PARTIAL, Capsule, ConvexPolygon, Disk, Obstacle, Scene, first_hit, ray_hits_obstacle


class InteriorPointError(ValueError):
    """Raised when a query point lies strictly inside an obstacle."""


@dataclass(frozen=True)
class Verdict:
    shadowed: bool
    free_direction: Optional[float]
    cover: ArcSet


def _wrap_rel(theta: float, ref: float) -> float:
    return (theta - ref + math.pi) % TWO_PI - math.pi


def _endpoint_closed(x, theta: float, o: Obstacle, eps: float) -> bool:
    return ray_hits_obstacle(Ray(Point(*x), theta), o, eps).hit


def _hull_arc(x, dirs: list[float], ref: float) -> tuple[float, float]:
    rel = [_wrap_rel(t, ref) for t in dirs]
    lo, hi = min(rel), max(rel)
    return ref + lo, hi - lo


def _exterior_extent(x, s) -> tuple[float, float]:
    if isinstance(s, Disk):
        dx, dy = s.center.x - x[0], s.center.y - x[1]
        d = math.hypot(dx, dy)
        phi = math.atan2(dy, dx)
        half = math.asin(min(1.0, s.radius / d))
        return phi - half, 2.0 * half
    if isinstance(s, ConvexPolygon):
        c = s.centroid()
        ref = math.atan2(c.y - x[1], c.x - x[0])
        return _hull_arc(x, [math.atan2(v.y - x[1], v.x - x[0]) for v in s.vertices], ref)
    mid = ((s.a.x + s.b.x) / 2.0, (s.a.y + s.b.y) / 2.0)
    ref = math.atan2(mid[1] - x[1], mid[0] - x[0])
    dirs = []
    for d in s.parts[:2]:
        start, width = _exterior_extent(x, d)
        dirs += [start, start + width]
    return _hull_arc(x, dirs, ref)


def _boundary_extent(x, s, eps: float) -> tuple[float, float]:
    """Inward directions at a boundary point ``x`` of shape ``s``."""
    if isinstance(s, Disk):
        phi = math.atan2(s.center.y - x[1], s.center.x - x[0])
        return phi - math.pi / 2.0, math.pi
    if isinstance(s, Capsule):
        ax, ay = s.b.x - s.a.x, s.b.y - s.a.y
        l2 = ax * ax + ay * ay
        t = ((x[0] - s.a.x) * ax + (x[1] - s.a.y) * ay) / l2
        t = max(0.0, min(1.0, t))
        qx, qy = s.a.x + t * ax, s.a.y + t * ay
        phi = math.atan2(qy - x[1], qx - x[0])
        return phi - math.pi / 2.0, math.pi
    verts = s.vertices
    n = len(verts)
    for i, v in enumerate(verts):
        if math.hypot(v.x - x[0], v.y - x[1]) <= eps:
            nxt, prv = verts[(i + 1) % n], verts[i - 1]
            start = math.atan2(nxt.y - v.y, nxt.x - v.x)
            end = math.atan2(prv.y - v.y, prv.x - v.x)
            return start, normalize_angle(end - start)
    best_i = min(range(n), key=lambda i: abs(s.normals[i][0] * x[0] + s.normals[i][1] * x[1] - s.normals[i][2]))
    a, b = verts[best_i], verts[(best_i + 1) % n]
    return math.atan2(b.y - a.y, b.x - a.x), math.pi


def hit_arc(x, o: Obstacle, eps_angle: float = 1e-9, eps_space: float = 1e-9) -> Arc:
    """Directions whose open ray from ``x`` meets ``o``.

    Endpoint closure is decided by casting the extreme ray itself, so it
    follows the obstacle's boundary mode at the contact point.
    """
    sd = o.shape.signed_distance(x)
    if sd < -eps_space:
        raise InteriorPointError(f"point {tuple(x)} is inside obstacle {o.id}")
    if sd <= eps_space:
        start, width = _boundary_extent(x, o.shape, eps_space)
    else:
        start, width = _exterior_extent(x, o.shape)
    start = normalize_angle(start)
    end = normalize_angle(start + width)
    sc = _endpoint_closed(x, start, o, eps_space)
    ec = _endpoint_closed(x, end, o, eps_space)
    return Arc(start, width, sc, ec)


def direction_cover(s: Scene, x) -> ArcSet:
    arcs = [hit_arc(x, o, s.eps_angle, s.eps_space) for o in s.obstacles]
    return ArcSet.from_arcs(arcs, s.eps_angle)


def is_semiconvex_at(s: Scene, x) -> Verdict:
    """Decide whether every ray from ``x`` meets the scene.

    A returned free direction has been re-checked by casting the ray.
    """
    x = Point(*x)
    cover = direction_cover(s, x)
    covered, witness = arcset_covers_circle(cover)
    if covered:
        return Verdict(True, None, cover)
    candidates = [witness] + [a.midpoint() for a in arcset_complement(cover).arcs]
    for theta in candidates:
        if not first_hit(Ray(x, theta), s).hit:
            return Verdict(False, theta, cover)
    raise RuntimeError(f"free direction {witness} from {tuple(x)} is blocked by ray casting")


def component_cover(s: Scene, x, ids) -> ArcSet:
    ids = set(ids)
    arcs = [hit_arc(x, o, s.eps_angle, s.eps_space) for o in s.obstacles if o.id in ids]
    return ArcSet.from_arcs(arcs, s.eps_angle)


def is_projected(s: Scene, comp: int, x, partition=None) -> bool:
    """Does every ray from ``x`` that meets component ``comp`` also meet another component?"""
    if partition is None:
        from .analysis import components

        partition = components(s)
    if not 0 <= comp < len(partition.groups):
        raise KeyError(f"unknown component id {comp}")
    own = component_cover(s, x, partition.groups[comp])
    others = [oid for i, g in enumerate(partition.groups) if i != comp for oid in g]
    return own.issubset(component_cover(s, x, others))


# --------------------------------------------------------------------------
# vectorized footprints for many exterior points


def signed_distance_many(shape, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    if isinstance(shape, Disk):
        return np.hypot(px - shape.center.x, py - shape.center.y) - shape.radius
    if isinstance(shape, Capsule):
        return _segment_distance_many(px, py, shape.a, shape.b) - shape.radius
    inside = np.full(px.shape, -np.inf)
    for nx, ny, d in shape.normals:
        inside = np.maximum(inside, nx * px + ny * py - d)
    outside = np.full(px.shape, np.inf)
    for a, b in shape.edges():
        outside = np.minimum(outside, _segment_distance_many(px, py, a, b))
    return np.where(inside <= 0.0, inside, outside)


def _segment_distance_many(px, py, a, b):
    ax, ay = b[0] - a[0], b[1] - a[1]
    l2 = ax * ax + ay * ay
    t = np.clip(((px - a[0]) * ax + (py - a[1]) * ay) / l2, 0.0, 1.0)
    return np.hypot(px - a[0] - t * ax, py - a[1] - t * ay)


def _disk_extent_many(c, r, px, py):
    dx, dy = c[0] - px, c[1] - py
    d = np.hypot(dx, dy)
    phi = np.arctan2(dy, dx)
    half = np.arcsin(np.clip(r / d, 0.0, 1.0))
    return phi - half, 2.0 * half, phi, half, d


def _hull_many(dirs: list[np.ndarray], ref: np.ndarray):
    rel = np.stack([(t - ref + np.pi) % TWO_PI - np.pi for t in dirs])
    lo, hi = rel.min(axis=0), rel.max(axis=0)
    return ref + lo, hi - lo


def footprints_many(o: Obstacle, px: np.ndarray, py: np.ndarray):
    """Exterior footprint arcs ``(start, width, start_closed, end_closed)`` per point."""
    s = o.shape
    closed = np.full(px.shape, o.mode == CLOSED)
    if isinstance(s, Disk):
        start, width, phi, half, d = _disk_extent_many(s.center, s.radius, px, py)
        if o.mode != PARTIAL:
            return np.mod(start, TWO_PI), width, closed, closed
        from .raycast import _arcset_contains_many

        tl = np.sqrt(np.maximum(d * d - s.radius * s.radius, 0.0))
        flags = []
        for ang in (phi - half, phi + half):
            tx, ty = px + tl * np.cos(ang), py + tl * np.sin(ang)
            theta = np.mod(np.arctan2(ty - s.center.y, tx - s.center.x), TWO_PI)
            flags.append(_arcset_contains_many(o.included, theta))
        return np.mod(start, TWO_PI), width, flags[0], flags[1]
    if isinstance(s, ConvexPolygon):
        c = s.centroid()
        ref = np.arctan2(c.y - py, c.x - px)
        dirs = [np.arctan2(v.y - py, v.x - px) for v in s.vertices]
        start, width = _hull_many(dirs, ref)
        return np.mod(start, TWO_PI), width, closed, closed
    mx, my = (s.a.x + s.b.x) / 2.0, (s.a.y + s.b.y) / 2.0
    ref = np.arctan2(my - py, mx - px)
    dirs = []
    for d in s.parts[:2]:
        st, w, *_ = _disk_extent_many(d.center, d.radius, px, py)
        dirs += [st, st + w]
    start, width = _hull_many(dirs, ref)
    return np.mod(start, TWO_PI), width, closed, closed


def _contains_many(S, W, SC, EC, theta, eps):
    d = np.mod(theta - S, TWO_PI)
    at_start = (d <= eps) | (d >= TWO_PI - eps)
    at_end = np.abs(d - W) <= eps
    inner = (d > eps) & (d < W - eps)
    return inner | (at_start & SC) | (at_end & EC & ~at_start) | (at_end & at_start & (SC | EC))


def covered_many(S, W, SC, EC, eps: float) -> np.ndarray:
    """Row-wise test that the arcs in each row cover the whole circle.

    Arrays have shape ``(P, k)``.  The circle is covered iff at every arc end
    the end direction is covered and some arc continues past it.
    """
    P, k = S.shape
    if k == 0:
        return np.zeros(P, dtype=bool)
    E = np.mod(S + W, TWO_PI)
    full = (W >= TWO_PI - eps).any(axis=1)
    ok = np.ones(P, dtype=bool)
    for j in range(k):
        ej = E[:, j : j + 1]
        end_cov = EC[:, j].copy()
        others = np.ones(k, dtype=bool)
        others[j] = False
        if others.any():
            end_cov |= _contains_many(S[:, others], W[:, others], SC[:, others], EC[:, others], ej, eps).any(axis=1)
        d = np.mod(ej - S, TWO_PI)
        d = np.where(d >= TWO_PI - eps, d - TWO_PI, d)
        cont = ((d >= -eps) & (d < W - eps)).any(axis=1)
        ok &= end_cov & cont
    return ok | full


def shadowed_many(s: Scene, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """Vectorized shadow test for exterior points (no boundary handling)."""
    px = np.asarray(px, dtype=float)
    py = np.asarray(py, dtype=float)
    if not s.obstacles:
        return np.zeros(px.shape, dtype=bool)
    cols = [footprints_many(o, px.ravel(), py.ravel()) for o in s.obstacles]
    S = np.stack([c[0] for c in cols], axis=1)
    W = np.stack([c[1] for c in cols], axis=1)
    SC = np.stack([c[2] for c in cols], axis=1)
    EC = np.stack([c[3] for c in cols], axis=1)
    return covered_many(S, W, SC, EC, s.eps_angle).reshape(px.shape)
