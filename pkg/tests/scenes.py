"""Random scene generators shared by the property tests."""

from __future__ import annotations

import math

import numpy as np

from semiconvex.geom import Arc, ArcSet, Point
from semiconvex.raycast import CLOSED, OPEN, PARTIAL, Capsule, ConvexPolygon, Disk, Obstacle, Scene

KINDS = ("disk", "polygon", "capsule")


def random_polygon(rng: np.random.Generator, cx: float, cy: float, size: float) -> ConvexPolygon:
    n = int(rng.integers(3, 7))
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
        gaps = np.diff(np.append(angles, angles[0] + 2.0 * math.pi))
        if gaps.min() > 0.2 and gaps.max() < math.pi - 0.1:
            break
    return ConvexPolygon(tuple(Point(cx + size * math.cos(a), cy + size * math.sin(a)) for a in angles))


def random_included(rng: np.random.Generator) -> ArcSet:
    arcs = []
    for _ in range(int(rng.integers(1, 3))):
        if rng.random() < 0.3:
            arcs.append(Arc.point(float(rng.uniform(0, 2 * math.pi))))
        else:
            arcs.append(Arc(float(rng.uniform(0, 2 * math.pi)), float(rng.uniform(0.1, 3.0)), bool(rng.random() < 0.5), bool(rng.random() < 0.5)))
    return ArcSet.from_arcs(arcs)


def random_obstacle(rng, cx, cy, size, kind=None, mode=None) -> Obstacle:
    kind = kind or KINDS[int(rng.integers(0, 3))]
    if mode is None:
        mode = (OPEN, CLOSED, PARTIAL)[int(rng.integers(0, 3))] if kind == "disk" else (OPEN, CLOSED)[int(rng.integers(0, 2))]
    if kind == "disk":
        inc = random_included(rng) if mode == PARTIAL else None
        return Obstacle(Disk(Point(cx, cy), size), mode, inc)
    if kind == "polygon":
        return Obstacle(random_polygon(rng, cx, cy, size), mode)
    phi = rng.uniform(0, 2 * math.pi)
    half = size * rng.uniform(0.5, 1.5)
    r = size * rng.uniform(0.2, 0.6)
    a = Point(cx - half * math.cos(phi), cy - half * math.sin(phi))
    b = Point(cx + half * math.cos(phi), cy + half * math.sin(phi))
    return Obstacle(Capsule(a, b, r), mode)


def ring_scene(rng: np.random.Generator, n: int, kinds=KINDS, mode=None, grow=(0.7, 1.3)) -> Scene:
    """Obstacles spread around a circle so the middle is often blocked."""
    radius = rng.uniform(1.5, 3.0)
    base = rng.uniform(0, 2 * math.pi)
    obs = []
    for i in range(n):
        a = base + 2 * math.pi * i / n + rng.normal(0, 0.3)
        size = radius * (math.sin(math.pi / n) if n > 1 else 0.5) * rng.uniform(*grow)
        kind = kinds[int(rng.integers(0, len(kinds)))]
        obs.append(random_obstacle(rng, radius * math.cos(a), radius * math.sin(a), size, kind, mode))
    return Scene.of(obs)


def exterior_points(rng: np.random.Generator, s: Scene, n: int, near: float = 0.5) -> list[Point]:
    """Points outside every closure; a share ``near`` of them near the origin."""
    x0, y0, x1, y1 = s.bbox
    out = []
    while len(out) < n:
        if rng.random() < near:
            p = Point(float(rng.normal(0, 0.6)), float(rng.normal(0, 0.6)))
        else:
            p = Point(float(rng.uniform(x0, x1)), float(rng.uniform(y0, y1)))
        if s.in_closure(p) is None and min(abs(o.shape.signed_distance(p)) for o in s.obstacles) > 1e-6:
            out.append(p)
    return out
