import math

import numpy as np
import pytest

import scenes as gen
from semiconvex.coverage import signed_distance_many
from semiconvex.geom import Arc, ArcSet, Point, Ray
from semiconvex.raycast import (
    CLOSED,
    OPEN,
    PARTIAL,
    Capsule,
    ConvexPolygon,
    Disk,
    Obstacle,
    Scene,
    first_hit,
    oracle_shadowed,
    ray_hits_obstacle,
    validate_convex,
)
from semiconvex.scene_io import compass_disks, pinwheel_rects

SQ2 = math.sqrt(2.0)


def _moved(o: Obstacle, phi: float, dx: float, dy: float, scale: float = 1.0) -> Obstacle:
    c, s = math.cos(phi), math.sin(phi)

    def f(p):
        return (Point(scale * (c * p[0] - s * p[1]) + dx, scale * (s * p[0] + c * p[1]) + dy),)

    sh = o.shape
    if isinstance(sh, Disk):
        inc = o.included.rotated(phi) if o.included is not None else None
        return Obstacle(Disk(f(sh.center)[0], scale * sh.radius), o.mode, inc, o.id)
    if isinstance(sh, Capsule):
        return Obstacle(Capsule(f(sh.a)[0], f(sh.b)[0], scale * sh.radius), o.mode, None, o.id)
    return Obstacle(ConvexPolygon(tuple(f(v)[0] for v in sh.vertices)), o.mode, None, o.id)


def _moved_point(p, phi, dx, dy, scale=1.0):
    c, s = math.cos(phi), math.sin(phi)
    return Point(scale * (c * p[0] - s * p[1]) + dx, scale * (s * p[0] + c * p[1]) + dy)


class TestDiskTangency:
    ray = Ray(Point(0.0, 0.0), math.pi / 4)
    disk = Disk(Point(2.0, 0.0), SQ2)

    def test_closed_disk_is_touched(self):
        h = ray_hits_obstacle(self.ray, Obstacle(self.disk, CLOSED))
        assert h.hit
        assert h.point.x == pytest.approx(1.0, abs=1e-9)
        assert h.point.y == pytest.approx(1.0, abs=1e-9)

    def test_open_disk_is_missed(self):
        assert not ray_hits_obstacle(self.ray, Obstacle(self.disk, OPEN)).hit

    def test_partial_disk_follows_included_angle(self):
        # contact point (1, 1) sits at 135 degrees around the centre
        inc = ArcSet.from_arcs([Arc.point(0.75 * math.pi)])
        assert ray_hits_obstacle(self.ray, Obstacle(self.disk, PARTIAL, inc)).hit
        other = ArcSet.from_arcs([Arc.point(0.5 * math.pi)])
        assert not ray_hits_obstacle(self.ray, Obstacle(self.disk, PARTIAL, other)).hit

    def test_origin_on_boundary_is_excluded(self):
        h = ray_hits_obstacle(Ray(Point(1.0, 1.0), 0.0), Obstacle(self.disk, CLOSED))
        assert h.hit and h.t_first > 0.0


def test_first_hit_empty_and_nearest():
    r = Ray(Point(0.0, 0.0), 0.0)
    assert not first_hit(r, Scene()).hit
    s = Scene.of([Obstacle(Disk(Point(5.0, 0.0), 1.0), CLOSED), Obstacle(Disk(Point(2.0, 0.0), 0.5), CLOSED)])
    h = first_hit(r, s)
    assert h.obstacle_id == 1
    assert h.t_first == pytest.approx(1.5)


def test_pinwheel_ray_up_hits_top_arm():
    # straight up from the origin crosses the top arm [-0.9, 3] x [1, 1.2] at y = 1
    h = first_hit(Ray(Point(0.0, 0.0), math.pi / 2), pinwheel_rects())
    assert h.obstacle_id == 0
    assert h.t_first == pytest.approx(1.0)


def test_grazing_polygon_edge_follows_mode():
    sq = ConvexPolygon((Point(1, 0), Point(2, 0), Point(2, 1), Point(1, 1)))
    r = Ray(Point(0.0, 0.0), 0.0)
    assert ray_hits_obstacle(r, Obstacle(sq, CLOSED)).hit
    assert not ray_hits_obstacle(r, Obstacle(sq, OPEN)).hit


def test_capsule_edge_graze():
    cap = Capsule(Point(1, 1), Point(3, 1), 1.0)
    r = Ray(Point(0.0, 0.0), 0.0)
    assert ray_hits_obstacle(r, Obstacle(cap, CLOSED)).hit
    assert not ray_hits_obstacle(r, Obstacle(cap, OPEN)).hit


def test_invalid_shapes_rejected():
    with pytest.raises(ValueError):
        validate_convex([Point(0, 0), Point(1, 0), Point(2, 0)])
    with pytest.raises(ValueError):
        Capsule(Point(1, 1), Point(1, 1), 0.5)
    with pytest.raises(ValueError):
        Obstacle(ConvexPolygon((Point(0, 0), Point(1, 0), Point(0, 1))), PARTIAL, ArcSet.full())


def test_oracle_examples():
    one = Scene.of([Obstacle(Disk(Point(0, 0), 1.0), CLOSED)])
    assert not oracle_shadowed(one, (3.0, 0.5), 1024)
    assert oracle_shadowed(compass_disks(CLOSED), (0, 0))
    assert not oracle_shadowed(compass_disks(OPEN), (0, 0))
    with pytest.raises(ValueError):
        oracle_shadowed(one, (0.5, 0.0))


def _random_ray_and_obstacle(rng):
    o = gen.random_obstacle(rng, *rng.uniform(-2, 2, 2), rng.uniform(0.3, 1.5))
    p = Point(*rng.uniform(-5, 5, 2))
    x0, y0, x1, y1 = o.shape.bounds()
    aim = math.atan2((y0 + y1) / 2 - p.y, (x0 + x1) / 2 - p.x)
    return Ray(p, aim + rng.normal(0.0, 0.4)), o


def test_rigid_motion_and_scaling_invariance():
    rng = np.random.default_rng(4)
    checked = 0
    for _ in range(400):
        ray, o = _random_ray_and_obstacle(rng)
        if o.shape.signed_distance(ray.origin) <= 1e-6:
            continue  # contacts at the origin are clamped, not scaled
        h = ray_hits_obstacle(ray, o)
        phi, dx, dy, lam = rng.uniform(0, 6.28), *rng.uniform(-3, 3, 2), rng.uniform(0.3, 3.0)
        moved = ray_hits_obstacle(Ray(_moved_point(ray.origin, phi, dx, dy, lam), ray.direction + phi), _moved(o, phi, dx, dy, lam))
        assert moved.hit == h.hit
        if h.hit:
            checked += 1
            assert moved.t_first == pytest.approx(lam * h.t_first, rel=1e-9, abs=1e-9)
    assert checked > 50


def test_open_hit_implies_closed_hit():
    rng = np.random.default_rng(5)
    for _ in range(500):
        ray, o = _random_ray_and_obstacle(rng)
        if o.mode == PARTIAL:
            continue
        if ray_hits_obstacle(ray, o.with_mode(OPEN)).hit:
            assert ray_hits_obstacle(ray, o.with_mode(CLOSED)).hit


def test_first_hit_matches_dense_scan():
    rng = np.random.default_rng(6)
    for _ in range(60):
        s = gen.ring_scene(rng, int(rng.integers(1, 5)))
        x0, y0, x1, y1 = s.bbox
        diag = math.hypot(x1 - x0, y1 - y0)
        step = 1e-4 * diag
        origin = Point(*gen.exterior_points(rng, s, 1)[0])
        theta = rng.uniform(0, 2 * math.pi)
        h = first_hit(Ray(origin, theta), s)
        ts = np.arange(1, int(3 * diag / step)) * step
        px, py = origin.x + ts * math.cos(theta), origin.y + ts * math.sin(theta)
        inside = np.zeros(ts.shape, dtype=bool)
        for o in s.obstacles:
            inside |= signed_distance_many(o.shape, px, py) < -1e-12
        if inside.any():
            assert h.hit
            assert h.t_first == pytest.approx(ts[np.argmax(inside)], abs=2 * step)
        elif h.hit:
            # only a boundary graze can escape the scan
            hit_o = s.by_id(h.obstacle_id)
            assert abs(hit_o.shape.signed_distance(h.point)) <= 1e-6
