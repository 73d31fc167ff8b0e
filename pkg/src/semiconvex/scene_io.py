"""JSON scene files and the built-in named scenes."""

from __future__ import annotations

import json
import math
from importlib import resources
from typing import Any

from .geom import TWO_PI, Arc, ArcSet, Point
from .raycast import CLOSED, MODES, OPEN, PARTIAL, Capsule, ConvexPolygon, Disk, Obstacle, Scene
from .shadow import RingConfig, ring_scene

DEGREE_DIGITS = 10
FLAG_CODES = {"cc": (True, True), "oo": (False, False), "co": (True, False), "oc": (False, True)}
CODE_OF = {v: k for k, v in FLAG_CODES.items()}

_KEYS = {
    "disk": {"kind", "center", "radius", "boundary", "included_arcs"},
    "polygon": {"kind", "vertices", "boundary"},
    "capsule": {"kind", "a", "b", "radius", "boundary"},
}


class SceneFormatError(ValueError):
    """A scene file that cannot be parsed or violates an obstacle invariant."""

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        prefix = f"obstacle {index}: " if index is not None else ""
        super().__init__(prefix + message)


def _point(v, what: str) -> Point:
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(c, (int, float)) for c in v)):
        raise ValueError(f"{what} must be a pair of numbers")
    x, y = float(v[0]), float(v[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"{what} must be finite")
    return Point(x, y)


def _number(v, what: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ValueError(f"{what} must be a finite number")
    return float(v)


def _included(raw, eps: float) -> ArcSet:
    if not isinstance(raw, list) or not raw:
        raise ValueError("partial boundary needs a non-empty included_arcs list")
    arcs = []
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 3 and entry[2] in FLAG_CODES):
            raise ValueError(f"bad included arc {entry!r}; expected [start_deg, end_deg, 'cc'|'oo'|'co'|'oc']")
        start, end = _number(entry[0], "arc start"), _number(entry[1], "arc end")
        sc, ec = FLAG_CODES[entry[2]]
        width = (end - start) % 360.0
        if width == 0.0 and end != start:
            width = 360.0
        arc = Arc(math.radians(start) % TWO_PI, math.radians(width), sc, ec)
        if arc.is_empty:
            raise ValueError(f"included arc {entry!r} is empty")
        arcs.append(arc)
    return ArcSet.from_arcs(arcs, eps)


def _obstacle(raw: Any, index: int, eps_angle: float) -> Obstacle:
    if not isinstance(raw, dict):
        raise SceneFormatError("obstacle must be an object", index)
    kind = raw.get("kind")
    if kind not in _KEYS:
        raise SceneFormatError(f"unknown kind {kind!r}", index)
    extra = set(raw) - _KEYS[kind]
    if extra:
        raise SceneFormatError(f"unknown keys {sorted(extra)}", index)
    mode = raw.get("boundary", CLOSED)
    if mode not in MODES:
        raise SceneFormatError(f"unknown boundary {mode!r}", index)
    try:
        if kind == "disk":
            shape = Disk(_point(raw.get("center"), "center"), _number(raw.get("radius"), "radius"))
        elif kind == "polygon":
            verts = raw.get("vertices")
            if not isinstance(verts, list):
                raise ValueError("vertices must be a list")
            shape = ConvexPolygon(tuple(_point(v, "vertex") for v in verts))
        else:
            shape = Capsule(_point(raw.get("a"), "a"), _point(raw.get("b"), "b"), _number(raw.get("radius"), "radius"))
        included = None
        if mode == PARTIAL:
            included = _included(raw.get("included_arcs"), eps_angle)
        elif "included_arcs" in raw:
            raise ValueError("included_arcs is only allowed with boundary 'partial'")
        return Obstacle(shape, mode, included, index)
    except (ValueError, TypeError) as exc:
        raise SceneFormatError(str(exc), index) from None


def parse_scene(text: str) -> Scene:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneFormatError(f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise SceneFormatError("top level must be an object")
    extra = set(data) - {"eps_angle", "eps_space", "obstacles"}
    if extra:
        raise SceneFormatError(f"unknown keys {sorted(extra)}")
    try:
        eps_angle = _number(data.get("eps_angle", 1e-9), "eps_angle")
        eps_space = _number(data.get("eps_space", 1e-9), "eps_space")
    except ValueError as exc:
        raise SceneFormatError(str(exc)) from None
    if eps_angle <= 0.0 or eps_space <= 0.0:
        raise SceneFormatError("tolerances must be positive")
    raw = data.get("obstacles", [])
    if not isinstance(raw, list):
        raise SceneFormatError("obstacles must be a list")
    obstacles = [_obstacle(o, i, eps_angle) for i, o in enumerate(raw)]
    return Scene(tuple(obstacles), eps_angle, eps_space)


def _deg(theta: float) -> float:
    d = round(math.degrees(theta), DEGREE_DIGITS)
    return 0.0 if d == 360.0 else d + 0.0


def _arc_entry(a: Arc) -> list:
    if a.is_full:
        return [0.0, 360.0, "cc"]
    start = _deg(a.start)
    end = round(start + math.degrees(a.width), DEGREE_DIGITS)
    if end >= 360.0:
        end = round(end - 360.0, DEGREE_DIGITS)
    return [start, end, CODE_OF[(a.start_closed, a.end_closed)]]


def _xy(p) -> list:
    return [float(p[0]), float(p[1])]


def obstacle_to_dict(o: Obstacle) -> dict:
    s = o.shape
    if isinstance(s, Disk):
        d = {"kind": "disk", "center": _xy(s.center), "radius": float(s.radius), "boundary": o.mode}
        if o.mode == PARTIAL:
            d["included_arcs"] = [_arc_entry(a) for a in o.included.arcs]
        return d
    if isinstance(s, ConvexPolygon):
        return {"kind": "polygon", "vertices": [_xy(v) for v in s.vertices], "boundary": o.mode}
    return {"kind": "capsule", "a": _xy(s.a), "b": _xy(s.b), "radius": float(s.radius), "boundary": o.mode}


def serialize_scene(s: Scene) -> str:
    """Canonical text: one obstacle per line, so files diff cleanly."""
    rows = [json.dumps(obstacle_to_dict(o)) for o in s.obstacles]
    body = ",\n    ".join(rows)
    obstacles = f"[\n    {body}\n  ]" if rows else "[]"
    return (
        "{\n"
        f'  "eps_angle": {json.dumps(s.eps_angle)},\n'
        f'  "eps_space": {json.dumps(s.eps_space)},\n'
        f'  "obstacles": {obstacles}\n'
        "}\n"
    )


def load_scene(path: str) -> Scene:
    """Read a scene file, or build a named scene from ``fixture:name[:args]``."""
    if path.startswith("fixture:"):
        return fixture_from_uri(path[len("fixture:") :])
    with open(path, encoding="utf-8") as fh:
        return parse_scene(fh.read())


# --------------------------------------------------------------------------
# named scenes


def _rect(x0, x1, y0, y1, mode) -> Obstacle:
    return Obstacle(ConvexPolygon((Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1))), mode)


def _poly(pts, mode) -> Obstacle:
    return Obstacle(ConvexPolygon(tuple(Point(*p) for p in pts)), mode)


def _reflect(o: Obstacle) -> Obstacle:
    """Point reflection through the origin."""
    s = o.shape
    if isinstance(s, Disk):
        inc = o.included.rotated(math.pi) if o.included is not None else None
        return Obstacle(Disk(Point(-s.center.x, -s.center.y), s.radius), o.mode, inc)
    return Obstacle(s.transformed(lambda p: (Point(-p[0], -p[1]),)), o.mode)


def pinwheel_rects(mode: str = OPEN) -> Scene:
    return Scene.of(
        [
            _rect(-0.9, 3.0, 1.0, 1.2, mode),
            _rect(-1.2, -1.0, -0.9, 3.0, mode),
            _rect(-3.0, 0.9, -1.2, -1.0, mode),
            _rect(1.0, 1.2, -3.0, 0.9, mode),
        ]
    )


def pinwheel_capsules(mode: str = OPEN) -> Scene:
    a, b = (-0.8, 1.1), (2.9, 1.1)
    out = []
    for k in range(4):
        c, s = [(1, 0), (0, 1), (-1, 0), (0, -1)][k]
        rot = lambda p: Point(c * p[0] - s * p[1], s * p[0] + c * p[1])  # noqa: E731
        out.append(Obstacle(Capsule(rot(a), rot(b), 0.1), mode))
    return Scene.of(out)


def compass_disks(mode: str = CLOSED) -> Scene:
    r = math.sqrt(2.0)
    centers = [(2.0, 0.0), (0.0, 2.0), (-2.0, 0.0), (0.0, -2.0)]
    return Scene.of([Obstacle(Disk(Point(*c), r), mode) for c in centers])


def hook_pair(mode: str = CLOSED) -> Scene:
    """Two interlocking arches whose spike tips lie on one common line.

    The upper arch stands on tips at (-1, 0) and (2, 0); the lower one is its
    reflection through the origin.  The shadow is the open segment between
    the inner tips (-1, 0) and (1, 0).
    """
    upper = [
        _poly([(-1.0, 0.0), (-0.9, 1.2), (-1.1, 1.2)], mode),
        _rect(-1.1, 2.1, 1.0, 1.2, mode),
        _poly([(2.0, 0.0), (2.1, 1.2), (1.9, 1.2)], mode),
    ]
    return Scene.of(upper + [_reflect(o) for o in upper])


def hook_pair_partial() -> Scene:
    """Open arches on round feet; of all boundary points only the two inner tips belong to the set."""
    tip = ArcSet.from_arcs([Arc.point(1.5 * math.pi)])
    upper = [
        Obstacle(Disk(Point(-1.0, 0.1), 0.1), PARTIAL, tip),
        _rect(-1.1, -0.9, 0.1, 1.2, OPEN),
        _rect(-1.1, 2.1, 1.0, 1.2, OPEN),
        _rect(1.9, 2.1, 0.1, 1.2, OPEN),
        Obstacle(Disk(Point(2.0, 0.1), 0.1), OPEN),
    ]
    return Scene.of(upper + [_reflect(o) for o in upper])


def symmetric_ring(k: int, radius: float | None = None, mode: str = CLOSED) -> Scene:
    if k < 1:
        raise ValueError("ring needs k >= 1")
    if radius is None:
        radius = 0.9 if k <= 2 else 0.9 * math.sin(math.pi / k)
    return ring_scene(RingConfig(tuple(TWO_PI * i / k for i in range(k)), (radius,) * k, mode))


def ring_certificate() -> dict:
    """The pinned minimal blocking ring found by the solver, with its search settings."""
    text = resources.files("semiconvex").joinpath("data/ring_certificate.json").read_text(encoding="utf-8")
    return json.loads(text)


def certificate_config(mode: str | None = None) -> RingConfig:
    cert = ring_certificate()
    return RingConfig(
        tuple(math.radians(a) for a in cert["angles_deg"]), tuple(cert["radii"]), mode or cert["mode"]
    )


FIXTURES = ("pinwheel_rects", "pinwheel_capsules", "compass_disks", "hook_pair", "hook_pair_partial", "ring", "ring_certificate")


def fixture(name: str, mode: str | None = None, *args) -> Scene:
    if name == "pinwheel_rects":
        return pinwheel_rects(mode or OPEN)
    if name == "pinwheel_capsules":
        return pinwheel_capsules(mode or OPEN)
    if name == "compass_disks":
        return compass_disks(mode or CLOSED)
    if name == "hook_pair":
        return hook_pair(mode or CLOSED)
    if name == "hook_pair_partial":
        return hook_pair_partial()
    if name == "ring":
        if not args:
            raise ValueError("ring needs k, as ring:k[:radius]")
        k = int(args[0])
        r = float(args[1]) if len(args) > 1 else None
        return symmetric_ring(k, r, mode or CLOSED)
    if name == "ring_certificate":
        return ring_scene(certificate_config(mode))
    raise ValueError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")


def fixture_from_uri(spec: str) -> Scene:
    """``name``, ``name:mode`` or ``ring:k[:radius][:mode]``."""
    parts = spec.split(":")
    name, rest = parts[0], parts[1:]
    mode = None
    if rest and rest[-1] in MODES:
        mode = rest.pop()
    try:
        return fixture(name, mode, *rest)
    except ValueError as exc:
        raise SceneFormatError(str(exc)) from None
