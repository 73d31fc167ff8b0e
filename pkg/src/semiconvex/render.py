"""SVG and matplotlib drawings of scenes with shadow, hull, ray and witness overlays."""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence

import numpy as np

from .analysis import SHADOW, ShadowRaster
from .geom import TWO_PI, Ray
from .hull import ADDED, HullRaster
from .raycast import OPEN, PARTIAL, Capsule, ConvexPolygon, Disk, Obstacle, Scene

OBSTACLE_FILL = "#9db4c0"
SHADOW_FILL = "#c0392b"
HULL_FILL = "#f4d03f"
RAY_COLOR = "#1f4e79"
INNER_RAY_COLOR = "#117a65"
WITNESS_COLOR = "#7d3c98"


def _f(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _runs(mask: np.ndarray):
    """Horizontal runs of true cells as ``(row, col_start, length)``."""
    for r in range(mask.shape[0]):
        row = mask[r]
        c = 0
        n = row.shape[0]
        while c < n:
            if row[c]:
                start = c
                while c < n and row[c]:
                    c += 1
                yield r, start, c - start
            else:
                c += 1


def _view(s: Scene, rasters) -> tuple:
    boxes = [s.bbox] if s.obstacles else []
    boxes += [r.bbox for r in rasters if r is not None]
    if not boxes:
        return (-1.0, -1.0, 1.0, 1.0)
    return (
        min(b[0] for b in boxes),
        min(b[1] for b in boxes),
        max(b[2] for b in boxes),
        max(b[3] for b in boxes),
    )


def _stroke(mode: str, width: float) -> str:
    dash = f' stroke-dasharray="{_f(4 * width)} {_f(3 * width)}"' if mode == OPEN else ""
    return f'stroke="#22313f" stroke-width="{_f(width)}"{dash}'


def _capsule_path(c: Capsule) -> str:
    a, b, r = c.a, c.b, c.radius
    ex, ey = b.x - a.x, b.y - a.y
    length = math.hypot(ex, ey)
    nx, ny = -ey / length * r, ex / length * r
    return (
        f"M {_f(a.x + nx)} {_f(a.y + ny)} L {_f(b.x + nx)} {_f(b.y + ny)} "
        f"A {_f(r)} {_f(r)} 0 0 0 {_f(b.x - nx)} {_f(b.y - ny)} "
        f"L {_f(a.x - nx)} {_f(a.y - ny)} A {_f(r)} {_f(r)} 0 0 0 {_f(a.x + nx)} {_f(a.y + ny)} Z"
    )


def _arc_path(cx, cy, r, start, width) -> str:
    if width <= 0.0:
        x, y = cx + r * math.cos(start), cy + r * math.sin(start)
        return f"M {_f(x)} {_f(y)} l 0 0"
    end = start + width
    x0, y0 = cx + r * math.cos(start), cy + r * math.sin(start)
    x1, y1 = cx + r * math.cos(end), cy + r * math.sin(end)
    large = 1 if width > math.pi else 0
    return f"M {_f(x0)} {_f(y0)} A {_f(r)} {_f(r)} 0 {large} 1 {_f(x1)} {_f(y1)}"


def _obstacle_svg(o: Obstacle, width: float) -> list[str]:
    s = o.shape
    fill = f'fill="{OBSTACLE_FILL}" fill-opacity="0.6"'
    if isinstance(s, Disk):
        mode = OPEN if o.mode == PARTIAL else o.mode
        out = [
            f'<circle id="o{o.id}" cx="{_f(s.center.x)}" cy="{_f(s.center.y)}" r="{_f(s.radius)}" {fill} {_stroke(mode, width)}/>'
        ]
        if o.mode == PARTIAL:
            for a in o.included.arcs:
                w = min(a.width, TWO_PI - 1e-6)
                out.append(
                    f'<path d="{_arc_path(s.center.x, s.center.y, s.radius, a.start, w)}" fill="none" '
                    f'stroke="#22313f" stroke-width="{_f(3 * width)}" stroke-linecap="round"/>'
                )
        return out
    if isinstance(s, ConvexPolygon):
        pts = " ".join(f"{_f(v.x)},{_f(v.y)}" for v in s.vertices)
        return [f'<polygon id="o{o.id}" points="{pts}" {fill} {_stroke(o.mode, width)}/>']
    return [f'<path id="o{o.id}" d="{_capsule_path(s)}" {fill} {_stroke(o.mode, width)}/>']


def _cells_svg(mask: np.ndarray, bbox, res: float, color: str, opacity: float, gid: str) -> list[str]:
    out = [f'<g id="{gid}" fill="{color}" fill-opacity="{_f(opacity)}" stroke="none">']
    x0, y0 = bbox[0], bbox[1]
    for r, c, n in _runs(mask):
        out.append(
            f'<rect x="{_f(x0 + c * res)}" y="{_f(y0 + r * res)}" width="{_f(n * res)}" height="{_f(res)}"/>'
        )
    out.append("</g>")
    return out


def render_svg(
    s: Scene,
    shadow: Optional[ShadowRaster] = None,
    rays: Sequence = (),
    hull: Optional[HullRaster] = None,
    witnesses: Iterable[tuple] = (),
    size: int = 600,
) -> str:
    """Deterministic SVG text; world y points up.

    ``rays`` holds ``Ray`` or support-ray objects (anything with ``.ray`` and
    ``.inner``); ``witnesses`` holds ``(point, direction)`` pairs.
    """
    x0, y0, x1, y1 = _view(s, (shadow, hull))
    w, h = x1 - x0, y1 - y0
    scale = size / max(w, h)
    lw = 1.5 / scale
    ray_len = math.hypot(w, h)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w * scale)}" height="{_f(h * scale)}" '
        f'viewBox="{_f(x0)} {_f(-y1)} {_f(w)} {_f(h)}">',
        "<defs>",
        f'<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto">'
        '<path d="M 0 0 L 10 5 L 0 10 z" fill="context-stroke"/></marker>',
        "</defs>",
        f'<rect x="{_f(x0)}" y="{_f(-y1)}" width="{_f(w)}" height="{_f(h)}" fill="white"/>',
        '<g transform="scale(1,-1)">',
        f'<g id="axes" stroke="#b0b0b0" stroke-width="{_f(lw / 2)}">',
        f'<line x1="{_f(x0)}" y1="0" x2="{_f(x1)}" y2="0"/>',
        f'<line x1="0" y1="{_f(y0)}" x2="0" y2="{_f(y1)}"/>',
        "</g>",
    ]
    if hull is not None:
        lines += _cells_svg(hull.cells == ADDED, hull.bbox, hull.resolution, HULL_FILL, 0.7, "hull")
    if shadow is not None:
        lines += _cells_svg(shadow.cells == SHADOW, shadow.bbox, shadow.resolution, SHADOW_FILL, 0.7, "shadow")
    lines.append('<g id="obstacles">')
    for o in s.obstacles:
        lines += _obstacle_svg(o, lw)
    lines.append("</g>")
    lines.append(f'<g id="rays" stroke-width="{_f(lw)}" fill="none">')
    for item in rays:
        ray = item if isinstance(item, Ray) else item.ray
        color = INNER_RAY_COLOR if getattr(item, "inner", False) else RAY_COLOR
        end = ray.at(ray_len)
        lines.append(
            f'<line x1="{_f(ray.origin[0])}" y1="{_f(ray.origin[1])}" x2="{_f(end.x)}" y2="{_f(end.y)}" '
            f'stroke="{color}" marker-end="url(#arrow)"/>'
        )
    lines.append("</g>")
    lines.append(f'<g id="witnesses" stroke="{WITNESS_COLOR}" stroke-width="{_f(lw)}" fill="{WITNESS_COLOR}">')
    for p, theta in witnesses:
        end = Ray(p, theta).at(ray_len)
        lines.append(f'<circle cx="{_f(p[0])}" cy="{_f(p[1])}" r="{_f(2 * lw)}"/>')
        lines.append(
            f'<line x1="{_f(p[0])}" y1="{_f(p[1])}" x2="{_f(end.x)}" y2="{_f(end.y)}" '
            'stroke-dasharray="0.05 0.03" marker-end="url(#arrow)"/>'
        )
    lines.append("</g>")
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# matplotlib


def _patch(o: Obstacle):
    from matplotlib import patches
    from matplotlib.path import Path

    style = dict(facecolor=OBSTACLE_FILL, alpha=0.6, edgecolor="#22313f", linewidth=1.0)
    style["linestyle"] = "--" if o.mode in (OPEN, PARTIAL) else "-"
    s = o.shape
    if isinstance(s, Disk):
        return patches.Circle(tuple(s.center), s.radius, **style)
    if isinstance(s, ConvexPolygon):
        return patches.Polygon([tuple(v) for v in s.vertices], closed=True, **style)
    a, b, r = s.a, s.b, s.radius
    phi = math.atan2(b.y - a.y, b.x - a.x)
    ts = np.linspace(-math.pi / 2, math.pi / 2, 24)
    pts = [(b.x + r * math.cos(phi + t), b.y + r * math.sin(phi + t)) for t in ts]
    pts += [(a.x + r * math.cos(phi + math.pi + t), a.y + r * math.sin(phi + math.pi + t)) for t in ts]
    return patches.PathPatch(Path(pts + [pts[0]], closed=True), **style)


def render_figure(
    s: Scene,
    path: str,
    shadow: Optional[ShadowRaster] = None,
    rays: Sequence = (),
    hull: Optional[HullRaster] = None,
    witnesses: Iterable[tuple] = (),
    title: str = "",
) -> None:
    """Write a PNG/PDF/SVG figure with matplotlib (format from the file suffix)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.colors import ListedColormap

    x0, y0, x1, y1 = _view(s, (shadow, hull))
    fig, ax = plt.subplots(figsize=(6, 6))
    extent_of = lambda r: (r.bbox[0], r.bbox[0] + r.cells.shape[1] * r.resolution, r.bbox[1], r.bbox[1] + r.cells.shape[0] * r.resolution)  # noqa: E731
    if hull is not None:
        ax.imshow(np.ma.masked_where(hull.cells != ADDED, hull.cells), origin="lower", extent=extent_of(hull),
                  cmap=ListedColormap([HULL_FILL]), alpha=0.7, interpolation="nearest")
    if shadow is not None:
        ax.imshow(np.ma.masked_where(shadow.cells != SHADOW, shadow.cells), origin="lower", extent=extent_of(shadow),
                  cmap=ListedColormap([SHADOW_FILL]), alpha=0.7, interpolation="nearest")
    for o in s.obstacles:
        ax.add_patch(_patch(o))
        if o.mode == PARTIAL:
            c, r = o.shape.center, o.shape.radius
            for a in o.included.arcs:
                ts = np.linspace(a.start, a.start + a.width, max(2, int(a.width * 40)))
                marker = "o" if a.width == 0.0 else None
                ax.plot(c.x + r * np.cos(ts), c.y + r * np.sin(ts), color="#22313f", linewidth=3, marker=marker, markersize=4)
    reach = math.hypot(x1 - x0, y1 - y0)
    for item in rays:
        ray = item if isinstance(item, Ray) else item.ray
        color = INNER_RAY_COLOR if getattr(item, "inner", False) else RAY_COLOR
        end = ray.at(reach)
        ax.annotate("", xy=tuple(end), xytext=tuple(ray.origin), arrowprops=dict(arrowstyle="->", color=color))
    for p, theta in witnesses:
        end = Ray(p, theta).at(reach)
        ax.plot([p[0]], [p[1]], "o", color=WITNESS_COLOR)
        ax.annotate("", xy=tuple(end), xytext=tuple(p), arrowprops=dict(arrowstyle="->", color=WITNESS_COLOR, linestyle="--"))
    ax.axhline(0.0, color="#b0b0b0", linewidth=0.5)
    ax.axvline(0.0, color="#b0b0b0", linewidth=0.5)
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)

