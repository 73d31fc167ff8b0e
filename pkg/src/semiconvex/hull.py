"""Grid fixpoint approximation of the 1-semiconvex hull."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import ndimage

from .analysis import EIGHT, grid_centers, inside_mask
from .coverage import _contains_many, footprints_many, hit_arc, shadowed_many
from .geom import TWO_PI, Arc, ArcSet, arcset_covers_circle
from .raycast import Scene

OUT, ADDED, SOURCE = 0, 1, 2


@dataclass(frozen=True)
class HullRaster:
    bbox: tuple
    resolution: float
    cells: np.ndarray = field(repr=False)  # OUT / ADDED / SOURCE, rows are y
    iterations: int
    converged: bool
    last_delta: int
    added_per_iteration: tuple

    @property
    def in_hull(self) -> np.ndarray:
        return self.cells != OUT

    @property
    def n_added(self) -> int:
        return int((self.cells == ADDED).sum())

    def to_pgm(self) -> str:
        """Plain graymap: source cells black, added cells grey, outside white."""
        shade = {SOURCE: 0, ADDED: 128, OUT: 255}
        rows = self.cells[::-1]
        h, w = rows.shape
        lines = ["P2", f"# bbox {' '.join(f'{v:.6g}' for v in self.bbox)} resolution {self.resolution:.6g}", f"{w} {h}", "255"]
        for row in rows:
            lines.append(" ".join(str(shade[int(v)]) for v in row))
        return "\n".join(lines) + "\n"


def _square_arcs(cx: np.ndarray, cy: np.ndarray, half: float, px: float, py: float):
    """Footprints of closed axis-aligned squares seen from an exterior point."""
    ref = np.arctan2(cy - py, cx - px)
    rel = []
    for sx in (-half, half):
        for sy in (-half, half):
            t = np.arctan2(cy + sy - py, cx + sx - px)
            rel.append((t - ref + np.pi) % TWO_PI - np.pi)
    rel = np.stack(rel)
    lo, hi = rel.min(axis=0), rel.max(axis=0)
    return np.mod(ref + lo, TWO_PI), hi - lo


def _gap_midpoints(S, W, SC, EC, eps):
    """One direction per arc end, halfway to the next arc start; also whether it is free."""
    P, k = S.shape
    E = np.mod(S + W, TWO_PI)
    mids, free = [], []
    for j in range(k):
        d = np.mod(S - E[:, j : j + 1], TWO_PI)
        d = np.where(d <= eps, TWO_PI, d)
        step = d.min(axis=1)
        m = np.mod(E[:, j] + 0.5 * step, TWO_PI)
        inside = _contains_many(S, W, SC, EC, m[:, None], eps).any(axis=1)
        mids.append(m)
        free.append(~inside)
    return np.stack(mids, axis=1), np.stack(free, axis=1)


def _ray_hits_box(px, py, theta, box) -> np.ndarray:
    x0, y0, x1, y1 = box
    ux, uy = np.cos(theta), np.sin(theta)
    lo = np.zeros(px.shape)
    hi = np.full(px.shape, np.inf)
    ok = np.ones(px.shape, dtype=bool)
    for o, u, a, b in ((px, ux, x0, x1), (py, uy, y0, y1)):
        par = np.abs(u) < 1e-15
        ok &= ~(par & ((o < a) | (o > b)))
        with np.errstate(divide="ignore", invalid="ignore"):
            t1 = (a - o) / np.where(par, 1.0, u)
            t2 = (b - o) / np.where(par, 1.0, u)
        lo = np.where(par, lo, np.maximum(lo, np.minimum(t1, t2)))
        hi = np.where(par, hi, np.minimum(hi, np.maximum(t1, t2)))
    return ok & (lo <= hi)


def _boundary_cells(added: np.ndarray, hull: np.ndarray) -> np.ndarray:
    """Added cells that touch a non-hull cell; rays enter the added region through them."""
    outside = ~hull
    near = ndimage.binary_dilation(outside, structure=EIGHT)
    return added & near


def semiconvex_hull_grid(
    s: Scene, resolution: float, max_iter: int = 10, initial: Optional[np.ndarray] = None, bbox=None
) -> HullRaster:
    """Grow the rasterized scene until no outside cell is blocked in every direction.

    Blockers are the exact obstacles plus every added cell taken as a closed
    square, so the fixpoint says no outside cell is shadowed by the hull.
    """
    if not resolution > 0.0:
        raise ValueError("resolution must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    bbox = tuple(bbox or s.bbox)
    xs, ys = grid_centers(bbox, resolution)
    px, py = np.meshgrid(xs, ys)
    source = inside_mask(s, px, py)
    cells = np.where(source, SOURCE, OUT).astype(np.int8)
    if initial is not None:
        initial = np.asarray(initial)
        if initial.shape != cells.shape:
            raise ValueError("initial mask does not match the grid")
        cells[(initial != OUT) & ~source] = ADDED

    # exterior cells free with respect to the exact scene are the only candidates later on
    ext = ~source
    shadow = np.zeros(cells.shape, dtype=bool)
    shadow[ext] = shadowed_many(s, px[ext], py[ext])
    history = []
    converged = False
    half = resolution / 2.0
    for it in range(1, max_iter + 1):
        grow = np.zeros(cells.shape, dtype=bool)
        if it == 1:
            grow = shadow & (cells == OUT)
        added = cells == ADDED
        if added.any():
            grow |= _blocked_by_squares(s, cells, px, py, half) & (cells == OUT) & ~grow
        n = int(grow.sum())
        history.append(n)
        cells[grow] = ADDED
        if n == 0:
            converged = True
            break
    return HullRaster(bbox, resolution, cells, len(history), converged, history[-1], tuple(history))


def _blocked_by_squares(s: Scene, cells, px, py, half) -> np.ndarray:
    added = cells == ADDED
    hull = cells != OUT
    border = _boundary_cells(added, hull)
    rows, cols = np.nonzero(added)
    box = (
        px[0, cols.min()] - half,
        py[rows.min(), 0] - half,
        px[0, cols.max()] + half,
        py[rows.max(), 0] + half,
    )
    cand = cells == OUT
    cx, cy = px[cand], py[cand]
    out = np.zeros(cells.shape, dtype=bool)
    if cx.size == 0:
        return out
    # prefilter: a free gap whose middle ray misses the added region's box proves the cell free
    if s.obstacles:
        cols_ = [footprints_many(o, cx, cy) for o in s.obstacles]
        S = np.stack([c[0] for c in cols_], axis=1)
        W = np.stack([c[1] for c in cols_], axis=1)
        SC = np.stack([c[2] for c in cols_], axis=1)
        EC = np.stack([c[3] for c in cols_], axis=1)
        mids, free = _gap_midpoints(S, W, SC, EC, s.eps_angle)
        escapes = np.zeros(cx.shape, dtype=bool)
        for j in range(mids.shape[1]):
            escapes |= free[:, j] & ~_ray_hits_box(cx, cy, mids[:, j], box)
    else:
        escapes = ~_ray_hits_box(cx, cy, np.zeros(cx.shape), box)
    idx = np.flatnonzero(cand.ravel())[~escapes]
    bx, by = px[border], py[border]
    for flat in idx:
        r, c = divmod(int(flat), cells.shape[1])
        x, y = float(px[r, c]), float(py[r, c])
        arcs = [hit_arc((x, y), o, s.eps_angle, s.eps_space) for o in s.obstacles]
        st, wd = _square_arcs(bx, by, half, x, y)
        arcs += [Arc(float(a), float(w)) for a, w in zip(st, wd)]
        covered, _ = arcset_covers_circle(ArcSet.from_arcs(arcs, s.eps_angle))
        out[r, c] = covered
    return out


def hull_cells_cover(h: HullRaster, s: Scene) -> bool:
    """Sandwich check: every rasterized obstacle cell stays in the hull."""
    xs, ys = grid_centers(h.bbox, h.resolution)
    px, py = np.meshgrid(xs, ys)
    return bool(np.all(h.in_hull[inside_mask(s, px, py)]))


def ring_width(mask_a: np.ndarray, mask_b: np.ndarray) -> int:
    """Number of dilation steps after which ``mask_a`` contains ``mask_b``."""
    steps = 0
    cur = mask_a.copy()
    while not np.all(cur[mask_b]):
        cur = ndimage.binary_dilation(cur, structure=EIGHT)
        steps += 1
        if steps > max(mask_a.shape):
            return math.inf  # type: ignore[return-value]
    return steps
