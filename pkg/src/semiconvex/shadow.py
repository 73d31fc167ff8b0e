"""Disjoint disks centred on the unit circle that block every ray from its centre."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .coverage import is_semiconvex_at
from .geom import TWO_PI, Point
from .raycast import CLOSED, DEFAULT_EPS_SPACE, OPEN, Disk, Obstacle, Scene, oracle_shadowed


@dataclass(frozen=True)
class RingConfig:
    angles: tuple
    radii: tuple
    mode: str = CLOSED

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        if len(self.angles) != len(self.radii) or not self.angles:
            raise ValueError("need one radius per angle and at least one disk")
        if self.mode not in (OPEN, CLOSED):
            raise ValueError(f"ring mode must be open or closed, got {self.mode!r}")

    @property
    def k(self) -> int:
        return len(self.angles)

    def with_mode(self, mode: str) -> "RingConfig":
        return RingConfig(self.angles, self.radii, mode)

    def rotated_to_zero(self) -> "RingConfig":
        """Sort by angle and rotate so the first disk sits at angle 0."""
        order = sorted(range(self.k), key=lambda i: self.angles[i] % TWO_PI)
        a0 = self.angles[order[0]]
        angles = tuple((self.angles[i] - a0) % TWO_PI for i in order)
        return RingConfig(angles, tuple(self.radii[i] for i in order), self.mode)


def ring_config_valid(c: RingConfig, eps_space: float = DEFAULT_EPS_SPACE) -> tuple[bool, list]:
    """Check disjointness and radius bounds; returns ``(ok, violations)``."""
    bad = []
    for i, r in enumerate(c.radii):
        if not 0.0 < r < 1.0 - eps_space:
            bad.append(("radius", i))
    for i in range(c.k):
        for j in range(i + 1, c.k):
            chord = 2.0 * abs(math.sin((c.angles[i] - c.angles[j]) / 2.0))
            if chord - (c.radii[i] + c.radii[j]) <= eps_space:
                bad.append(("pair", i, j))
    return not bad, bad


def ring_scene(c: RingConfig) -> Scene:
    return Scene.of(
        [Obstacle(Disk(Point(math.cos(a), math.sin(a)), r), c.mode) for a, r in zip(c.angles, c.radii)]
    )


def coverage_margin(angles, radii) -> float:
    """Half the smallest overlap of neighbouring footprints seen from the centre.

    Positive means the footprints overlap strictly everywhere, which covers
    the circle in both modes.  Only neighbours are compared, so this is a
    lower bound on the true covering depth.
    """
    a = np.mod(np.asarray(angles, dtype=float), TWO_PI)
    half = np.arcsin(np.clip(np.asarray(radii, dtype=float), 0.0, 1.0))
    order = np.argsort(a)
    a, half = a[order], half[order]
    gaps = np.diff(np.append(a, a[0] + TWO_PI))
    return float(np.min(half + np.roll(half, -1) - gaps) / 2.0)


def ring_config_shadowed(c: RingConfig, eps_space: float = DEFAULT_EPS_SPACE) -> bool:
    ok, bad = ring_config_valid(c, eps_space)
    if not ok:
        raise ValueError(f"invalid ring configuration: {bad}")
    return is_semiconvex_at(ring_scene(c), (0.0, 0.0)).shadowed


@dataclass(frozen=True)
class DeficitRow:
    k: int
    r_sup: float
    r_used: float
    deficit: float


def symmetric_infeasibility_scan(k_max: int, eps_space: float = DEFAULT_EPS_SPACE) -> list[DeficitRow]:
    """Coverage shortfall of k equal disks at uniform angles, at the largest admissible radius."""
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    rows = []
    for k in range(2, k_max + 1):
        r_sup = 1.0 if k == 2 else min(1.0, math.sin(math.pi / k))
        r_used = r_sup - eps_space
        rows.append(DeficitRow(k, r_sup, r_used, TWO_PI - 2.0 * k * math.asin(r_used)))
    return rows


# --------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class SearchSettings:
    restarts: int = 24
    iterations: int = 1500
    step0: float = 0.3
    step_min: float = 1e-4
    seed: int = 0
    target: float = 2e-3


def _objective(x: np.ndarray, k: int, eps: float) -> float:
    angles, radii = x[:k], x[k:]
    if np.any(radii <= 0.0):
        return -math.inf
    cover = coverage_margin(angles, radii)
    bound = float(np.min(1.0 - eps - radii))
    diff = angles[:, None] - angles[None, :]
    chord = 2.0 * np.abs(np.sin(diff / 2.0))
    slack = chord - radii[:, None] - radii[None, :]
    iu = np.triu_indices(k, 1)
    sep = float(np.min(slack[iu])) if k > 1 else math.inf
    return min(cover, bound, sep - eps)


def _local_search(k: int, rng: np.random.Generator, st: SearchSettings, eps: float):
    angles = np.sort(rng.uniform(0.0, TWO_PI, k))
    radii = rng.uniform(0.3, 0.95, k)
    x = np.concatenate([angles, radii])
    f = _objective(x, k, eps)
    step = st.step0
    decay = (st.step_min / st.step0) ** (1.0 / max(1, st.iterations))
    for _ in range(st.iterations):
        cand = x + rng.normal(0.0, step, x.shape)
        fc = _objective(cand, k, eps)
        if fc > f:
            x, f = cand, fc
        step *= decay
    return f, x


@dataclass(frozen=True)
class SolveResult:
    k_min: Optional[int]
    config: Optional[RingConfig]
    margin: float
    best_margins: dict = field(default_factory=dict)
    oracle_certified: bool = False


def certify(c: RingConfig, n_dirs: int = 1_000_000) -> bool:
    """Validity, arc coverage and the sampling oracle must all agree."""
    ok, _ = ring_config_valid(c)
    if not ok or not ring_config_shadowed(c):
        return False
    return oracle_shadowed(ring_scene(c), (0.0, 0.0), n_dirs)


def solve_min_blocking(
    k_max: int, mode: str = CLOSED, search: Optional[SearchSettings] = None, n_oracle: int = 1_000_000
) -> SolveResult:
    """Smallest k for which the search finds a certified blocking ring."""
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    st = search or SearchSettings()
    eps = DEFAULT_EPS_SPACE
    best: dict[int, float] = {}
    for k in range(2, k_max + 1):
        rng = np.random.default_rng([st.seed, k])
        top = (-math.inf, None)
        for _ in range(st.restarts):
            f, x = _local_search(k, rng, st, eps)
            if f > top[0]:
                top = (f, x)
            if f >= st.target:
                break
        best[k] = top[0]
        if top[0] > 0.0:
            x = top[1]
            cfg = RingConfig(tuple(x[:k]), tuple(x[k:]), mode).rotated_to_zero()
            if certify(cfg, n_oracle):
                return SolveResult(k, cfg, coverage_margin(cfg.angles, cfg.radii), best, True)
    return SolveResult(None, None, max(best.values()), best, False)
