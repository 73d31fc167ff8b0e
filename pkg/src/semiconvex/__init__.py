"""Decide when unions of planar convex obstacles block every ray from a point."""

from .analysis import (
    AuditReport,
    ComponentPartition,
    ShadowRaster,
    SupportRay,
    WeakReport,
    boundary_samples,
    components,
    find_shadow_point,
    inner_supporting_rays,
    shadow_scan,
    supporting_rays,
    theorem_audit,
    weak_semiconvexity_report,
)
from .coverage import InteriorPointError, Verdict, direction_cover, hit_arc, is_projected, is_semiconvex_at
from .geom import (
    Arc,
    ArcSet,
    Point,
    Ray,
    arcset_complement,
    arcset_covers_circle,
    arcset_intersection,
    arcset_union,
    normalize_angle,
)
from .hull import HullRaster, semiconvex_hull_grid
from .raycast import (
    CLOSED,
    OPEN,
    PARTIAL,
    Capsule,
    ConvexPolygon,
    Disk,
    HitResult,
    Obstacle,
    Scene,
    first_hit,
    oracle_shadowed,
    ray_hits_obstacle,
)
from .render import render_figure, render_svg
from .scene_io import SceneFormatError, fixture, load_scene, parse_scene, serialize_scene
from .shadow import (
    RingConfig,
    ring_config_shadowed,
    ring_config_valid,
    solve_min_blocking,
    symmetric_infeasibility_scan,
)

__version__ = "0.1.0"
