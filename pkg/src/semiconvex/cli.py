"""Command line entry point.

Exit codes: 0 success (free / pass / consistent), 1 usage or runtime failure,
2 bad input (parse, invalid scene, point inside an obstacle), 3 a negative
domain verdict (shadowed, weak test failed, audit inconsistent).
"""

from __future__ import annotations

import argparse
import math
import sys

from . import analysis, coverage, hull, render, scene_io, shadow
from .raycast import CLOSED, MODES, OPEN

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_VERDICT = 0, 1, 2, 3
EXIT_USAGE = EXIT_FAIL


def _point(text: str):
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise argparse.ArgumentTypeError("point must be finite")
    return (x, y)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_check(args) -> int:
    s = scene_io.load_scene(args.scene)
    v = coverage.is_semiconvex_at(s, args.point)
    if v.shadowed:
        print("shadowed")
        return EXIT_VERDICT
    print(f"free direction={math.degrees(v.free_direction):.9f}")
    return EXIT_OK


def cmd_weak(args) -> int:
    s = scene_io.load_scene(args.scene)
    samples = analysis.boundary_samples(s, args.samples, not args.no_critical) if s.obstacles else []
    rep = analysis.weak_semiconvexity_report(s, samples, include_critical=not args.no_critical)
    print(f"pass={str(rep.passed).lower()}")
    print(f"tested={rep.tested}")
    print(f"failures={len(rep.failures)}")
    print(f"nonmember_boundary_points={rep.nonmember_boundary_points}")
    for p, comp in rep.failures[: args.show]:
        print(f"failure={p.x:.9g},{p.y:.9g} component={comp}")
    return EXIT_OK if rep.passed else EXIT_VERDICT


def cmd_shadow(args) -> int:
    s = scene_io.load_scene(args.scene)
    r = analysis.shadow_scan(s, args.resolution)
    print(f"grid={r.shape[1]}x{r.shape[0]}")
    print(f"shadow_cells={r.n_shadow}")
    print(f"shadow_components={r.shadow_components}")
    if args.svg:
        _write(args.svg, render.render_svg(s, shadow=r))
    if args.figure:
        render.render_figure(s, args.figure, shadow=r, title="shadow")
    return EXIT_VERDICT if r.n_shadow else EXIT_OK


def cmd_supports(args) -> int:
    s = scene_io.load_scene(args.scene)
    rays = analysis.supporting_rays(s, args.point)
    if args.inner:
        rays = [r for r in rays if r.inner]
    print("direction_deg,touch_x,touch_y,obstacle,component,inner")
    for r in rays:
        print(
            f"{math.degrees(r.direction):.9f},{r.touch_point.x:.9g},{r.touch_point.y:.9g},"
            f"{r.touch_obstacle},{r.component},{str(r.inner).lower()}"
        )
    if args.svg:
        _write(args.svg, render.render_svg(s, rays=rays))
    return EXIT_OK


def cmd_audit(args) -> int:
    s = scene_io.load_scene(args.scene)
    rep = analysis.theorem_audit(s, args.resolution, args.samples, seed=args.seed)
    if args.csv is None:
        sys.stdout.write(rep.to_text())
    elif args.csv == "-":
        sys.stdout.write(rep.to_csv())
    else:
        _write(args.csv, rep.to_csv())
        sys.stdout.write(rep.to_text())
    if args.figure or args.svg:
        r = analysis.shadow_scan(s, args.resolution)
        if args.figure:
            render.render_figure(s, args.figure, shadow=r, title="audit")
        if args.svg:
            _write(args.svg, render.render_svg(s, shadow=r))
    return EXIT_OK if rep.all_consistent else EXIT_VERDICT


def cmd_hull(args) -> int:
    s = scene_io.load_scene(args.scene)
    h = hull.semiconvex_hull_grid(s, args.resolution, args.max_iter)
    print(f"iterations={h.iterations}")
    print(f"added_cells={h.n_added}")
    print(f"added_per_iteration={','.join(str(n) for n in h.added_per_iteration)}")
    print(f"converged={str(h.converged).lower()}")
    if args.pgm:
        _write(args.pgm, h.to_pgm())
    if args.svg:
        _write(args.svg, render.render_svg(s, hull=h))
    if args.figure:
        render.render_figure(s, args.figure, hull=h, title="hull")
    if not h.converged:
        print(f"error: no fixpoint within {args.max_iter} iterations, last pass added {h.last_delta}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_solve(args) -> int:
    st = shadow.SearchSettings(restarts=args.restarts, iterations=args.iterations, seed=args.seed)
    res = shadow.solve_min_blocking(args.k_max, args.mode, st, n_oracle=args.oracle_dirs)
    if res.config is None:
        margins = ",".join(f"{k}:{m:.3g}" for k, m in sorted(res.best_margins.items()))
        print(f"k_min=none mode={args.mode} best_margins={margins}")
        return EXIT_VERDICT
    text = scene_io.serialize_scene(shadow.ring_scene(res.config))
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    print(f"k_min={res.k_min} mode={args.mode} margin={res.margin:.9g}")
    return EXIT_OK


def cmd_fixture(args) -> int:
    name = f"{args.name}:{args.mode}" if args.mode else args.name
    text = scene_io.serialize_scene(scene_io.fixture_from_uri(name))
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_render(args) -> int:
    s = scene_io.load_scene(args.scene)
    r = analysis.shadow_scan(s, args.resolution) if args.resolution else None
    _write(args.svg, render.render_svg(s, shadow=r))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semiconvex", description="Ray-blocking analysis of planar obstacle scenes.")
    sub = p.add_subparsers(dest="command", required=True)
    scene_help = "scene file, or fixture:NAME[:ARGS][:MODE]"

    c = sub.add_parser("check", help="is a point shadowed")
    c.add_argument("scene", help=scene_help)
    c.add_argument("--point", type=_point, required=True)
    c.set_defaults(run=cmd_check)

    c = sub.add_parser("weak", help="sampled weak test on boundary points")
    c.add_argument("scene", help=scene_help)
    c.add_argument("--samples", type=int, default=64)
    c.add_argument("--no-critical", action="store_true")
    c.add_argument("--show", type=int, default=10, help="failures to list")
    c.set_defaults(run=cmd_weak)

    c = sub.add_parser("shadow", help="raster of shadowed cells")
    c.add_argument("scene", help=scene_help)
    c.add_argument("--resolution", type=float, default=0.05)
    c.add_argument("--svg")
    c.add_argument("--figure", help="matplotlib output (png, pdf, ...)")
    c.set_defaults(run=cmd_shadow)

    c = sub.add_parser("supports", help="supporting rays from a point")
    c.add_argument("scene", help=scene_help)
    c.add_argument("--point", type=_point, required=True)
    c.add_argument("--inner", action="store_true")
    c.add_argument("--svg")
    c.set_defaults(run=cmd_supports)

    c = sub.add_parser("audit", help="check every structural statement against the scene")
    c.add_argument("scene", help=scene_help)
    c.add_argument("--resolution", type=float, default=0.05)
    c.add_argument("--samples", type=int, default=64)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--csv", nargs="?", const="-", metavar="OUT", help="CSV to OUT, or to stdout when OUT is omitted")
    c.add_argument("--svg")
    c.add_argument("--figure")
    c.set_defaults(run=cmd_audit)

    c = sub.add_parser("hull", help="grid approximation of the hull")
    c.add_argument("scene", help=scene_help)
    c.add_argument("--resolution", type=float, default=0.05)
    c.add_argument("--max-iter", type=int, default=10)
    c.add_argument("--pgm")
    c.add_argument("--svg")
    c.add_argument("--figure")
    c.set_defaults(run=cmd_hull)

    c = sub.add_parser("solve-shadow", help="search the fewest blocking disks on the unit circle")
    c.add_argument("--kmax", "--k-max", dest="k_max", type=int, default=12)
    c.add_argument("--mode", choices=(OPEN, CLOSED), default=CLOSED)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--restarts", type=int, default=24)
    c.add_argument("--iterations", type=int, default=1500)
    c.add_argument("--oracle-dirs", type=int, default=1_000_000)
    c.add_argument("--out", help="write the certificate scene here instead of stdout")
    c.set_defaults(run=cmd_solve)

    c = sub.add_parser("fixture", help="print a built-in scene")
    c.add_argument("name", help="NAME[:ARGS][:MODE], e.g. compass_disks:open or ring:5:0.5")
    c.add_argument("--mode", choices=MODES)
    c.add_argument("--out")
    c.set_defaults(run=cmd_fixture)

    c = sub.add_parser("render", help="write an SVG drawing")
    c.add_argument("scene", help=scene_help)
    c.add_argument("--svg", required=True)
    c.add_argument("--resolution", type=float, help="overlay the shadow raster")
    c.set_defaults(run=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.run(args)
    except scene_io.SceneFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except coverage.InteriorPointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
