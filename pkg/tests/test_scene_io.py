import json
import math

import pytest

from semiconvex.analysis import boundary_samples
from semiconvex.cli import main
from semiconvex.coverage import is_semiconvex_at
from semiconvex.geom import Point
from semiconvex.raycast import CLOSED, OPEN, PARTIAL, Disk, Obstacle, Scene
from semiconvex.render import render_figure, render_svg
from semiconvex.scene_io import (
    FIXTURES,
    SceneFormatError,
    fixture,
    fixture_from_uri,
    parse_scene,
    serialize_scene,
)


def _doc(*obstacles, **top):
    return json.dumps({"obstacles": list(obstacles), **top})


DISK = {"kind": "disk", "center": [0, 0], "radius": 1, "boundary": "closed"}


class TestParse:
    def test_minimal_disk(self):
        s = parse_scene(_doc(DISK))
        assert len(s.obstacles) == 1
        assert s.eps_angle == 1e-9 and s.eps_space == 1e-9
        assert isinstance(s.obstacles[0].shape, Disk)

    def test_degenerate_included_arc_is_one_point(self):
        o = dict(DISK, boundary="partial", included_arcs=[[45, 45, "cc"]])
        inc = parse_scene(_doc(o)).obstacles[0].included
        assert len(inc.arcs) == 1
        assert inc.arcs[0].width == 0.0
        assert inc.arcs[0].start == pytest.approx(math.pi / 4)

    def test_nonconvex_polygon_names_its_index(self):
        bad = {"kind": "polygon", "vertices": [[0, 0], [2, 0], [1, 0.2], [1, 2]]}
        with pytest.raises(SceneFormatError) as err:
            parse_scene(_doc(DISK, bad))
        assert err.value.index == 1 and "obstacle 1" in str(err.value)

    def test_syntax_error_reports_position(self):
        with pytest.raises(SceneFormatError, match="line 2 column"):
            parse_scene('{"obstacles":\n  [,]}')

    @pytest.mark.parametrize(
        "text",
        [
            _doc(dict(DISK, color="red")),
            _doc(DISK, extra=1),
            _doc(dict(DISK, radius=-1)),
            _doc(dict(DISK, boundary="fuzzy")),
            _doc(dict(DISK, included_arcs=[[0, 10, "cc"]])),
            _doc(dict(DISK, boundary="partial", included_arcs=[[0, 10, "xx"]])),
            _doc({"kind": "capsule", "a": [0, 0], "b": [0, 0], "radius": 1}),
            _doc({"kind": "polygon", "vertices": [[0, 0], [1, 0], [0, 1]], "boundary": "partial"}),
            _doc({"kind": "blob"}),
            _doc(DISK, eps_angle=0),
            "[1, 2]",
        ],
    )
    def test_rejections(self, text):
        with pytest.raises(SceneFormatError):
            parse_scene(text)


class TestRoundTrip:
    @pytest.mark.parametrize("name", ["pinwheel_rects", "pinwheel_capsules", "compass_disks", "hook_pair", "hook_pair_partial", "ring_certificate"])
    def test_fixtures(self, name):
        s = fixture(name)
        text = serialize_scene(s)
        back = parse_scene(text)
        assert serialize_scene(back) == text
        assert len(back.obstacles) == len(s.obstacles)
        assert [o.mode for o in back.obstacles] == [o.mode for o in s.obstacles]

    def test_partial_arcs_keep_closure_flags(self):
        o = dict(DISK, boundary="partial", included_arcs=[[350, 20, "co"], [90, 180, "oo"]])
        text = serialize_scene(parse_scene(_doc(o)))
        got = json.loads(text)["obstacles"][0]["included_arcs"]
        assert sorted(got) == sorted([[350.0, 20.0, "co"], [90.0, 180.0, "oo"]])

    def test_empty_scene(self):
        assert parse_scene(serialize_scene(Scene())).obstacles == ()


class TestFixtures:
    def test_named_regression_claims(self):
        assert is_semiconvex_at(fixture("pinwheel_rects"), (0, 0)).shadowed
        assert is_semiconvex_at(fixture("compass_disks"), (0, 0)).shadowed
        assert not is_semiconvex_at(fixture("compass_disks", OPEN), (0, 0)).shadowed
        assert is_semiconvex_at(fixture("hook_pair"), (0, 0)).shadowed
        assert not is_semiconvex_at(fixture("hook_pair"), (0, 0.5)).shadowed

    def test_fixtures_are_pairwise_disjoint(self):
        for name in ("pinwheel_rects", "pinwheel_capsules"):
            s = fixture(name)
            # each boundary sample lies on one obstacle and strictly outside the rest
            for p, _ in boundary_samples(s, 128, include_critical=False):
                d = sorted(o.shape.signed_distance(p) for o in s.obstacles)
                assert abs(d[0]) < 1e-9 and d[1] > 1e-3

    def test_uri_forms(self):
        assert fixture_from_uri("compass_disks:open").obstacles[0].mode == OPEN
        assert len(fixture_from_uri("ring:5").obstacles) == 5
        ring = fixture_from_uri("ring:3:0.5:open")
        assert ring.obstacles[0].shape.radius == 0.5 and ring.obstacles[0].mode == OPEN
        assert fixture("hook_pair_partial").obstacles[0].mode == PARTIAL

    def test_unknown_name(self):
        with pytest.raises(SceneFormatError):
            fixture_from_uri("teapot")
        assert "ring" in FIXTURES


class TestRender:
    def test_svg_is_byte_stable(self):
        s = fixture("pinwheel_rects")
        assert render_svg(s) == render_svg(fixture("pinwheel_rects"))

    def test_dashed_open_solid_closed(self):
        open_svg = render_svg(Scene.of([Obstacle(Disk(Point(0, 0), 1), OPEN)]))
        closed_svg = render_svg(Scene.of([Obstacle(Disk(Point(0, 0), 1), CLOSED)]))
        assert "stroke-dasharray" in open_svg and "stroke-dasharray" not in closed_svg

    def test_empty_scene_draws_axes(self):
        svg = render_svg(Scene())
        assert "<svg" in svg and "</svg>" in svg

    def test_figure_png(self, tmp_path):
        out = tmp_path / "f.png"
        render_figure(fixture("compass_disks"), str(out), title="compass")
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


class TestCli:
    def test_check_verdicts(self, capsys):
        assert main(["check", "fixture:pinwheel_rects", "--point", "0,0"]) == 3
        assert capsys.readouterr().out.strip() == "shadowed"
        assert main(["check", "fixture:pinwheel_rects", "--point", "10,0"]) == 0
        assert capsys.readouterr().out.startswith("free direction=")
        assert main(["check", "fixture:pinwheel_rects", "--point", "0,1.1"]) == 2

    def test_usage_and_input_errors(self, tmp_path, capsys):
        assert main(["check", "fixture:pinwheel_rects"]) == 1
        assert main(["check", "fixture:teapot", "--point", "0,0"]) == 2
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert main(["weak", str(bad)]) == 2
        assert main(["weak", str(tmp_path / "missing.json")]) == 2
        capsys.readouterr()

    def test_weak(self, capsys):
        assert main(["weak", "fixture:pinwheel_rects", "--samples", "32"]) == 0
        assert "pass=true" in capsys.readouterr().out
        assert main(["weak", "fixture:compass_disks", "--samples", "32", "--no-critical"]) == 3

    def test_shadow_writes_svg_and_figure(self, tmp_path, capsys):
        svg, png = tmp_path / "s.svg", tmp_path / "s.png"
        assert main(["shadow", "fixture:pinwheel_rects", "--resolution", "0.1", "--svg", str(svg), "--figure", str(png)]) == 3
        assert "shadow_cells=" in capsys.readouterr().out
        assert svg.stat().st_size > 0 and png.stat().st_size > 0

    def test_supports(self, capsys):
        assert main(["supports", "fixture:pinwheel_rects", "--point", "0,0", "--inner"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "direction_deg,touch_x,touch_y,obstacle,component,inner"
        assert len(lines) > 1 and all(line.endswith(",true") for line in lines[1:])

    def test_audit_text_csv_and_figure(self, tmp_path, capsys):
        png, csv = tmp_path / "a.png", tmp_path / "a.csv"
        assert main(["audit", "fixture:hook_pair", "--resolution", "0.1", "--samples", "64", "--figure", str(png)]) == 0
        assert "all_consistent=true" in capsys.readouterr().out
        assert png.stat().st_size > 0
        assert main(["audit", "fixture:hook_pair", "--resolution", "0.1", "--samples", "64", "--csv"]) == 0
        assert capsys.readouterr().out.startswith("theorem,applicable,consistent,details")
        assert main(["audit", "fixture:hook_pair", "--resolution", "0.1", "--samples", "64", "--csv", str(csv)]) == 0
        assert csv.read_text().startswith("theorem,")

    def test_hull(self, tmp_path, capsys):
        pgm, png = tmp_path / "h.pgm", tmp_path / "h.png"
        assert main(["hull", "fixture:pinwheel_rects", "--resolution", "0.1", "--pgm", str(pgm), "--figure", str(png)]) == 0
        assert "converged=true" in capsys.readouterr().out
        assert pgm.read_text().startswith("P2")
        assert main(["hull", "fixture:pinwheel_rects", "--resolution", "0.1", "--max-iter", "1"]) == 1

    def test_solve_shadow_small_budget(self, capsys):
        assert main(["solve-shadow", "--kmax", "2", "--restarts", "2", "--iterations", "100"]) == 3
        assert capsys.readouterr().out.startswith("k_min=none")

    def test_solve_shadow_finds_three(self, tmp_path, capsys):
        out = tmp_path / "ring.json"
        code = main(["solve-shadow", "--kmax", "3", "--restarts", "8", "--iterations", "600", "--oracle-dirs", "20000", "--out", str(out)])
        assert code == 0
        assert "k_min=3" in capsys.readouterr().out
        s = parse_scene(out.read_text())
        assert is_semiconvex_at(s, (0, 0)).shadowed

    def test_fixture_and_render(self, tmp_path, capsys):
        scene = tmp_path / "c.json"
        assert main(["fixture", "compass_disks", "--mode", "open", "--out", str(scene)]) == 0
        assert parse_scene(scene.read_text()).obstacles[0].mode == OPEN
        assert main(["fixture", "ring:4"]) == 0
        assert len(parse_scene(capsys.readouterr().out).obstacles) == 4
        svg = tmp_path / "c.svg"
        assert main(["render", str(scene), "--svg", str(svg), "--resolution", "0.2"]) == 0
        assert "</svg>" in svg.read_text()
        assert main(["fixture", "teapot"]) == 2
