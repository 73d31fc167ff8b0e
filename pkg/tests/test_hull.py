import numpy as np
import pytest

from semiconvex.analysis import shadow_scan
from semiconvex.geom import Point
from semiconvex.hull import ADDED, OUT, SOURCE, hull_cells_cover, ring_width, semiconvex_hull_grid
from semiconvex.raycast import CLOSED, Disk, Obstacle, Scene
from semiconvex.scene_io import compass_disks, pinwheel_rects


def test_single_disk_adds_nothing():
    s = Scene.of([Obstacle(Disk(Point(0, 0), 1.0), CLOSED)])
    h = semiconvex_hull_grid(s, 0.05)
    assert h.converged and h.iterations == 1 and h.n_added == 0
    assert hull_cells_cover(h, s)


def test_first_pass_adds_exactly_the_shadow():
    s = pinwheel_rects()
    h1 = semiconvex_hull_grid(s, 0.05, max_iter=1)
    sh = shadow_scan(s, 0.05)
    assert np.array_equal(h1.cells == ADDED, sh.cells == 1)
    assert not h1.converged


def test_pinwheel_contains_shadow_and_grows_monotonically():
    s = pinwheel_rects()
    h = semiconvex_hull_grid(s, 0.05)
    sh = shadow_scan(s, 0.05)
    assert h.converged
    assert np.all(h.in_hull[sh.cells != 0])
    assert all(n >= 0 for n in h.added_per_iteration)
    assert h.added_per_iteration[0] == sh.n_shadow
    # growth beyond the raster shadow is a thin ring of cells
    assert ring_width(sh.cells != 0, h.in_hull) <= 6


def test_compass_closed_contains_center():
    s = compass_disks(CLOSED)
    h = semiconvex_hull_grid(s, 0.1)
    sh = shadow_scan(s, 0.1)
    assert np.all(h.in_hull[sh.cells == 1])
    i, j = sh.cell_of((0.0, 0.0))
    assert h.in_hull[i, j]


def test_idempotent_from_its_own_output():
    s = pinwheel_rects()
    h = semiconvex_hull_grid(s, 0.05)
    again = semiconvex_hull_grid(s, 0.05, initial=h.cells)
    assert np.array_equal(again.cells, h.cells)
    assert again.added_per_iteration[-1] == 0


def test_rejects_bad_arguments():
    s = pinwheel_rects()
    with pytest.raises(ValueError):
        semiconvex_hull_grid(s, -1.0)
    with pytest.raises(ValueError):
        semiconvex_hull_grid(s, 0.1, max_iter=0)
    with pytest.raises(ValueError):
        semiconvex_hull_grid(s, 0.1, initial=np.zeros((2, 2)))


def test_nonconvergence_is_reported():
    h = semiconvex_hull_grid(pinwheel_rects(), 0.05, max_iter=2)
    assert not h.converged and h.last_delta > 0 and h.iterations == 2


def test_pgm_output():
    h = semiconvex_hull_grid(pinwheel_rects(), 0.1)
    lines = h.to_pgm().splitlines()
    assert lines[0] == "P2"
    w, ht = map(int, lines[2].split())
    assert (ht, w) == h.cells.shape
    values = {int(v) for line in lines[4:] for v in line.split()}
    assert values <= {0, 128, 255}
    assert {SOURCE, ADDED, OUT} >= set(np.unique(h.cells))
