import math

import pytest
from hypothesis import given, settings, strategies as st

from semiconvex.geom import (
    TWO_PI,
    Arc,
    ArcSet,
    Point,
    Ray,
    arcset_complement,
    arcset_covers_circle,
    arcset_from_pairs,
    arcset_intersection,
    arcset_union,
    normalize_angle,
)

angles = st.floats(min_value=0.0, max_value=TWO_PI, allow_nan=False, exclude_max=True)


@st.composite
def arcs(draw):
    start = draw(angles)
    width = draw(st.floats(min_value=0.01, max_value=3.0))
    return Arc(start, width, draw(st.booleans()), draw(st.booleans()))


arc_sets = st.lists(arcs(), min_size=0, max_size=5).map(ArcSet.from_arcs)


def _far_from_endpoints(theta, *sets, margin=1e-6):
    for s in sets:
        for e in s.endpoints():
            d = abs(theta - e) % TWO_PI
            if min(d, TWO_PI - d) < margin:
                return False
    return True


def test_normalize_angle_range():
    assert 0.0 <= normalize_angle(-1e-20) < TWO_PI
    assert normalize_angle(TWO_PI) == pytest.approx(0.0)
    assert normalize_angle(-math.pi / 2) == pytest.approx(1.5 * math.pi)


def test_ray_is_unit_speed():
    r = Ray(Point(1.0, 2.0), math.pi / 3)
    p = r.at(2.0)
    assert math.hypot(p.x - 1.0, p.y - 2.0) == pytest.approx(2.0)


def test_arc_endpoint_closure():
    a = Arc(0.0, 1.0, start_closed=False, end_closed=True)
    assert not a.contains(0.0)
    assert a.contains(1.0)
    assert a.contains(0.5)
    assert not a.contains(1.5)


def test_arc_rejects_bad_width():
    with pytest.raises(ValueError):
        Arc(0.0, -0.1)
    with pytest.raises(ValueError):
        Arc(0.0, 7.0)


def test_wraparound_union_is_one_arc():
    s = arcset_from_pairs([(5.5, 0.5, True, True), (0.4, 1.0, True, False)])
    assert len(s.arcs) == 1
    assert s.contains(6.0) and s.contains(0.9) and not s.contains(1.0)


def test_open_endpoints_meeting_leave_one_direction():
    # [0, pi) and (pi, 2pi] miss exactly the direction pi
    s = arcset_from_pairs([(0.0, math.pi, True, False), (math.pi, TWO_PI, False, True)])
    covered, witness = arcset_covers_circle(s)
    assert not covered
    assert witness == pytest.approx(math.pi)
    gap = arcset_complement(s)
    assert len(gap.arcs) == 1 and gap.arcs[0].width == 0.0


def test_closed_endpoint_plugs_the_gap():
    s = arcset_from_pairs([(0.0, math.pi, True, True), (math.pi, TWO_PI, False, True)])
    assert arcset_covers_circle(s) == (True, None)


def test_empty_and_full():
    assert arcset_complement(ArcSet()).is_full
    assert arcset_complement(ArcSet.full()).is_empty
    assert ArcSet.full().measure() == pytest.approx(TWO_PI)


@given(arc_sets, arc_sets, angles)
@settings(deadline=None, max_examples=200)
def test_union_and_intersection_match_pointwise(a, b, theta):
    if not _far_from_endpoints(theta, a, b):
        return
    assert arcset_union(a, b).contains(theta) == (a.contains(theta) or b.contains(theta))
    assert arcset_intersection(a, b).contains(theta) == (a.contains(theta) and b.contains(theta))


@given(arc_sets, angles)
@settings(deadline=None, max_examples=200)
def test_complement_flips_membership(a, theta):
    if not _far_from_endpoints(theta, a):
        return
    assert arcset_complement(a).contains(theta) != a.contains(theta)


@given(arc_sets)
@settings(deadline=None, max_examples=200)
def test_complement_measure_and_involution(a):
    c = arcset_complement(a)
    assert a.measure() + c.measure() == pytest.approx(TWO_PI, abs=1e-8)
    back = arcset_complement(c)
    assert back.measure() == pytest.approx(a.measure(), abs=1e-8)


@given(arc_sets)
@settings(deadline=None, max_examples=200)
def test_witness_is_uncovered(a):
    covered, witness = arcset_covers_circle(a)
    if covered:
        assert arcset_complement(a).is_empty
    else:
        assert not a.contains(witness)


@given(arc_sets, angles)
@settings(deadline=None, max_examples=100)
def test_rotation_preserves_measure(a, phi):
    assert a.rotated(phi).measure() == pytest.approx(a.measure(), abs=1e-9)


def test_canonical_form_is_sorted_and_disjoint():
    s = arcset_from_pairs([(3.0, 3.5, True, True), (1.0, 2.0, True, True), (1.5, 2.5, False, False)])
    starts = [a.start for a in s.arcs]
    assert starts == sorted(starts)
    assert len(s.arcs) == 2
