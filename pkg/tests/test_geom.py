import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tightspan.geom import (EPS, Elbow, Point, Polyline, QuadrantOccupancy, Ray, ShapeError, ShapeSet,
                            from_uv, l1_distance_to_segments, path_connectedness_check,
                            quadrant_occupancy, quadrant_occupancy_many, sample_segments,
                            taxicab_distance, to_uv)
from tightspan.scene import tessellate_arc

coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def test_point_rejects_nonfinite():
    with pytest.raises(ShapeError):
        Point(math.nan, 0)
    with pytest.raises(ShapeError):
        Point(0, math.inf)


def test_point_unpacks():
    x, y = Point(1, 2)
    assert (x, y) == (1.0, 2.0) and Point(1, 2)[1] == 2.0


def test_polyline_validation():
    with pytest.raises(ShapeError):
        Polyline([])
    with pytest.raises(ShapeError):
        Polyline([(0, 0), (0, 0)])
    with pytest.raises(ShapeError):
        Polyline([(0, 0), (1, 0)], closed=True)
    sq = Polyline([(0, 0), (1, 0), (1, 1), (0, 1)], closed=True)
    assert len(sq.segments()) == 4
    assert sq.length() == pytest.approx(4.0)


def test_single_vertex_polyline_is_a_point():
    s = Polyline([(3, 4)]).segments()
    assert s.tolist() == [[3, 4, 3, 4]]


def test_empty_shape_bbox_rejected():
    with pytest.raises(ShapeError):
        ShapeSet().bbox()


def test_taxicab_and_uv():
    assert taxicab_distance((0, 0), (1, -2)) == 3
    u, v = to_uv((1.5, -0.25))
    assert from_uv(u, v) == Point(1.5, -0.25)


def test_quadrants_of_origin_on_arc():
    arc = ShapeSet(polylines=[tessellate_arc((0, 0), 1, 0, 270, 256)])
    occ = quadrant_occupancy(arc, (0, 0))
    assert occ == QuadrantOccupancy(True, True, True, True)


def test_quadrants_fig3_point_on_boundaries():
    pts = ShapeSet(points=[(0, 0), (2, 0), (1, 1)])
    occ = quadrant_occupancy(pts, (1, 0.5))
    assert occ.count() == 4


def test_quadrant_boundary_ray_counts_twice():
    occ = quadrant_occupancy(ShapeSet(points=[(1, 0)]), (0, 0))
    assert occ.pp and occ.pm and not occ.mp and not occ.mm


def _occupancy_by_sampling(segs, p, slack):
    pts = sample_segments(segs, 1e-3)
    d = pts - np.asarray(p)
    return [bool(np.any((sx * d[:, 0] >= -slack) & (sy * d[:, 1] >= -slack)))
            for sx, sy in ((1, 1), (1, -1), (-1, 1), (-1, -1))]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(coord, coord), min_size=2, max_size=8, unique=True), coord, coord)
def test_quadrant_occupancy_matches_dense_sampling(verts, px, py):
    segs = np.array([[*a, *b] for a, b in zip(verts, verts[1:])], dtype=float)
    fast = quadrant_occupancy_many(segs, np.array([[px, py]]))[0].tolist()
    strict = _occupancy_by_sampling(segs, (px, py), 0.0)
    loose = _occupancy_by_sampling(segs, (px, py), 1e-3)
    for f, s, l in zip(fast, strict, loose):
        assert f or not s   # a sampled point in the quadrant is a hit
        assert l or not f   # a hit has a sample within one step of the quadrant


def test_rays_and_elbows():
    segs = np.array([[1, -1, 1, 1]], dtype=float)
    assert Ray(Point(0, 0), "h", 1).hits(segs)
    assert not Ray(Point(0, 0), "h", -1).hits(segs)
    assert not Ray(Point(0, 2), "h", 1).hits(segs)
    assert Elbow(Point(1, 2), 1, -1).meets(segs)
    # the elbow is just its two rays, not the quadrant between them
    assert not Elbow(Point(0, 2), 1, -1).meets(segs)


def test_connectivity():
    assert path_connectedness_check(ShapeSet(polylines=[tessellate_arc((0, 0), 1, 0, 270)]))
    assert not path_connectedness_check(ShapeSet(points=[(0, 0), (2, 0), (1, 1)]))
    touching = ShapeSet(polylines=[Polyline([(0, 0), (1, 1)]), Polyline([(0, 1), (1, 0)])])
    assert path_connectedness_check(touching)
    apart = ShapeSet(polylines=[Polyline([(0, 0), (1, 0)]), Polyline([(0, 1e-3), (1, 1e-3)])])
    assert not path_connectedness_check(apart)
    on_line = ShapeSet(points=[(0.5, 0)], polylines=[Polyline([(0, 0), (1, 0)])])
    assert path_connectedness_check(on_line)


@settings(max_examples=60, deadline=None)
@given(coord, coord, st.lists(st.tuples(coord, coord), min_size=2, max_size=6, unique=True))
def test_l1_distance_matches_sampling(px, py, verts):
    segs = np.array([[*a, *b] for a, b in zip(verts, verts[1:])], dtype=float)
    d = l1_distance_to_segments((px, py), segs)
    pts = sample_segments(segs, 1e-3)
    brute = np.min(np.abs(pts[:, 0] - px) + np.abs(pts[:, 1] - py))
    assert d <= brute + EPS
    assert d >= brute - 2e-3
