import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tightspan.geom import Point, Polyline, ShapeSet
from tightspan.hatch import hatch_seq
from tightspan.scene import (SchemaError, Scene, builtin_scenes, load_builtin, parse_region, parse_scene,
                             hatch_result_to_dict, serialize_scene)


def test_three_point_scene():
    sc = parse_scene('{"points": [[0,0],[2,0],[1,1]]}')
    assert sc.shapes.points == (Point(0, 0), Point(2, 0), Point(1, 1))
    assert not sc.shapes.polylines and sc.name == ""


def test_arc_scene_tessellates():
    sc = parse_scene('{"name": "arc", "arcs": [{"center": [0,0], "radius": 1, "from_deg": 0, "to_deg": 270}]}')
    (pl,) = sc.shapes.polylines
    v = pl.coords()
    assert len(v) == 257 and not pl.closed
    assert np.allclose(np.hypot(v[:, 0], v[:, 1]), 1.0)
    assert np.allclose(v[0], [1, 0]) and np.allclose(v[-1], [0, -1])


@pytest.mark.parametrize("text, path", [
    ("", "$"),
    ("   ", "$"),
    ("[1, 2]", "$"),
    ('{"points": [[0, "a"]]}', "$.points[0][1]"),
    ('{"points": [[0, NaN]]}', "$"),
    ('{"points": [[0, 1e400]]}', "$.points[0][1]"),
    ('{"points": [[0, 1, 2]]}', "$.points[0]"),
    ('{"polylines": [{"closed": true}]}', "$.polylines[0].vertices"),
    ('{"polylines": [{"vertices": [[0,0],[1,0]], "closed": 1}]}', "$.polylines[0].closed"),
    ('{"polylines": [{"vertices": [[0,0],[0,0]]}]}', "$.polylines[0]"),
    ('{"arcs": [{"center": [0,0], "radius": -1, "from_deg": 0, "to_deg": 90}]}', "$.arcs[0].radius"),
    ('{"arcs": [{"center": [0,0], "radius": 1, "from_deg": 0}]}', "$.arcs[0].to_deg"),
    ('{"arcs": [{"center": [0,0], "radius": 1, "from_deg": 0, "to_deg": 9, "segments": 0}]}',
     "$.arcs[0].segments"),
    ('{"points": [[0,0]], "colour": "red"}', "$.colour"),
    ('{"name": "nothing"}', "$"),
    ('{"points": [[0,0]], "sample_spacing": 0}', "$.sample_spacing"),
])
def test_schema_errors_carry_a_path(text, path):
    with pytest.raises(SchemaError) as err:
        parse_scene(text)
    assert err.value.path == path


def test_builtins_load():
    names = builtin_scenes()
    assert {"fig1_arc", "fig3_points", "fig7_contour", "square", "lshape"} <= set(names)
    for n in names:
        assert not load_builtin(n).shapes.is_empty()
    with pytest.raises(FileNotFoundError):
        load_builtin("nope")


finite = st.floats(-1e6, 1e6, allow_nan=False)
pt = st.tuples(finite, finite)


@st.composite
def scenes(draw):
    points = draw(st.lists(pt, max_size=4))
    polylines = []
    for _ in range(draw(st.integers(0, 3))):
        verts = draw(st.lists(pt, min_size=3, max_size=6, unique=True))
        try:
            polylines.append(Polyline(verts, draw(st.booleans())))
        except ValueError:
            pass
    if not points and not polylines:
        points = [(0.0, 0.0)]
    return Scene(draw(st.text(max_size=8)), ShapeSet(points=points, polylines=polylines),
                 draw(st.one_of(st.none(), st.booleans())),
                 draw(st.one_of(st.none(), st.floats(1e-6, 1.0))))


@settings(max_examples=60, deadline=None)
@given(scenes())
def test_scene_round_trip(sc):
    assert parse_scene(serialize_scene(sc)) == sc


def test_region_round_trip():
    res = hatch_seq(ShapeSet(points=[(0, 0), (2, 0), (1, 1)]), "yx")
    doc = hatch_result_to_dict(res)
    assert set(doc["slabs"][0]) == {"y_lo", "y_hi", "x_lo_at_lo", "x_lo_at_hi", "x_hi_at_lo", "x_hi_at_hi"}
    back = parse_region(json.dumps(doc))
    assert back.region.orientation == "h"
    assert (back.region.data == res.region.data).all()
    assert back.residue.points == (Point(1, 1),)


def test_region_schema_errors():
    with pytest.raises(SchemaError) as err:
        parse_region('{"slabs": [{"y_lo": 0}]}')
    assert err.value.path == "$.slabs[0].y_hi"
    with pytest.raises(SchemaError) as err:
        parse_region('{"orientation": "q", "slabs": []}')
    assert err.value.path == "$.orientation"
