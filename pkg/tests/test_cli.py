import json
import subprocess
import sys

import numpy as np
import pytest

from tightspan.cli import run_cli
from tightspan.scene import parse_region


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_three_point_orders_differ_by_one_segment(tmp_path, capsys):
    xy, yx = tmp_path / "xy.json", tmp_path / "yx.json"
    assert run(capsys, "hatch", "@fig3_points", "--dir", "xy", "--out", str(xy))[0] == 0
    assert run(capsys, "hatch", "@fig3_points", "--dir", "yx", "--out", str(yx))[0] == 0
    a, b = parse_region(xy.read_text()), parse_region(yx.read_text())
    t = np.linspace(0, 1, 101)
    column = np.column_stack([np.ones_like(t), t])
    assert a.contains(column).all()
    assert b.contains(column).tolist() == [True] + [False] * 99 + [True]
    base = np.column_stack([np.linspace(0, 2, 41), np.zeros(41)])
    assert a.contains(base).all() and b.contains(base).all()
    # nothing else differs: off the column and the base both are empty
    rng = np.random.default_rng(0)
    pts = rng.uniform(-0.5, 2.5, (2000, 2))
    off = (np.abs(pts[:, 0] - 1) > 1e-6) & (np.abs(pts[:, 1]) > 1e-6)
    assert not a.contains(pts[off]).any() and not b.contains(pts[off]).any()


def test_tightspan_square(capsys):
    code, out, _ = run(capsys, "tightspan", "@square")
    assert code == 0
    doc = json.loads(out)
    assert doc["orientation"] == "h"
    assert [list(s.values()) for s in doc["slabs"]] == [[0, 1, 0, 0, 1, 1]]


def test_tightspan_writes_files(tmp_path, capsys):
    out, svg = tmp_path / "r.json", tmp_path / "r.svg"
    code, _, _ = run(capsys, "tightspan", "@lshape", "--out", str(out), "--svg", str(svg))
    assert code == 0 and svg.read_text().startswith("<?xml")
    assert len(json.loads(out.read_text())["slabs"]) == 2


def test_hatch_both_needs_connectivity(capsys):
    code, _, err = run(capsys, "hatch", "@fig3_points", "--dir", "both")
    assert code == 1 and "NotPathConnected" in err


def test_retract_prints_trace(tmp_path, capsys):
    svg = tmp_path / "t.svg"
    code, out, _ = run(capsys, "retract", "@lshape", "--point", "1.5,1.5", "--svg", str(svg))
    assert code == 0
    doc = json.loads(out)
    assert doc["final"] == [1.0, 1.0] and doc["steps"][0]["case"] == "three_quadrants"
    assert "marker-end" in svg.read_text()


def test_verify_arc_passes(capsys):
    code, out, _ = run(capsys, "verify", "@fig1_arc", "--checks", "commute,isometry", "--spacing", "1e-3")
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] and set(rep["checks"]) == {"commute", "isometry"}


def _box(x, y):
    return {"vertices": [[x, y], [x + 1, y], [x + 1, y + 1], [x, y + 1]], "closed": True}


def test_verify_failure_exits_one(tmp_path, capsys):
    # three separate boxes in the three-point layout: the two orders differ by a unit square
    scene = tmp_path / "boxes.json"
    scene.write_text(json.dumps({"polylines": [_box(0, 0), _box(4, 0), _box(2, 2)]}))
    code, out, _ = run(capsys, "verify", str(scene), "--checks", "commute")
    assert code == 1
    rep = json.loads(out)["checks"]["commute"]
    assert rep["pass"] is False and rep["symdiff_area"] == 1.0


def test_raster_check(capsys, tmp_path):
    pgm = tmp_path / "r.pgm"
    code, out, _ = run(capsys, "raster-check", "@lshape", "--resolution", "256", "--band", "2",
                       "--pgm", str(pgm))
    assert code == 0 and json.loads(out)["agreement"] >= 0.999
    assert pgm.read_bytes().startswith(b"P5")


def test_render_region_file(tmp_path, capsys):
    reg, svg = tmp_path / "r.json", tmp_path / "r.svg"
    run(capsys, "hatch", "@fig1_arc", "--dir", "x", "--out", str(reg))
    code, _, _ = run(capsys, "render", str(reg), "--svg", str(svg), "--witness", "0,0.5")
    assert code == 0 and "<path" in svg.read_text() and "<circle" in svg.read_text()


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["hatch", "@square"],
    ["hatch", "@square", "--dir", "z"],
    ["retract", "@square", "--point", "1"],
    ["retract", "@square", "--point", "nan,1"],
    ["verify", "@square", "--checks", "commute,bogus"],
    ["verify", "@square", "--spacing", "-1"],
    ["tightspan", "/no/such/file.json"],
    ["tightspan", "@no_such_fixture"],
    ["render", "@square"],
])
def test_usage_errors_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_schema_error_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": [[0, "x"]]}')
    code, _, err = run(capsys, "tightspan", str(bad))
    assert code == 2 and "$.points[0][1]" in err


def test_region_file_is_not_a_scene(tmp_path, capsys):
    reg = tmp_path / "r.json"
    run(capsys, "tightspan", "@square", "--out", str(reg))
    assert run(capsys, "tightspan", str(reg))[0] == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "tightspan", "tightspan", "@square"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["slabs"]
    proc = subprocess.run([sys.executable, "-m", "tightspan", "--bogus"], capture_output=True, text=True)
    assert proc.returncode == 2 and "usage" in proc.stderr
