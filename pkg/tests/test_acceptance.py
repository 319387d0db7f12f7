"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are echoed
in the terminal summary at the end of any pytest run that includes them.
"""
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, CONNECTED_FIXTURES, random_walk
from tightspan.cli import run_cli
from tightspan.geom import Point, quadrant_occupancy_many, sample_segments, sample_shape
from tightspan.hatch import cross_section, double_hatch, hatch_seq, symmetric_difference_area
from tightspan.raster import compare_membership, frame_for, raster_double_hatch
from tightspan.retract import ONE, THREE, TWO, retract_point
from tightspan.verify import (embed_point, extremality_defect, gen_ball_system, geodesic_within,
                              hyperconvex_witness, kuratowski_gap, polyline_l1_length)

GOLDEN = Path(__file__).parent / "golden"
TOL = 1e-9


def report(n: int, ok: bool, detail: str):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[n] = line
    print(line)
    assert ok, line


def test_criterion_01_commutativity(scenes):
    corpus = [(f"walk{s}", random_walk(s)) for s in range(50)]
    assert all(sum(len(pl.vertices) for pl in w.polylines) <= 100 for _, w in corpus)
    corpus += [(n, scenes[n].shapes) for n in ("fig1_arc", "fig7_contour")]
    worst_ratio, slowest, failures = 0.0, 0.0, []
    for name, shape in corpus:
        t = time.perf_counter()
        gap = symmetric_difference_area(hatch_seq(shape, "yx").region, hatch_seq(shape, "xy").region)
        dt = time.perf_counter() - t
        x0, y0, x1, y1 = shape.bbox()
        limit = TOL * (x1 - x0) * (y1 - y0)
        worst_ratio = max(worst_ratio, gap / ((x1 - x0) * (y1 - y0)))
        slowest = max(slowest, dt)
        if gap > limit or dt >= 1.0:
            failures.append(name)
    report(1, not failures, f"{len(corpus)} sets, max symdiff/bbox = {worst_ratio:.2e}, "
                            f"slowest {slowest:.3f}s, failures {failures}")


def test_criterion_02_three_point_orders(scenes):
    shape = scenes["fig3_points"].shapes
    xy, yx = hatch_seq(shape, "xy"), hatch_seq(shape, "yx")
    # "xy" (x first): in its swapped frame, columns x=0..1 and 1..2 at y=0 plus x=1 for y in [0, 1]
    xy_ok = (xy.region.orientation == "v" and xy.residue.is_empty()
             and sorted(map(tuple, xy.region.data.tolist())) ==
             [(0.0, 1.0, 0.0, 0.0, 0.0, 0.0), (1.0, 1.0, 0.0, 0.0, 1.0, 1.0), (1.0, 2.0, 0.0, 0.0, 0.0, 0.0)])
    yx_ok = (yx.region.orientation == "h" and yx.region.data.tolist() == [[0.0, 0.0, 0.0, 0.0, 2.0, 2.0]]
             and yx.residue.points == (Point(1.0, 1.0),))
    report(2, xy_ok and yx_ok, f"xy = bottom + segment (1,0)-(1,1): {xy_ok}; "
                               f"yx = bottom + isolated (1,1): {yx_ok}")


def test_criterion_03_idempotence(regions):
    rng = np.random.default_rng(3)
    worst_area, split = 0.0, 0
    for name in CONNECTED_FIXTURES:
        r = regions[name]
        worst_area = max(worst_area, abs(double_hatch(r.as_shape()).area() - r.area()))
        x0, y0, x1, y1 = r.bbox()
        shape = r.as_shape()
        split += sum(len(cross_section(shape, "h", y)) > 1 for y in rng.uniform(y0, y1, 1000))
        split += sum(len(cross_section(shape, "v", x)) > 1 for x in rng.uniform(x0, x1, 1000))
    report(3, worst_area <= TOL and split == 0,
           f"max area change {worst_area:.2e}, split cross-sections {split} of {len(CONNECTED_FIXTURES) * 2000}")


def test_criterion_04_quadrants(scenes, regions):
    rng = np.random.default_rng(4)
    escaped, mismatch, surrounded = 0, 0, 0
    for name in CONNECTED_FIXTURES:
        shape, r = scenes[name].shapes, regions[name]
        x0, y0, x1, y1 = shape.bbox()
        w, h = x1 - x0, y1 - y0
        pts = np.column_stack([rng.uniform(x0 - w / 4, x1 + w / 4, 2000), rng.uniform(y0 - h / 4, y1 + h / 4, 2000)])
        occ_a = quadrant_occupancy_many(shape.segments(), pts)
        occ_l = quadrant_occupancy_many(r.edges(), pts)
        full = occ_a.all(axis=1)
        surrounded += int(full.sum())
        escaped += int(np.sum(full & ~r.contains(pts)))
        mismatch += int(np.sum(occ_a != occ_l))
    report(4, escaped == 0 and mismatch == 0,
           f"{surrounded} surrounded points all inside; occupancy mismatches {mismatch} over "
           f"{len(CONNECTED_FIXTURES) * 2000 * 4} (point, quadrant) pairs")


def test_criterion_05_retraction(regions):
    rng = np.random.default_rng(5)
    cases = {ONE: 0, TWO: 0, THREE: 0}
    outside, worst = 0, -np.inf
    for name in CONNECTED_FIXTURES:
        r = regions[name]
        x0, y0, x1, y1 = r.bbox()
        w, h = x1 - x0, y1 - y0
        cand = np.column_stack([rng.uniform(x0 - w / 2, x1 + w / 2, 5000), rng.uniform(y0 - h / 2, y1 + h / 2, 5000)])
        ext = cand[~r.contains(cand)][:1000]
        assert len(ext) == 1000
        a = r.sample(1000, rng)
        for p in ext:
            tr = retract_point(r, p)
            cases[tr.steps[0].case] += 1
            q = np.array([tr.final.x, tr.final.y])
            outside += int(not r.contains(q[None])[0])
            worst = max(worst, float(np.max(np.abs(a - q).sum(1) - np.abs(a - p).sum(1))))
    ok = outside == 0 and worst <= TOL and all(v > 0 for v in cases.values())
    report(5, ok, f"finals outside {outside}, max d(q,a)-d(p,a) = {worst:.2e}, cases {cases}")


def test_criterion_06_isometry(scenes, regions):
    h = 1e-3
    rng = np.random.default_rng(6)
    worst_gap, worst_def = 0.0, 0.0
    for name in ("fig1_arc", "fig7_contour"):
        a = sample_shape(scenes[name].shapes, h)
        p, q = regions[name].sample(100, rng), regions[name].sample(100, rng)
        worst_gap = max(worst_gap, max(kuratowski_gap(a, p[i], q[i]) for i in range(100)))
        worst_def = max(worst_def, max(extremality_defect(embed_point(a, p[i])) for i in range(100)))
    report(6, worst_gap <= 2 * h and worst_def <= 2 * h,
           f"max Kuratowski gap {worst_gap:.2e}, max extremality defect {worst_def:.2e} (limit {2 * h:.0e})")


def test_criterion_07_hyperconvexity(regions):
    missing, worst, total = 0, -np.inf, 0
    for k, name in enumerate(CONNECTED_FIXTURES):
        rng = np.random.default_rng(700 + k)
        for i in range(100):
            balls = gen_ball_system(regions[name], int(rng.integers(3, 9)), 1000 * k + i, tight=bool(i % 2))
            total += 1
            w = hyperconvex_witness(regions[name], balls)
            if not isinstance(w, Point) or not regions[name].contains([[w.x, w.y]])[0]:
                missing += 1
                continue
            worst = max(worst, float(np.max(np.abs(balls.centers - [w.x, w.y]).sum(1) - balls.radii)))
    report(7, missing == 0 and worst <= TOL,
           f"{total} systems, missing witnesses {missing}, max ball excess {worst:.2e}")


def test_criterion_08_geodesics(regions):
    rng = np.random.default_rng(8)
    worst, outside = 0.0, 0
    for name in CONNECTED_FIXTURES:
        r = regions[name]
        x0, y0, x1, y1 = r.bbox()
        step = max(x1 - x0, y1 - y0) / 1000
        p, q = r.sample(100, rng), r.sample(100, rng)
        for i in range(100):
            path = geodesic_within(r, p[i], q[i])
            worst = max(worst, abs(polyline_l1_length(path) - np.abs(p[i] - q[i]).sum()))
            outside += int(np.sum(~r.contains(sample_segments(path.segments(), step))))
    report(8, worst <= TOL and outside == 0,
           f"max |length - d1| = {worst:.2e}, path samples outside {outside}")


def test_criterion_09_raster_oracle(scenes, regions):
    parts, ok = [], True
    for name in CONNECTED_FIXTURES:
        shape = scenes[name].shapes
        x0, y0, x1, y1 = shape.bbox()
        res = 1024 / max(x1 - x0, y1 - y0)
        bm = raster_double_hatch(shape, res, "xy", frame_for((x0, y0, x1, y1), res))
        agree = compare_membership(regions[name], bm, 2)
        ok &= agree.agreement >= 0.999
        parts.append(f"{name} {agree.agreement:.5f}")
    report(9, ok, "agreement at 1024 px, band 2: " + ", ".join(parts))


def test_criterion_10_figures(tmp_path, capsys):
    panels = [("fig1_arc", p) for p in ("A", "Lx", "Ly")] + [("fig7_contour", p) for p in ("A", "Lx", "Ly", "L")]
    differ = []
    for scene, panel in panels:
        out = tmp_path / f"{scene}_{panel}.svg"
        assert run_cli(["render", f"@{scene}", "--panel", panel, "--svg", str(out)]) == 0
        again = tmp_path / "again.svg"
        run_cli(["render", f"@{scene}", "--panel", panel, "--svg", str(again)])
        golden = (GOLDEN / out.name).read_bytes()
        if out.read_bytes() != golden or again.read_bytes() != golden:
            differ.append(out.name)
    capsys.readouterr()
    report(10, not differ, f"{len(panels)} panels byte-identical to golden files; differing {differ}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
