"""Property suites behind ``tightspan verify``.

Each check returns a JSON-ready dict with at least a boolean ``"pass"``.
"""
from __future__ import annotations

import time

import numpy as np

from .geom import EPS, ShapeSet, quadrant_occupancy_many, sample_segments, sample_shape
from .hatch import cross_section, double_hatch, hatch_seq, symmetric_difference_area
from .retract import THREE, TWO, ONE, retract_point
from .verify import (embed_point, extremality_defect, gen_ball_system, geodesic_within,
                     hyperconvex_witness, kuratowski_gap, polyline_l1_length)

CHECKS = ("commute", "idempotent", "quadrant", "isometry", "hyperconvex", "geodesic", "retract")


def _bbox_area(shape: ShapeSet) -> float:
    x0, y0, x1, y1 = shape.bbox()
    return max((x1 - x0) * (y1 - y0), EPS)


def _padded_uniform(rng, bbox, n, pad=0.25):
    x0, y0, x1, y1 = bbox
    w, h = max(x1 - x0, EPS), max(y1 - y0, EPS)
    return np.column_stack([rng.uniform(x0 - pad * w, x1 + pad * w, n),
                            rng.uniform(y0 - pad * h, y1 + pad * h, n)])


def check_commute(shape: ShapeSet, **_) -> dict:
    t = time.perf_counter()
    xy = hatch_seq(shape, "xy")
    yx = hatch_seq(shape, "yx")
    gap = symmetric_difference_area(yx.region, xy.region)
    tol = 1e-9 * _bbox_area(shape)
    return {"pass": bool(gap <= tol), "symdiff_area": gap, "tolerance": tol,
            "seconds": time.perf_counter() - t}


def check_idempotent(shape: ShapeSet, region, rng, samples: int = 1000, **_) -> dict:
    again = double_hatch(region.as_shape())
    darea = abs(again.area() - region.area())
    x0, y0, x1, y1 = region.bbox()
    as_shape = region.as_shape()
    split = 0
    for y in rng.uniform(y0, y1, samples):
        split += len(cross_section(as_shape, "h", y)) > 1
    for x in rng.uniform(x0, x1, samples):
        split += len(cross_section(as_shape, "v", x)) > 1
    return {"pass": bool(darea <= 1e-9 and split == 0), "area_change": darea,
            "split_sections": split, "lines": 2 * samples}


def check_quadrant(shape: ShapeSet, region, rng, samples: int = 1000, **_) -> dict:
    pts = _padded_uniform(rng, shape.bbox(), samples)
    occ_shape = quadrant_occupancy_many(shape.segments(), pts)
    occ_region = quadrant_occupancy_many(region.edges(), pts)
    surrounded = occ_shape.all(axis=1)
    inside = region.contains(pts)
    escaped = int(np.sum(surrounded & ~inside))
    mismatch = int(np.sum(np.any(occ_shape != occ_region, axis=1)))
    return {"pass": escaped == 0 and mismatch == 0, "points": samples,
            "surrounded": int(surrounded.sum()), "surrounded_outside": escaped,
            "occupancy_mismatches": mismatch}


def check_isometry(shape: ShapeSet, region, rng, spacing: float, samples: int = 100, **_) -> dict:
    a = sample_shape(shape, spacing)
    p = region.sample(samples, rng)
    q = region.sample(samples, rng)
    gaps = [kuratowski_gap(a, p[i], q[i]) for i in range(samples)]
    defects = [extremality_defect(embed_point(a, p[i])) for i in range(samples)]
    worst_gap, worst_def = float(max(gaps)), float(max(defects))
    return {"pass": bool(worst_gap <= 2 * spacing and worst_def <= 2 * spacing),
            "spacing": spacing, "sample_size": len(a),
            "max_kuratowski_gap": worst_gap, "max_extremality_defect": worst_def}


def check_hyperconvex(shape: ShapeSet, region, seed: int, samples: int = 100, **_) -> dict:
    rng = np.random.default_rng(seed)
    missing, worst = 0, 0.0
    for k in range(samples):
        balls = gen_ball_system(region, int(rng.integers(3, 9)), seed * 100003 + k, tight=bool(k % 2))
        w = hyperconvex_witness(region, balls)
        if not hasattr(w, "x"):
            missing += 1
            continue
        d = np.abs(balls.centers - [w.x, w.y]).sum(1) - balls.radii
        worst = max(worst, float(d.max()))
    return {"pass": missing == 0 and worst <= 1e-9, "systems": samples,
            "missing_witnesses": missing, "max_ball_excess": worst}


def check_geodesic(shape: ShapeSet, region, rng, samples: int = 100, **_) -> dict:
    x0, y0, x1, y1 = region.bbox()
    step = max(x1 - x0, y1 - y0) / 500
    p = region.sample(samples, rng)
    q = region.sample(samples, rng)
    worst_len, outside = 0.0, 0
    for i in range(samples):
        path = geodesic_within(region, p[i], q[i])
        d = abs(p[i, 0] - q[i, 0]) + abs(p[i, 1] - q[i, 1])
        worst_len = max(worst_len, abs(polyline_l1_length(path) - d))
        along = sample_segments(path.segments(), step)
        outside += int(np.sum(~region.contains(along)))
    return {"pass": bool(worst_len <= 1e-9 and outside == 0), "pairs": samples,
            "max_length_error": float(worst_len), "points_outside": outside}


def check_retract(shape: ShapeSet, region, rng, samples: int = 1000, **_) -> dict:
    x0, y0, x1, y1 = region.bbox()
    pts = _padded_uniform(rng, (x0, y0, x1, y1), 4 * samples, pad=0.5)
    pts = pts[~region.contains(pts)][:samples]
    a = region.sample(samples, rng)
    cases = {ONE: 0, TWO: 0, THREE: 0}
    not_inside, worst = 0, -np.inf
    for p in pts:
        tr = retract_point(region, p)
        cases[tr.steps[0].case] = cases.get(tr.steps[0].case, 0) + 1
        q = tr.final
        not_inside += int(not region.contains(np.array([[q.x, q.y]]))[0])
        dq = np.abs(a - [q.x, q.y]).sum(1)
        dp = np.abs(a - p).sum(1)
        worst = max(worst, float(np.max(dq - dp)))
    return {"pass": bool(not_inside == 0 and worst <= 1e-9), "points": int(len(pts)),
            "cases": cases, "final_outside": not_inside, "max_distance_increase": worst}


def run_checks(shape: ShapeSet, names, seed: int = 0, spacing: float = 1e-3,
               samples: int | None = None) -> dict:
    """Run the named suites; ``samples`` overrides each suite's default size."""
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown check {unknown[0]!r}; choose from {', '.join(CHECKS)}")
    region = None
    report = {"seed": seed, "spacing": spacing, "checks": {}}
    for name in names:
        if name != "commute" and region is None:
            region = double_hatch(shape)
        rng = np.random.default_rng([seed, CHECKS.index(name)])
        kw = dict(region=region, rng=rng, seed=seed, spacing=spacing)
        if samples is not None:
            kw["samples"] = samples
        fn = globals()[f"check_{name}"]
        t = time.perf_counter()
        res = fn(shape, **kw)
        res.setdefault("seconds", time.perf_counter() - t)
        report["checks"][name] = res
    report["pass"] = all(r["pass"] for r in report["checks"].values())
    return report
