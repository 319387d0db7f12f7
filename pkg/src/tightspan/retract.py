"""Nonexpansive retraction of an outside point onto an L-invariant region.

The construction follows the quadrant case analysis: depending on how many
closed quadrants of ``p`` meet the region, ``p`` is slid diagonally until an
elbow touches the region (three or one quadrant) or straight along an axis
(two quadrants), with small diagonal nudges to move between cases.  Each
step is distance non-increasing towards every point of the region, so the
composed map is a nonexpansive retraction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .geom import (EPS, Point, QuadrantOccupancy, ShapeError, as_point,
                   l1_distance_to_segments, quadrant_occupancy)
from .hatch import SlabRegion

INTERIOR = "interior"
ONE = "one_quadrant"
TWO = "two_quadrants"
THREE = "three_quadrants"
PERTURB = "perturb"

MAX_DEPTH = 3


class RetractionError(RuntimeError):
    pass


class RetractionCase(NamedTuple):
    tag: str
    occupied: QuadrantOccupancy
    direction: tuple[int, int] | None
    """Unit step of the next move: diagonal for one/three quadrants, along an
    axis (towards the region) for two quadrants, ``None`` inside."""


@dataclass(frozen=True)
class RetractionStep:
    point: Point
    case: str
    clearance: float


@dataclass
class RetractionTrace:
    steps: list = field(default_factory=list)
    final: Point | None = None

    def to_json(self) -> dict:
        return {
            "steps": [{"point": [s.point.x, s.point.y], "case": s.case, "clearance": s.clearance}
                      for s in self.steps],
            "final": [self.final.x, self.final.y],
        }


def distance_to_region(region: SlabRegion, p) -> float:
    if region.contains(np.array([[p[0], p[1]]]))[0]:
        return 0.0
    return l1_distance_to_segments(p, region.edges())


def classify_case(region: SlabRegion, p) -> RetractionCase:
    p = as_point(p)
    if region.is_empty():
        raise ShapeError("empty region")
    occ = quadrant_occupancy(region.as_shape(), p)
    if region.contains(np.array([[p.x, p.y]]))[0]:
        return RetractionCase(INTERIOR, occ, None)
    signs = occ.occupied()
    n = len(signs)
    if n == 4:
        raise RetractionError(f"inconsistent occupancy at ({p.x}, {p.y}): four quadrants but outside")
    if n == 3:
        (mx, my), = [s for s in ((1, 1), (1, -1), (-1, 1), (-1, -1)) if s not in signs]
        return RetractionCase(THREE, occ, (-mx, -my))
    if n == 2:
        (ax, ay), (bx, by) = signs
        if ax != bx and ay != by:
            raise RetractionError(f"inconsistent occupancy at ({p.x}, {p.y}): diagonal quadrants")
        step = (0, ay) if ay == by else (ax, 0)
        return RetractionCase(TWO, occ, step)
    if n == 1:
        return RetractionCase(ONE, occ, signs[0])
    raise RetractionError("no quadrant meets the region")


# --- elbow sweep ----------------------------------------------------------

def _edge_min_max(e: np.ndarray, px: float, py: float) -> np.ndarray:
    """min over each edge of max(x - px, y - py)."""
    a0 = e[:, 0] - px
    b0 = e[:, 1] - py
    da = e[:, 2] - e[:, 0]
    db = e[:, 3] - e[:, 1]
    den = da - db
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.clip(np.where(den != 0, (b0 - a0) / np.where(den != 0, den, 1.0), 0.0), 0.0, 1.0)
    return np.minimum.reduce([np.maximum(a0, b0), np.maximum(a0 + da, b0 + db),
                              np.maximum(a0 + t * da, b0 + t * db)])


def elbow_clearance(region: SlabRegion, p, direction, elbow_signs) -> float:
    """Largest ``eps0`` such that the elbows of ``p + direction*t`` miss the
    region for every ``t`` in ``[0, eps0)``.

    ``direction`` must be parallel to the elbow signs (the elbow either
    trails the motion or leads it); those are the only sweeps the
    retraction uses.
    """
    ex, ey = elbow_signs
    dx, dy = direction
    # reflect so the elbow points into the (-,-) quadrant
    fx, fy = -ex, -ey
    ddx, ddy = fx * dx, fy * dy
    if (ddx, ddy) not in ((1, 1), (-1, -1)):
        raise ValueError("direction must be parallel to the elbow signs")
    px, py = fx * p[0], fy * p[1]
    k = len(region.data)
    if k == 0:
        raise ShapeError("empty region")
    e = region.edges() * np.array([fx, fy, fx, fy])
    phi = _edge_min_max(e, px, py).reshape(4, k).min(axis=0)
    xs = np.concatenate([e[:, 0], e[:, 2]]).reshape(8, k).max(axis=0) - px
    ys = np.concatenate([e[:, 1], e[:, 3]]).reshape(8, k).max(axis=0) - py
    psi = np.maximum(xs, ys)
    # the quadrant meets a slab iff phi(t) <= 0; its boundary does iff psi(t) >= 0 too
    if (ddx, ddy) == (1, 1):
        first, last = np.maximum(0.0, phi), psi
    else:
        first, last = np.maximum(0.0, -psi), -phi
    ok = first <= last + EPS
    if not ok.any():
        raise RetractionError("no contact along sweep")
    eps0 = float(first[ok].min())
    return 0.0 if eps0 <= EPS else eps0


# --- two-quadrant axis clearances ----------------------------------------------

class _Frame(NamedTuple):
    """world -> normalized: optional x/y swap, then reflection by (sx, sy)."""

    swap: bool
    sx: int
    sy: int

    def fwd(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        if self.swap:
            pts = pts[:, ::-1]
        return pts * np.array([self.sx, self.sy])

    def back(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float).reshape(-1, 2) * np.array([self.sx, self.sy])
        return pts[:, ::-1] if self.swap else pts


def _lowest_above(edges: np.ndarray, px: float, side: int) -> float:
    """min of y over the edges restricted to side*(x - px) >= 0."""
    x0, y0, x1, y1 = edges.T
    a = side * (x0 - px)
    b = side * (x1 - px)
    keep = (a >= -EPS) | (b >= -EPS)
    best = np.inf
    both = keep & (a >= -EPS) & (b >= -EPS)
    if both.any():
        best = min(best, float(np.minimum(y0, y1)[both].min()))
    cut = keep & ~both
    if cut.any():
        t = a[cut] / (a[cut] - b[cut])
        yc = y0[cut] + t * (y1[cut] - y0[cut])
        inside = np.where(a[cut] >= -EPS, y0[cut], y1[cut])
        best = min(best, float(np.minimum(yc, inside).min()))
    return best


def _two_quadrant_frame(region: SlabRegion, p, case: RetractionCase):
    ax, ay = case.direction
    swap = ax != 0
    sy = (ax if swap else ay)
    frame = _Frame(swap, 1, sy)
    e = region.edges()
    ne = np.hstack([frame.fwd(e[:, 0:2]), frame.fwd(e[:, 2:4])])
    q = frame.fwd(np.array([p[0], p[1]]))[0]
    t_plus = _lowest_above(ne, q[0], +1) - q[1]
    t_minus = _lowest_above(ne, q[0], -1) - q[1]
    if t_plus <= t_minus:
        return frame, t_plus, t_minus
    return _Frame(swap, -1, sy), t_minus, t_plus


def axis_clearances(region: SlabRegion, p, open_axis: str | None = None) -> tuple[float, float]:
    """``(t0, t1)`` with ``t0 <= t1``: offsets towards the region at which the
    two perpendicular rays from the moving point first meet it.

    ``open_axis`` names the axis of motion (``"y"`` when the occupied pair is
    upper or lower); it is inferred from the occupancy when omitted.
    """
    case = classify_case(region, p)
    if case.tag != TWO:
        raise RetractionError(f"axis clearances need the two-quadrant case, got {case.tag}")
    moving = "x" if case.direction[0] != 0 else "y"
    if open_axis is not None and open_axis != moving:
        raise ValueError(f"occupied quadrants open along {moving}, not {open_axis}")
    _, t0, t1 = _two_quadrant_frame(region, p, case)
    return t0, t1


# --- the retraction ------------------------------------------------------------

def _inside(region, q) -> bool:
    return bool(region.contains(np.array([[q.x, q.y]]))[0])


def retract_point(region: SlabRegion, p) -> RetractionTrace:
    p = as_point(p)
    trace = RetractionTrace()
    cur = p
    depth = 0
    while True:
        case = classify_case(region, cur)
        if case.tag == INTERIOR:
            if not trace.steps:
                trace.steps.append(RetractionStep(cur, INTERIOR, 0.0))
            trace.final = cur
            return trace
        depth += 1
        if depth > MAX_DEPTH:
            raise RetractionError("max depth exceeded")
        if case.tag in (THREE, ONE):
            d = case.direction
            elbow = (-d[0], -d[1]) if case.tag == THREE else d
            eps0 = elbow_clearance(region, cur, d, elbow)
            trace.steps.append(RetractionStep(cur, case.tag, eps0))
            q = Point(cur.x + d[0] * eps0, cur.y + d[1] * eps0)
            if _inside(region, q) or case.tag == THREE:
                cur = q
                continue
            # nudge past the touching elbow into a two/three-quadrant position
            delta = distance_to_region(region, q) / 4.0
            trace.steps.append(RetractionStep(q, PERTURB, delta))
            cur = Point(q.x + d[0] * delta, q.y + d[1] * delta)
            continue
        # two quadrants
        frame, t0, t1 = _two_quadrant_frame(region, cur, case)
        trace.steps.append(RetractionStep(cur, TWO, float(t0)))
        c = frame.fwd(np.array([cur.x, cur.y]))[0]
        q = Point(*frame.back(np.array([c[0], c[1] + t0]))[0])
        if _inside(region, q):
            cur = q
            continue
        gap = distance_to_region(region, q)
        eps = 0.5 * min(gap / 2.0, t1 - t0)
        trace.steps.append(RetractionStep(q, PERTURB, float(eps)))
        cur = Point(*frame.back(np.array([c[0] + eps, c[1] + t0 + eps]))[0])
