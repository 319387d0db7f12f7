"""Executable checks of tight-span properties.

Most checks lean on one identity: in the taxicab plane
``|dx| + |dy| = max over sign pairs s of s . (dx, dy)``, which turns every
``max_j (d(x_i, a_j) - c_j)`` into four running maxima.  That keeps the
extremality and admissibility checks linear in the sample size.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geom import EPS, Point, Polyline, as_point, from_uv, taxicab_distance
from .hatch import SlabRegion, merge_intervals

_S = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])


class InadmissibleBalls(ValueError):
    pass


class NoMonotonePath(RuntimeError):
    pass


@dataclass(frozen=True)
class TightSpanFunction:
    sample: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.sample) != len(self.values):
            raise ValueError("sample and values differ in length")
        if not np.all(np.isfinite(self.values)) or np.any(self.values < 0):
            raise ValueError("tight-span function values must be finite and nonnegative")

    def admissibility_slack(self) -> float:
        """min over pairs of f(a_i) + f(a_j) - d(a_i, a_j)."""
        a, f = self.sample, self.values
        proj = a @ _S.T
        return float(min(np.min(f - proj[:, k]) + np.min(f + proj[:, k]) for k in range(4)))

    def is_admissible(self, tol: float = EPS) -> bool:
        return self.admissibility_slack() >= -tol


@dataclass(frozen=True)
class BallSystem:
    centers: np.ndarray
    radii: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.centers, dtype=float).reshape(-1, 2)
        r = np.asarray(self.radii, dtype=float).reshape(-1)
        if len(c) != len(r) or len(c) == 0:
            raise InadmissibleBalls("need matching, nonempty centers and radii")
        if np.any(r < 0):
            raise InadmissibleBalls("negative radius")
        object.__setattr__(self, "centers", c)
        object.__setattr__(self, "radii", r)

    def pairwise_excess(self) -> float:
        """max over pairs of d(x_i, x_j) - r_i - r_j (<= 0 when admissible)."""
        c, r = self.centers, self.radii
        d = np.abs(c[:, None, :] - c[None, :, :]).sum(-1)
        return float(np.max(d - r[:, None] - r[None, :]))

    def is_admissible(self, tol: float = EPS) -> bool:
        return self.pairwise_excess() <= tol


@dataclass(frozen=True)
class HyperconvexViolation:
    """No point of the region lies in the common intersection of the balls."""

    rectangle_uv: tuple[float, float, float, float]
    reason: str


def _l1(a: np.ndarray, p) -> np.ndarray:
    return np.abs(a[:, 0] - p[0]) + np.abs(a[:, 1] - p[1])


def embed_point(sample, p) -> TightSpanFunction:
    a = np.asarray(sample, dtype=float).reshape(-1, 2)
    if len(a) == 0:
        raise ValueError("empty sample")
    return TightSpanFunction(a, _l1(a, p))


def kuratowski_gap(sample, p, q) -> float:
    a = np.asarray(sample, dtype=float).reshape(-1, 2)
    if len(a) == 0:
        raise ValueError("empty sample")
    sup = np.max(np.abs(_l1(a, p) - _l1(a, q)))
    return float(abs(taxicab_distance(p, q) - sup))


def extremality_defect(f: TightSpanFunction) -> float:
    a, v = f.sample, f.values
    proj = a @ _S.T
    # max_j (d(a_i, a_j) - v_j) = max_s [s.a_i + max_j (-s.a_j - v_j)]
    best = np.max(proj + np.max(-proj - v[:, None], axis=0)[None, :], axis=1)
    return float(np.max(np.abs(v - best)))


def extremality_defect_bruteforce(f: TightSpanFunction) -> float:
    a, v = f.sample, f.values
    d = np.abs(a[:, None, :] - a[None, :, :]).sum(-1)
    return float(np.max(np.abs(v - np.max(d - v[None, :], axis=1))))


# --- hyperconvexity witnesses --------------------------------------------------

def _clip(poly: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    """Keep the part of a convex polygon with a*x + b*y <= c."""
    if len(poly) == 0:
        return poly
    val = poly @ np.array([a, b]) - c
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        vp, vq = val[i], val[(i + 1) % n]
        if vp <= 0:
            out.append(p)
        if (vp < 0 < vq) or (vq < 0 < vp):
            out.append(p + (q - p) * (vp / (vp - vq)))
    return np.array(out).reshape(-1, 2)


def _rectangle(balls: BallSystem):
    uv = np.column_stack([balls.centers.sum(1), balls.centers[:, 0] - balls.centers[:, 1]])
    r = balls.radii
    return (float(np.max(uv[:, 0] - r)), float(np.min(uv[:, 0] + r)),
            float(np.max(uv[:, 1] - r)), float(np.min(uv[:, 1] + r)))


def _witness_ok(region: SlabRegion, balls: BallSystem, w: Point) -> bool:
    if not region.contains(np.array([[w.x, w.y]]))[0]:
        return False
    return bool(np.all(_l1(balls.centers, w) <= balls.radii + EPS))


def hyperconvex_witness(region: SlabRegion, balls: BallSystem):
    """A point of ``region`` in every ball, or a :class:`HyperconvexViolation`.

    In (u, v) = (x + y, x - y) each taxicab ball is an axis-aligned square,
    so the common intersection is a rectangle; it is searched at its corners
    and edge midpoints first, then slab by slab.
    """
    if not balls.is_admissible():
        raise InadmissibleBalls("ball system violates d(x_i, x_j) <= r_i + r_j")
    u0, u1, v0, v1 = _rectangle(balls)
    if u0 > u1 + EPS or v0 > v1 + EPS:
        raise InadmissibleBalls("balls have empty common intersection")
    u1, v1 = max(u0, u1), max(v0, v1)

    def snap(u, v):
        return from_uv(min(max(u, u0), u1), min(max(v, v0), v1))

    um, vm = (u0 + u1) / 2, (v0 + v1) / 2
    for u, v in ((u0, v0), (u0, v1), (u1, v0), (u1, v1), (um, v0), (um, v1), (u0, vm), (u1, vm)):
        w = snap(u, v)
        if _witness_ok(region, balls, w):
            return w

    found = []
    frame = region.data
    for tol in (0.0, EPS):
        for s0, s1, la, lb, ha, hb in frame:
            poly = np.array([[la, s0], [ha, s0], [hb, s1], [lb, s1]])
            if region.orientation == "v":
                poly = poly[:, ::-1]
            for a, b, c in ((-1, -1, -(u0 - tol)), (1, 1, u1 + tol), (-1, 1, -(v0 - tol)), (1, -1, v1 + tol)):
                poly = _clip(poly, a, b, c)
            if len(poly):
                cx, cy = poly.mean(axis=0)
                w = snap(cx + cy, cx - cy)
                if _witness_ok(region, balls, w):
                    found.append((w.x + w.y, w.x - w.y, w))
        if found:
            return min(found, key=lambda t: (t[0], t[1]))[2]
    return HyperconvexViolation((u0, u1, v0, v1), "region misses the ball intersection")


def gen_ball_system(region: SlabRegion, n: int, seed: int, slack_scale: float = 0.1,
                    tight: bool = False) -> BallSystem:
    """Admissible balls centred in ``region``.

    Radii are ``max_j d(x_i, x_j) / 2`` plus a random slack of up to
    ``slack_scale`` times the region's taxicab diameter.  With ``tight`` the
    radii are then shrunk one by one to ``max_j (d_ij - r_j)``, which keeps
    the system admissible but leaves no slack at all.
    """
    if n < 1:
        raise ValueError("need at least one ball")
    rng = np.random.default_rng(seed)
    c = region.sample(n, rng)
    d = np.abs(c[:, None, :] - c[None, :, :]).sum(-1)
    x0, y0, x1, y1 = region.bbox()
    slack = rng.random(n) * slack_scale * ((x1 - x0) + (y1 - y0))
    r = d.max(axis=1) / 2 + slack
    if tight:
        for i in range(n):
            others = np.arange(n) != i
            r[i] = max(0.0, float(np.max(d[i, others] - r[others]))) if n > 1 else 0.0
    return BallSystem(c, r)


# --- geodesics -----------------------------------------------------------------

def _covers(region: SlabRegion, y: float, a: float, b: float) -> bool:
    """Whether the frame cross-section at ``y`` contains all of ``[a, b]``."""
    d = region.data
    rows = d[(d[:, 0] <= y + EPS) & (d[:, 1] >= y - EPS)]
    if len(rows) == 0:
        return False
    h = rows[:, 1] - rows[:, 0]
    t = np.clip(np.where(h > 0, (y - rows[:, 0]) / np.where(h > 0, h, 1.0), 0.0), 0.0, 1.0)
    lo = rows[:, 2] + t * (rows[:, 3] - rows[:, 2])
    hi = rows[:, 4] + t * (rows[:, 5] - rows[:, 4])
    return any(l <= a + EPS and r >= b - EPS for l, r in merge_intervals(zip(lo, hi)))


def _staircase(region: SlabRegion, p, q) -> list[tuple[float, float]]:
    """Monotone path p -> q in an "h"-frame region with p <= q coordinatewise."""
    px, py = p
    qx, qy = q
    verts = [(px, py)]
    if qy > py:
        d = region.data
        pos = d[(d[:, 1] > d[:, 0]) & (d[:, 1] > py) & (d[:, 0] < qy)]
        cur, y = px, py
        for s0, s1, la, lb, ha, hb in pos:
            ya, yb = max(s0, py), min(s1, qy)
            if ya > y + EPS:
                raise NoMonotonePath(f"region has no cross-section between {y} and {ya}")

            def at(a, b, t):
                return a + (t - s0) / (s1 - s0) * (b - a)

            lo_a, lo_b, hi_a, hi_b = at(la, lb, ya), at(la, lb, yb), at(ha, hb, ya), at(ha, hb, yb)
            if lo_a > cur:
                if not _covers(region, ya, cur, lo_a):
                    raise NoMonotonePath(f"cannot step right at height {ya}")
                cur = lo_a
                verts.append((cur, ya))
            if cur > hi_a + EPS:
                raise NoMonotonePath(f"path leaves the region at height {ya}")
            if lo_b > cur:
                yc = ya + (cur - lo_a) / (lo_b - lo_a) * (yb - ya)
                if yc > ya:
                    verts.append((cur, yc))
                cur = lo_b
            elif cur > hi_b + EPS:
                raise NoMonotonePath(f"path leaves the region at height {yb}")
            verts.append((cur, yb))
            y = yb
            if cur > qx + EPS:
                raise NoMonotonePath("forced past the target abscissa")
            if y >= qy:
                break
        if y < qy - EPS:
            raise NoMonotonePath(f"region has no cross-section between {y} and {qy}")
    else:
        cur = px
    if qx > cur and not _covers(region, qy, cur, qx):
        raise NoMonotonePath(f"cannot step right at height {qy}")
    verts.append((qx, qy))
    out = [verts[0]]
    for v in verts[1:]:
        if abs(v[0] - out[-1][0]) + abs(v[1] - out[-1][1]) > 0:
            out.append(v)
    return out


def geodesic_within(region: SlabRegion, p, q) -> Polyline:
    """Monotone polyline from ``p`` to ``q`` inside ``region`` of taxicab
    length ``d(p, q)``; it hugs the lower envelope as tightly as possible."""
    p, q = as_point(p), as_point(q)
    if not region.contains(np.array([[p.x, p.y], [q.x, q.y]])).all():
        raise ValueError("geodesic endpoints must lie in the region")
    swap = region.orientation == "v"
    fp = (p.y, p.x) if swap else (p.x, p.y)
    fq = (q.y, q.x) if swap else (q.x, q.y)
    sx = 1 if fq[0] >= fp[0] else -1
    sy = 1 if fq[1] >= fp[1] else -1
    frame = SlabRegion(region.data, "h").reflected(sx, sy)
    path = _staircase(frame, (sx * fp[0], sy * fp[1]), (sx * fq[0], sy * fq[1]))
    pts = [(sx * a, sy * b) for a, b in path]
    if swap:
        pts = [(b, a) for a, b in pts]
    pts[0], pts[-1] = (p.x, p.y), (q.x, q.y)
    cleaned = [pts[0]]
    for v in pts[1:]:
        if max(abs(v[0] - cleaned[-1][0]), abs(v[1] - cleaned[-1][1])) > EPS:
            cleaned.append(v)
        else:
            if len(cleaned) > 1 and v == pts[-1]:
                cleaned[-1] = v
    return Polyline(cleaned)


def polyline_l1_length(pl: Polyline) -> float:
    s = pl.segments()
    return float(np.sum(np.abs(s[:, 2] - s[:, 0]) + np.abs(s[:, 3] - s[:, 1])))
