"""Hatching operators and the slab-stack regions they produce.

A :class:`SlabRegion` is stored in a *frame* where its cross-sections are
horizontal: an ``"h"`` region is stored as-is, a ``"v"`` region with x and
y exchanged.  Every algorithm here is therefore written once, for
horizontal hatching, and the vertical variants swap coordinates on the way
in and out.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .geom import EPS, Point, ShapeError, ShapeSet, path_connectedness_check

# relative tolerance used when comparing crossing parameters inside a gap
_SNAP = 1e-12


class NotPathConnected(ShapeError):
    pass


class CommutationError(AssertionError):
    """The two hatching orders disagreed on an input claimed to be path connected."""


@dataclass(frozen=True)
class Slab:
    """One trapezoid of a slab stack, in the region's frame.

    For ``"v"`` regions the names refer to swapped axes: ``y_lo``/``y_hi``
    bound x, and the envelopes give y.
    """

    y_lo: float
    y_hi: float
    x_lo_at_lo: float
    x_lo_at_hi: float
    x_hi_at_lo: float
    x_hi_at_hi: float

    def _t(self, y):
        h = self.y_hi - self.y_lo
        return 0.0 if h <= 0 else min(1.0, max(0.0, (y - self.y_lo) / h))

    def x_lo_at(self, y: float) -> float:
        return self.x_lo_at_lo + self._t(y) * (self.x_lo_at_hi - self.x_lo_at_lo)

    def x_hi_at(self, y: float) -> float:
        return self.x_hi_at_lo + self._t(y) * (self.x_hi_at_hi - self.x_hi_at_lo)


SLAB_FIELDS = ("y_lo", "y_hi", "x_lo_at_lo", "x_lo_at_hi", "x_hi_at_lo", "x_hi_at_hi")


class SlabRegion:
    """Closed region given as a stack of trapezoidal slabs.

    ``data`` is a ``(k, 6)`` array of :data:`SLAB_FIELDS` in the region frame,
    sorted by ``(y_lo, y_hi)`` with disjoint interiors.
    """

    __slots__ = ("orientation", "data")

    def __init__(self, data=(), orientation: str = "h"):
        if orientation not in ("h", "v"):
            raise ValueError(f"orientation must be 'h' or 'v', got {orientation!r}")
        data = np.array(data, dtype=float).reshape(-1, 6)
        if not np.all(np.isfinite(data)):
            raise ShapeError("non-finite slab coordinate")
        if np.any(data[:, 1] < data[:, 0]):
            raise ShapeError("slab with y_hi < y_lo")
        if np.any(data[:, 2] > data[:, 4] + EPS) or np.any(data[:, 3] > data[:, 5] + EPS):
            raise ShapeError("slab with crossed envelopes")
        order = np.lexsort((data[:, 1], data[:, 0]))
        self.data = data[order]
        self.data.setflags(write=False)
        self.orientation = orientation

    def __repr__(self):
        return f"SlabRegion({len(self.data)} slabs, orientation={self.orientation!r})"

    def __len__(self):
        return len(self.data)

    def is_empty(self) -> bool:
        return len(self.data) == 0

    @property
    def slabs(self) -> list[Slab]:
        return [Slab(*map(float, row)) for row in self.data]

    # -- frame helpers -------------------------------------------------------
    def _to_frame(self, pts: np.ndarray) -> np.ndarray:
        return pts[:, ::-1] if self.orientation == "v" else pts

    def frame_edges(self) -> np.ndarray:
        d = self.data
        if len(d) == 0:
            return np.empty((0, 4))
        s0, s1, la, lb, ha, hb = d.T
        return np.vstack([
            np.column_stack([la, s0, ha, s0]),
            np.column_stack([lb, s1, hb, s1]),
            np.column_stack([la, s0, lb, s1]),
            np.column_stack([ha, s0, hb, s1]),
        ])

    def edges(self) -> np.ndarray:
        e = self.frame_edges()
        return e[:, [1, 0, 3, 2]] if self.orientation == "v" else e

    def pieces(self) -> list[np.ndarray]:
        e = self.edges()
        k = len(self.data)
        return [e[[i, i + k, i + 2 * k, i + 3 * k]] for i in range(k)]

    # -- queries -------------------------------------------------------------
    def contains(self, pts, eps: float = EPS) -> np.ndarray:
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        return _kernels.member(self.data, np.ascontiguousarray(self._to_frame(pts)), eps)

    def area(self) -> float:
        d = self.data
        if len(d) == 0:
            return 0.0
        return float(np.sum((d[:, 1] - d[:, 0]) * ((d[:, 4] - d[:, 2]) + (d[:, 5] - d[:, 3])) / 2.0))

    def bbox(self) -> tuple[float, float, float, float]:
        if self.is_empty():
            raise ShapeError("empty region")
        d = self.data
        a, b, c, e = d[:, 2:4].min(), d[:, 0].min(), d[:, 4:6].max(), d[:, 1].max()
        if self.orientation == "v":
            return float(b), float(a), float(e), float(c)
        return float(a), float(b), float(c), float(e)

    def as_shape(self) -> ShapeSet:
        return ShapeSet(regions=(self,))

    def transposed(self) -> "SlabRegion":
        """Mirror in the diagonal x = y (same slab data, other orientation)."""
        return SlabRegion(self.data, "h" if self.orientation == "v" else "v")

    def reflected(self, sx: int, sy: int) -> "SlabRegion":
        """Image under (x, y) -> (sx*x, sy*y)."""
        fs, fx = (sx, sy) if self.orientation == "v" else (sy, sx)
        d = self.data.copy()
        if fs < 0:
            d[:, [0, 1, 2, 3, 4, 5]] = d[:, [1, 0, 3, 2, 5, 4]]
            d[:, 0:2] *= -1
        if fx < 0:
            d[:, [2, 3, 4, 5]] = -d[:, [4, 5, 2, 3]]
        return SlabRegion(d, self.orientation)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """``n`` points uniform by area (by boundary length for flat regions)."""
        d = self.data
        areas = (d[:, 1] - d[:, 0]) * ((d[:, 4] - d[:, 2]) + (d[:, 5] - d[:, 3])) / 2.0
        if areas.sum() <= 0:
            e = self.edges()
            lens = np.hypot(e[:, 2] - e[:, 0], e[:, 3] - e[:, 1]) + 1e-300
            idx = rng.choice(len(e), size=n, p=lens / lens.sum())
            t = rng.random(n)[:, None]
            return e[idx, 0:2] + t * (e[idx, 2:4] - e[idx, 0:2])
        idx = rng.choice(len(d), size=n, p=areas / areas.sum())
        out = np.empty((n, 2))
        for k, row in enumerate(d[idx]):
            s0, s1, la, lb, ha, hb = row
            w0, w1 = ha - la, hb - lb
            wmax = max(w0, w1)
            while True:
                t = rng.random()
                if rng.random() * wmax <= w0 + t * (w1 - w0):
                    break
            lo = la + t * (lb - la)
            hi = ha + t * (hb - ha)
            out[k] = (lo + rng.random() * (hi - lo), s0 + t * (s1 - s0))
        return self._to_frame(out)

    def grid_sample(self, spacing: float) -> np.ndarray:
        pts = []
        for s0, s1, la, lb, ha, hb in self.data:
            for s in np.arange(np.ceil(s0 / spacing), np.floor(s1 / spacing) + 1) * spacing:
                t = 0.0 if s1 == s0 else (s - s0) / (s1 - s0)
                lo, hi = la + t * (lb - la), ha + t * (hb - ha)
                xs = np.arange(np.ceil(lo / spacing), np.floor(hi / spacing) + 1) * spacing
                pts.append(np.column_stack([xs, np.full(len(xs), s)]))
        pts = np.vstack(pts) if pts else np.empty((0, 2))
        return self._to_frame(pts)

    def frame_section(self, s: float) -> tuple[float, float] | None:
        """Hull of the frame cross-section at slab coordinate ``s``."""
        d = self.data
        hit = (d[:, 0] <= s + EPS) & (d[:, 1] >= s - EPS)
        if not hit.any():
            return None
        rows = d[hit]
        h = rows[:, 1] - rows[:, 0]
        t = np.clip(np.where(h > 0, (s - rows[:, 0]) / np.where(h > 0, h, 1.0), 0.0), 0.0, 1.0)
        return (float(np.min(rows[:, 2] + t * (rows[:, 3] - rows[:, 2]))),
                float(np.max(rows[:, 4] + t * (rows[:, 5] - rows[:, 4]))))


class HatchResult(NamedTuple):
    region: SlabRegion
    residue: ShapeSet

    def as_shape(self) -> ShapeSet:
        regions = () if self.region.is_empty() else (self.region,)
        return ShapeSet(points=self.residue.points, regions=regions)

    def contains(self, pts, eps: float = EPS) -> np.ndarray:
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        inside = self.region.contains(pts, eps)
        for p in self.residue.points:
            inside |= (np.abs(pts[:, 0] - p.x) <= eps) & (np.abs(pts[:, 1] - p.y) <= eps)
        return inside


# --- cross-sections -----------------------------------------------------------

def _segment_sections(segs: np.ndarray, c: float) -> np.ndarray:
    """Intervals cut from each frame segment by the horizontal line y = c."""
    x0, y0, x1, y1 = segs.T
    ylo, yhi = np.minimum(y0, y1), np.maximum(y0, y1)
    hit = (ylo <= c + EPS) & (yhi >= c - EPS)
    flat = np.abs(y1 - y0) <= EPS
    dy = np.where(flat, 1.0, y1 - y0)
    t = np.clip((c - y0) / dy, 0.0, 1.0)
    xc = x0 + t * (x1 - x0)
    lo = np.where(flat, np.minimum(x0, x1), xc)
    hi = np.where(flat, np.maximum(x0, x1), xc)
    return np.column_stack([lo, hi])[hit]


def merge_intervals(iv, eps: float = EPS) -> list[tuple[float, float]]:
    iv = sorted((float(a), float(b)) for a, b in iv)
    out: list[list[float]] = []
    for a, b in iv:
        if out and a <= out[-1][1] + eps:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return [tuple(x) for x in out]


def cross_section(shape: ShapeSet, axis: str, value: float) -> list[tuple[float, float]]:
    """Closed intervals of ``shape`` on a line.

    ``axis="h"`` is the horizontal line y = value (intervals in x);
    ``axis="v"`` the vertical line x = value (intervals in y).
    """
    if axis not in ("h", "v"):
        raise ValueError("axis must be 'h' or 'v'")
    swap = axis == "v"
    loose = ShapeSet(points=shape.points, polylines=shape.polylines).segments()
    if swap:
        loose = loose[:, [1, 0, 3, 2]]
    iv = list(map(tuple, _segment_sections(loose, value))) if len(loose) else []
    for region in shape.regions:
        # each slab is convex: its section is the hull of its edges' sections
        e = region.edges()
        if swap:
            e = e[:, [1, 0, 3, 2]]
        slab = np.tile(np.arange(len(region.data)), 4)
        x0, y0, x1, y1 = e.T
        hit = (np.minimum(y0, y1) <= value + EPS) & (np.maximum(y0, y1) >= value - EPS)
        if not hit.any():
            continue
        cut = _segment_sections(e, value)
        ids = slab[hit]
        lo = np.full(len(region.data), np.inf)
        hi = np.full(len(region.data), -np.inf)
        np.minimum.at(lo, ids, cut[:, 0])
        np.maximum.at(hi, ids, cut[:, 1])
        keep = np.isfinite(lo)
        iv.extend(zip(lo[keep].tolist(), hi[keep].tolist()))
    return merge_intervals(iv)


def interval_hull(intervals) -> tuple[float, float] | None:
    intervals = list(intervals)
    if not intervals:
        return None
    return min(a for a, _ in intervals), max(b for _, b in intervals)


# --- the sweep ----------------------------------------------------------------

def _lower_envelope(xa: np.ndarray, xb: np.ndarray):
    """Lower envelope of lines f_i(s) = xa_i + s*(xb_i - xa_i) on s in [0, 1].

    Returns breakpoints ``[0, s_1, ..., 1]`` and the active line on each piece.
    """
    slope = xb - xa
    scale = _SNAP * (1.0 + np.max(np.abs(xa)))
    near = np.flatnonzero(xa <= xa.min() + scale)
    i = near[np.argmin(slope[near])]
    s = 0.0
    breaks, lines = [0.0], [i]
    while True:
        cand = np.flatnonzero(slope < slope[i])
        if len(cand) == 0:
            break
        sc = (xa[cand] - xa[i]) / (slope[i] - slope[cand])
        ok = sc > s + _SNAP
        if not ok.any():
            break
        cand, sc = cand[ok], sc[ok]
        smin = sc.min()
        if smin >= 1.0 - _SNAP:
            break
        tie = cand[sc <= smin + _SNAP]
        i = tie[np.argmin(slope[tie])]
        s = float(smin)
        breaks.append(s)
        lines.append(i)
    breaks.append(1.0)
    return np.array(breaks), np.array(lines)


def _x_at(x0, y0, x1, y1, y):
    """x on the (non-flat) segment at ordinate y, exact at the endpoints."""
    t = (y - y0) / (y1 - y0)
    x = x0 + t * (x1 - x0)
    return np.where(y == y0, x0, np.where(y == y1, x1, x))


def _sweep(segs: np.ndarray):
    """Horizontal hatching of a segment soup.

    Returns ``(slabs, residue)``: a ``(k, 6)`` slab array and an ``(r, 2)``
    array of isolated points whose row hull is the point itself.
    """
    segs = np.asarray(segs, dtype=float).reshape(-1, 4)
    if len(segs) == 0:
        raise ShapeError("empty input")
    flip = segs[:, 1] > segs[:, 3]
    segs = np.where(flip[:, None], segs[:, [2, 3, 0, 1]], segs)
    segs = np.unique(segs, axis=0)
    x0, y0, x1, y1 = segs.T
    ys = np.unique(np.concatenate([y0, y1]))
    nb = len(ys)
    i0 = np.searchsorted(ys, y0)
    i1 = np.searchsorted(ys, y1)
    flat = i0 == i1

    # closed hull of every breakpoint row
    lo_b = np.full(nb, np.inf)
    hi_b = np.full(nb, -np.inf)
    np.minimum.at(lo_b, i0[flat], np.minimum(x0, x1)[flat])
    np.maximum.at(hi_b, i0[flat], np.maximum(x0, x1)[flat])
    sl = np.flatnonzero(~flat)
    cnt = i1[sl] - i0[sl] + 1
    owner = np.repeat(sl, cnt)
    bidx = np.repeat(i0[sl], cnt) + (np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt))
    xv = _x_at(x0[owner], y0[owner], x1[owner], y1[owner], ys[bidx])
    np.minimum.at(lo_b, bidx, xv)
    np.maximum.at(hi_b, bidx, xv)

    # active (non-flat) segments per gap
    gcnt = cnt - 1
    gown = np.repeat(sl, gcnt)
    gidx = np.repeat(i0[sl], gcnt) + (np.arange(gcnt.sum()) - np.repeat(np.cumsum(gcnt) - gcnt, gcnt))
    order = np.argsort(gidx, kind="stable")
    gown, gidx = gown[order], gidx[order]
    xa_all = _x_at(x0[gown], y0[gown], x1[gown], y1[gown], ys[gidx])
    xb_all = _x_at(x0[gown], y0[gown], x1[gown], y1[gown], ys[gidx + 1])
    starts = np.searchsorted(gidx, np.arange(nb - 1), side="left")
    stops = np.searchsorted(gidx, np.arange(nb - 1), side="right")

    rows = []
    below = [None] * nb  # interval reaching breakpoint k from the gap beneath
    above = [None] * nb  # interval leaving breakpoint k into the gap above
    for k in range(nb - 1):
        a, b = starts[k], stops[k]
        if a == b:
            continue
        xa, xb = xa_all[a:b], xb_all[a:b]
        ya, yb = ys[k], ys[k + 1]
        lbrk, lline = _lower_envelope(xa, xb)
        ubrk, uline = _lower_envelope(-xa, -xb)
        brk = np.union1d(lbrk, ubrk)
        keep = np.concatenate([[True], np.diff(brk) > _SNAP])
        keep[-1] = True
        brk = brk[keep]
        if len(brk) > 2 and brk[-2] >= 1.0 - _SNAP:
            brk = np.delete(brk, -2)
        mids = (brk[:-1] + brk[1:]) / 2
        li = lline[np.searchsorted(lbrk, mids, side="right") - 1]
        ui = uline[np.searchsorted(ubrk, mids, side="right") - 1]
        sa, sb = brk[:-1], brk[1:]
        lo_a = xa[li] + sa * (xb[li] - xa[li])
        lo_bb = xa[li] + sb * (xb[li] - xa[li])
        hi_a = xa[ui] + sa * (xb[ui] - xa[ui])
        hi_bb = xa[ui] + sb * (xb[ui] - xa[ui])
        y_a = np.where(sa == 0.0, ya, ya + sa * (yb - ya))
        y_b = np.where(sb == 1.0, yb, ya + sb * (yb - ya))
        rows.append(np.column_stack([y_a, y_b, lo_a, lo_bb, hi_a, hi_bb]))
        above[k] = (xa.min(), xa.max())
        below[k + 1] = (xb.min(), xb.max())

    residue = []
    for k in range(nb):
        lo, hi = lo_b[k], hi_b[k]
        covered = any(iv is not None and lo >= iv[0] - EPS and hi <= iv[1] + EPS
                      for iv in (below[k], above[k]))
        if covered:
            continue
        if below[k] is None and above[k] is None and hi - lo <= EPS:
            residue.append(((lo + hi) / 2, ys[k]))
        else:
            rows.append(np.array([[ys[k], ys[k], lo, lo, hi, hi]]))
    slabs = np.vstack(rows) if rows else np.empty((0, 6))
    slabs = slabs[np.lexsort((slabs[:, 1], slabs[:, 0]))]
    return _merge_collinear(slabs), np.array(residue, dtype=float).reshape(-1, 2)


def _merge_collinear(slabs: np.ndarray) -> np.ndarray:
    """Fuse runs of abutting positive-height slabs whose envelopes are collinear."""
    out = []
    i, n = 0, len(slabs)
    while i < n:
        if slabs[i, 1] == slabs[i, 0]:
            out.append(slabs[i])
            i += 1
            continue
        j = i
        while j + 1 < n and slabs[j + 1, 0] == slabs[j, 1] and slabs[j + 1, 1] > slabs[j + 1, 0]:
            cand = np.array([slabs[i, 0], slabs[j + 1, 1], slabs[i, 2], slabs[j + 1, 3],
                             slabs[i, 4], slabs[j + 1, 5]])
            joints = slabs[i:j + 1]
            t = (joints[:, 1] - cand[0]) / (cand[1] - cand[0])
            lo = cand[2] + t * (cand[3] - cand[2])
            hi = cand[4] + t * (cand[5] - cand[4])
            if (np.all(np.abs(lo - joints[:, 3]) <= EPS) and np.all(np.abs(hi - joints[:, 5]) <= EPS)
                    and np.allclose(slabs[i + 1:j + 2, 2], joints[:, 3], rtol=0, atol=EPS)
                    and np.allclose(slabs[i + 1:j + 2, 4], joints[:, 5], rtol=0, atol=EPS)):
                j += 1
            else:
                break
        out.append(np.array([slabs[i, 0], slabs[j, 1], slabs[i, 2], slabs[j, 3], slabs[i, 4], slabs[j, 5]]))
        i = j + 1
    return np.array(out).reshape(-1, 6)


# --- public operators ---------------------------------------------------------

def _hatch(shape: ShapeSet, orientation: str) -> HatchResult:
    segs = shape.segments()
    if len(segs) == 0:
        raise ShapeError("empty input")
    swap = orientation == "v"
    if swap:
        segs = segs[:, [1, 0, 3, 2]]
    slabs, residue = _sweep(segs)
    if swap:
        residue = residue[:, ::-1]
    return HatchResult(SlabRegion(slabs, orientation),
                       ShapeSet(points=[Point(x, y) for x, y in residue]))


def hatch_x(shape: ShapeSet) -> HatchResult:
    """Replace every horizontal cross-section by its closed hull."""
    return _hatch(shape, "h")


def hatch_y(shape: ShapeSet) -> HatchResult:
    """Replace every vertical cross-section by its closed hull."""
    return _hatch(shape, "v")


def hatch_seq(shape: ShapeSet, order: str) -> HatchResult:
    """Apply both hatchings in the given order; ``"xy"`` is x first, then y."""
    if order not in ("xy", "yx"):
        raise ValueError(f"order must be 'xy' or 'yx', got {order!r}")
    first, second = (hatch_x, hatch_y) if order == "xy" else (hatch_y, hatch_x)
    return second(first(shape).as_shape())


def _commute_tolerance(shape: ShapeSet) -> float:
    x0, y0, x1, y1 = shape.bbox()
    return 1e-9 * max((x1 - x0) * (y1 - y0), EPS)


def double_hatch(shape: ShapeSet, check_connected: bool = True) -> SlabRegion:
    """Double hatching of a path-connected shape, as an ``"h"`` slab region.

    Both composition orders are computed and compared; a disagreement beyond
    ``1e-9`` of the bounding-box area raises :class:`CommutationError`.
    """
    if shape.is_empty():
        raise ShapeError("empty input")
    if check_connected and not path_connectedness_check(shape):
        raise NotPathConnected("requires path-connected input; use hatch_seq for arbitrary sets")
    xy = hatch_seq(shape, "xy")
    yx = hatch_seq(shape, "yx")
    gap = symmetric_difference_area(yx.region, xy.region)
    if gap > _commute_tolerance(shape):
        raise CommutationError(f"hatching orders differ by area {gap:.3e}")
    region = yx.region
    if region.is_empty():
        # a lone point: keep it as a degenerate slab
        p = yx.residue.points[0]
        region = SlabRegion([[p.y, p.y, p.x, p.x, p.x, p.x]], "h")
    return region


def region_membership(region: SlabRegion, p) -> bool:
    return bool(region.contains(np.array([[p[0], p[1]]], dtype=float))[0])


def region_area(region: SlabRegion) -> float:
    return region.area()


def _line_at(rows, y):
    h = rows[:, 1] - rows[:, 0]
    t = np.where(h > 0, (y - rows[:, 0]) / np.where(h > 0, h, 1.0), 0.0)
    return rows[:, 2] + t * (rows[:, 3] - rows[:, 2]), rows[:, 4] + t * (rows[:, 5] - rows[:, 4])


def _overlay_symdiff(A: np.ndarray, B: np.ndarray) -> float:
    A = A[A[:, 1] > A[:, 0]]
    B = B[B[:, 1] > B[:, 0]]
    if len(A) == 0 and len(B) == 0:
        return 0.0
    ys = np.unique(np.concatenate([A[:, :2].ravel(), B[:, :2].ravel()]))
    y0, y1 = ys[:-1], ys[1:]
    mid = (y0 + y1) / 2

    def lines(S):
        if len(S) == 0:
            z = np.zeros(len(mid))
            return z, z, z, z, np.zeros(len(mid), dtype=bool)
        idx = np.clip(np.searchsorted(S[:, 0], mid, side="right") - 1, 0, len(S) - 1)
        rows = S[idx]
        present = (rows[:, 0] <= mid) & (rows[:, 1] >= mid)
        la, ha = _line_at(rows, y0)
        lb, hb = _line_at(rows, y1)
        return la, lb, ha, hb, present

    fa = lines(A)
    fb = lines(B)
    # four linear functions per piece: lo_A, hi_A, lo_B, hi_B; values at s=0 and s=1
    v0 = np.column_stack([fa[0], fa[2], fb[0], fb[2]])
    v1 = np.column_stack([fa[1], fa[3], fb[1], fb[3]])
    pa, pb = fa[4], fb[4]
    nodes = [np.zeros(len(mid)), np.ones(len(mid))]
    for i in range(4):
        for j in range(i + 1, 4):
            d0 = v0[:, i] - v0[:, j]
            d1 = v1[:, i] - v1[:, j]
            den = d0 - d1
            with np.errstate(divide="ignore", invalid="ignore"):
                s = np.where(den != 0, d0 / np.where(den != 0, den, 1.0), 0.0)
            nodes.append(np.clip(s, 0.0, 1.0))
    S = np.sort(np.column_stack(nodes), axis=1)

    def f(s):
        v = v0[:, :, None] + s[:, None, :] * (v1 - v0)[:, :, None]
        la, ha, lb, hb = v[:, 0], v[:, 1], v[:, 2], v[:, 3]
        lena = np.where(pa[:, None], ha - la, 0.0)
        lenb = np.where(pb[:, None], hb - lb, 0.0)
        ov = np.where((pa & pb)[:, None], np.maximum(0.0, np.minimum(ha, hb) - np.maximum(la, lb)), 0.0)
        return lena + lenb - 2 * ov

    F = f(S)
    integral = np.sum((F[:, 1:] + F[:, :-1]) / 2 * np.diff(S, axis=1), axis=1)
    return float(np.sum(np.maximum(integral, 0.0) * (y1 - y0)))


def symmetric_difference_area(a: SlabRegion, b: SlabRegion) -> float:
    """Area of ``a`` xor ``b``.

    Regions of different orientation are compared after re-hatching ``b``
    in ``a``'s direction; the area that re-hatching adds is charged to the
    result, so the value stays an upper bound and is exact whenever ``b``
    is convex along ``a``'s cross-sections.
    """
    penalty = 0.0
    if a.orientation != b.orientation:
        if b.is_empty():
            return a.area()
        conv = _hatch(b.as_shape(), a.orientation).region
        penalty = max(0.0, conv.area() - b.area())
        b = conv
    return _overlay_symdiff(a.data, b.data) + penalty
