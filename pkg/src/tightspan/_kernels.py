"""Hot inner loops, each in two flavours: numba ``@njit`` and pure numpy.

Set ``TIGHTSPAN_NO_JIT=1`` to force the numpy path (useful for debugging,
or where numba is unavailable).  Both paths return identical results; the
test suite checks this and ``benchmarks/bench_kernels.py`` times them.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

JIT_ENABLED = numba is not None and os.environ.get("TIGHTSPAN_NO_JIT", "0") in ("", "0")

_SIGNS = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])


def _njit(fn):
    if numba is None:  # pragma: no cover
        return fn
    return numba.njit(cache=True)(fn)


# --- quadrant occupancy -----------------------------------------------------
# For a segment and a quadrant Q^{sx,sy}(p), the segment meets the closed
# quadrant iff max_t min(sx*(x(t)-px), sy*(y(t)-py)) >= -eps.  The inner min
# is concave in t, so the max sits at an endpoint or where both terms agree.

def quadrant_hits_numpy(segs, pts, eps):
    m = len(pts)
    out = np.zeros((m, 4), dtype=bool)
    if m == 0 or len(segs) == 0:
        return out
    x0, y0, x1, y1 = (segs[:, i][None, :] for i in range(4))
    chunk = max(1, 2_000_000 // max(1, len(segs)))
    for start in range(0, m, chunk):
        px = pts[start:start + chunk, 0][:, None]
        py = pts[start:start + chunk, 1][:, None]
        for k in range(4):
            sx, sy = _SIGNS[k]
            a0 = sx * (x0 - px)
            b0 = sy * (y0 - py)
            da = sx * (x1 - x0)
            db = sy * (y1 - y0)
            den = da - db
            with np.errstate(divide="ignore", invalid="ignore"):
                t = np.where(den != 0, (b0 - a0) / np.where(den != 0, den, 1.0), 0.0)
            t = np.clip(t, 0.0, 1.0)
            g = np.maximum(np.minimum(a0, b0),
                           np.maximum(np.minimum(a0 + da, b0 + db),
                                      np.minimum(a0 + t * da, b0 + t * db)))
            out[start:start + chunk, k] = np.any(g >= -eps, axis=1)
    return out


def _quadrant_hits_loop(segs, pts, eps):
    m = pts.shape[0]
    n = segs.shape[0]
    out = np.zeros((m, 4), dtype=np.bool_)
    for i in range(m):
        px = pts[i, 0]
        py = pts[i, 1]
        for k in range(4):
            sx = 1.0 if k < 2 else -1.0
            sy = 1.0 if k % 2 == 0 else -1.0
            for j in range(n):
                a0 = sx * (segs[j, 0] - px)
                b0 = sy * (segs[j, 1] - py)
                da = sx * (segs[j, 2] - segs[j, 0])
                db = sy * (segs[j, 3] - segs[j, 1])
                g = min(a0, b0)
                g = max(g, min(a0 + da, b0 + db))
                den = da - db
                if den != 0.0:
                    t = (b0 - a0) / den
                    if t > 0.0 and t < 1.0:
                        g = max(g, min(a0 + t * da, b0 + t * db))
                if g >= -eps:
                    out[i, k] = True
                    break
    return out


quadrant_hits_jit = _njit(_quadrant_hits_loop)


# --- slab membership --------------------------------------------------------
# slabs: (k, 6) rows [s_lo, s_hi, lo_a, lo_b, hi_a, hi_b] sorted by (s_lo, s_hi),
# interiors disjoint, so s_hi is non-decreasing as well.

def member_numpy(slabs, pts, eps):
    m = len(pts)
    out = np.zeros(m, dtype=bool)
    if m == 0 or len(slabs) == 0:
        return out
    s = pts[:, 1]
    x = pts[:, 0]
    start = np.searchsorted(slabs[:, 1], s - eps, side="left")
    stop = np.searchsorted(slabs[:, 0], s + eps, side="right")
    width = stop - start
    for off in range(int(width.max(initial=0))):
        live = off < width
        idx = np.where(live, start + off, 0)
        row = slabs[idx]
        h = row[:, 1] - row[:, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(h > 0, (s - row[:, 0]) / np.where(h > 0, h, 1.0), 0.0)
        t = np.clip(t, 0.0, 1.0)
        lo = row[:, 2] + t * (row[:, 3] - row[:, 2])
        hi = row[:, 4] + t * (row[:, 5] - row[:, 4])
        out |= live & (x >= lo - eps) & (x <= hi + eps)
    return out


def _member_loop(slabs, pts, eps):
    m = pts.shape[0]
    out = np.zeros(m, dtype=np.bool_)
    if slabs.shape[0] == 0:
        return out
    s_hi = slabs[:, 1].copy()
    s_lo = slabs[:, 0].copy()
    for i in range(m):
        x = pts[i, 0]
        s = pts[i, 1]
        j = np.searchsorted(s_hi, s - eps)
        k = np.searchsorted(s_lo, s + eps, side="right")
        while j < k:
            h = slabs[j, 1] - slabs[j, 0]
            t = 0.0
            if h > 0:
                t = min(1.0, max(0.0, (s - slabs[j, 0]) / h))
            lo = slabs[j, 2] + t * (slabs[j, 3] - slabs[j, 2])
            hi = slabs[j, 4] + t * (slabs[j, 5] - slabs[j, 4])
            if x >= lo - eps and x <= hi + eps:
                out[i] = True
                break
            j += 1
    return out


member_jit = _njit(_member_loop)


# --- rasterization ----------------------------------------------------------
# Coordinates are in grid units: pixel (ix, iy) is the closed square
# [ix, ix+1] x [iy, iy+1].  Rows of ``bits`` are iy, columns ix.

def _span(lo, hi, n):
    a = int(np.ceil(lo)) - 1
    b = int(np.floor(hi))
    return max(a, 0), min(b, n - 1)


# The supercover works on a fixed lattice of 1/SNAP pixel so every row and
# column decision is an exact int64 comparison; float interpolation put
# segments a rounding error on the wrong side of pixel edges.  With
# |coordinate| <= SNAP_LIMIT pixels all products stay below 2**61.
SNAP = 4096
SNAP_LIMIT = 2 ** 17


def snap_grid(segs):
    """Segments as they are rasterized: rounded to the 1/SNAP pixel lattice."""
    return np.rint(np.asarray(segs, dtype=np.float64) * SNAP) / SNAP


def _lattice(segs):
    segs = np.asarray(segs, dtype=np.float64).reshape(-1, 4)
    if segs.size and not (np.isfinite(segs).all() and np.abs(segs).max() <= SNAP_LIMIT):
        raise ValueError(f"grid coordinates must be finite and within +-{SNAP_LIMIT}")
    return np.rint(segs * SNAP).astype(np.int64)


def _cdiv_lo(n, d):
    # ceil(n / d) - 1 for d > 0: first cell whose closed range reaches n/d
    return -((-n) // d) - 1


def supercover_numpy(segs, height, width):
    bits = np.zeros((height, width), dtype=bool)
    for x0, y0, x1, y1 in _lattice(segs):
        if x1 < x0:
            x0, y0, x1, y1 = x1, y1, x0, y0
        a, b = max(_cdiv_lo(x0, SNAP), 0), min(x1 // SNAP, width - 1)
        if a > b:
            continue
        c = np.arange(a, b + 1, dtype=np.int64)
        if x1 > x0:
            den = x1 - x0
            xa = np.maximum(x0, c * SNAP)
            xb = np.minimum(x1, (c + 1) * SNAP)
            na = y0 * den + (xa - x0) * (y1 - y0)
            nb = y0 * den + (xb - x0) * (y1 - y0)
            nlo, nhi = np.minimum(na, nb), np.maximum(na, nb)
        else:
            den = 1
            nlo = np.full(len(c), min(y0, y1))
            nhi = np.full(len(c), max(y0, y1))
        r0 = np.maximum(_cdiv_lo(nlo, den * SNAP), 0)
        r1 = np.minimum(nhi // (den * SNAP), height - 1)
        for col, lo, hi in zip(c, r0, r1):
            if lo <= hi:
                bits[lo:hi + 1, col] = True
    return bits


def _supercover_loop(segs, height, width):
    bits = np.zeros((height, width), dtype=np.bool_)
    for j in range(segs.shape[0]):
        x0, y0, x1, y1 = segs[j, 0], segs[j, 1], segs[j, 2], segs[j, 3]
        if x1 < x0:
            x0, y0, x1, y1 = x1, y1, x0, y0
        a = max(-((-x0) // SNAP) - 1, 0)
        b = min(x1 // SNAP, width - 1)
        for c in range(a, b + 1):
            if x1 > x0:
                den = x1 - x0
                xa = max(x0, c * SNAP)
                xb = min(x1, (c + 1) * SNAP)
                na = y0 * den + (xa - x0) * (y1 - y0)
                nb = y0 * den + (xb - x0) * (y1 - y0)
                nlo = min(na, nb)
                nhi = max(na, nb)
            else:
                den = 1
                nlo = min(y0, y1)
                nhi = max(y0, y1)
            q = den * SNAP
            r0 = max(-((-nlo) // q) - 1, 0)
            r1 = min(nhi // q, height - 1)
            for r in range(r0, r1 + 1):
                bits[r, c] = True
    return bits


_supercover_lattice_jit = _njit(_supercover_loop)


def supercover_jit(segs, height, width):
    return _supercover_lattice_jit(_lattice(segs), height, width)



def trapezoids_numpy(slabs, height, width):
    bits = np.zeros((height, width), dtype=bool)
    for s_lo, s_hi, lo_a, lo_b, hi_a, hi_b in slabs:
        r0, r1 = _span(s_lo, s_hi, height)
        h = s_hi - s_lo
        for r in range(r0, r1 + 1):
            ya = max(s_lo, r)
            yb = min(s_hi, r + 1.0)
            ta = (ya - s_lo) / h if h > 0 else 0.0
            tb = (yb - s_lo) / h if h > 0 else 0.0
            xmin = min(lo_a + ta * (lo_b - lo_a), lo_a + tb * (lo_b - lo_a))
            xmax = max(hi_a + ta * (hi_b - hi_a), hi_a + tb * (hi_b - hi_a))
            c0, c1 = _span(xmin, xmax, width)
            if c0 <= c1:
                bits[r, c0:c1 + 1] = True
    return bits


def _trapezoids_loop(slabs, height, width):
    bits = np.zeros((height, width), dtype=np.bool_)
    for j in range(slabs.shape[0]):
        s_lo, s_hi = slabs[j, 0], slabs[j, 1]
        lo_a, lo_b, hi_a, hi_b = slabs[j, 2], slabs[j, 3], slabs[j, 4], slabs[j, 5]
        r0 = max(int(np.ceil(s_lo)) - 1, 0)
        r1 = min(int(np.floor(s_hi)), height - 1)
        h = s_hi - s_lo
        for r in range(r0, r1 + 1):
            ya = max(s_lo, float(r))
            yb = min(s_hi, r + 1.0)
            ta = (ya - s_lo) / h if h > 0 else 0.0
            tb = (yb - s_lo) / h if h > 0 else 0.0
            xmin = min(lo_a + ta * (lo_b - lo_a), lo_a + tb * (lo_b - lo_a))
            xmax = max(hi_a + ta * (hi_b - hi_a), hi_a + tb * (hi_b - hi_a))
            c0 = max(int(np.ceil(xmin)) - 1, 0)
            c1 = min(int(np.floor(xmax)), width - 1)
            for c in range(c0, c1 + 1):
                bits[r, c] = True
    return bits


trapezoids_jit = _njit(_trapezoids_loop)


def fill_rows_numpy(bits):
    any_ = bits.any(axis=1)
    w = bits.shape[1]
    first = np.argmax(bits, axis=1)
    last = w - 1 - np.argmax(bits[:, ::-1], axis=1)
    cols = np.arange(w)[None, :]
    return any_[:, None] & (cols >= first[:, None]) & (cols <= last[:, None])


def _fill_rows_loop(bits):
    h, w = bits.shape
    out = np.zeros((h, w), dtype=np.bool_)
    for r in range(h):
        first = -1
        last = -1
        for c in range(w):
            if bits[r, c]:
                if first < 0:
                    first = c
                last = c
        if first >= 0:
            for c in range(first, last + 1):
                out[r, c] = True
    return out


fill_rows_jit = _njit(_fill_rows_loop)


# --- dispatch ---------------------------------------------------------------

def quadrant_hits(segs, pts, eps):
    if JIT_ENABLED:
        return quadrant_hits_jit(np.ascontiguousarray(segs, dtype=np.float64),
                                 np.ascontiguousarray(pts, dtype=np.float64), eps)
    return quadrant_hits_numpy(segs, pts, eps)


def member(slabs, pts, eps):
    if JIT_ENABLED:
        return member_jit(np.ascontiguousarray(slabs, dtype=np.float64),
                          np.ascontiguousarray(pts, dtype=np.float64), eps)
    return member_numpy(slabs, pts, eps)


def supercover(segs, height, width):
    if JIT_ENABLED:
        return supercover_jit(segs, height, width)
    return supercover_numpy(segs, height, width)


def trapezoids(slabs, height, width):
    if JIT_ENABLED:
        return trapezoids_jit(np.ascontiguousarray(slabs, dtype=np.float64), height, width)
    return trapezoids_numpy(slabs, height, width)


def fill_rows(bits):
    if JIT_ENABLED:
        return fill_rows_jit(np.ascontiguousarray(bits))
    return fill_rows_numpy(bits)
