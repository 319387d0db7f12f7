"""Points, shapes and taxicab primitives shared by the rest of the package.

Everything is reduced to a *segment soup*: an ``(n, 4)`` float array of
``[x0, y0, x1, y1]`` rows.  Isolated points are degenerate segments and
regions contribute the edges of their slabs.  Because every piece involved
is convex, the quadrant and elbow queries below only ever need those edges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import _kernels

EPS = 1e-9


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ShapeError(f"non-finite coordinate in point ({self.x}, {self.y})")
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __getitem__(self, i):
        return (self.x, self.y)[i]

    def __len__(self):
        return 2


def as_point(p) -> Point:
    return p if isinstance(p, Point) else Point(float(p[0]), float(p[1]))


@dataclass(frozen=True)
class Polyline:
    vertices: tuple
    closed: bool = False

    def __post_init__(self):
        verts = tuple(as_point(v) for v in self.vertices)
        if not verts:
            raise ShapeError("polyline needs at least one vertex")
        for a, b in zip(verts, verts[1:]):
            if max(abs(a.x - b.x), abs(a.y - b.y)) <= EPS:
                raise ShapeError(f"repeated vertex ({a.x}, {a.y}) in polyline")
        if self.closed and len(verts) < 3:
            raise ShapeError("closed polyline needs at least 3 vertices")
        object.__setattr__(self, "vertices", verts)

    def coords(self) -> np.ndarray:
        return np.array([(v.x, v.y) for v in self.vertices], dtype=float)

    def segments(self) -> np.ndarray:
        xy = self.coords()
        if self.closed:
            xy = np.vstack([xy, xy[:1]])
        if len(xy) == 1:
            return np.hstack([xy, xy])
        return np.hstack([xy[:-1], xy[1:]])

    def length(self) -> float:
        s = self.segments()
        return float(np.sum(np.hypot(s[:, 2] - s[:, 0], s[:, 3] - s[:, 1])))


@dataclass(frozen=True)
class ShapeSet:
    """Finite union of points, polylines and slab regions.

    May be empty (hatching residues usually are); operations that need a
    nonempty set check for it themselves.
    """

    points: tuple = ()
    polylines: tuple = ()
    regions: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(as_point(p) for p in self.points))
        object.__setattr__(self, "polylines", tuple(self.polylines))
        object.__setattr__(self, "regions", tuple(self.regions))

    def is_empty(self) -> bool:
        return not (self.points or self.polylines or self.regions)

    def segments(self) -> np.ndarray:
        parts = [np.array([[p.x, p.y, p.x, p.y] for p in self.points], dtype=float).reshape(-1, 4)]
        parts += [pl.segments() for pl in self.polylines]
        parts += [r.edges() for r in self.regions]
        return np.vstack(parts) if parts else np.empty((0, 4))

    def bbox(self) -> tuple[float, float, float, float]:
        s = self.segments()
        if len(s) == 0:
            raise ShapeError("empty input")
        xs = np.concatenate([s[:, 0], s[:, 2]])
        ys = np.concatenate([s[:, 1], s[:, 3]])
        return float(xs.min()), float(ys.min()), float(xs.max()), float(ys.max())

    def components(self) -> list[np.ndarray]:
        """Convex pieces as segment arrays: one per point, polyline and slab."""
        out = [np.array([[p.x, p.y, p.x, p.y]]) for p in self.points]
        out += [pl.segments() for pl in self.polylines]
        for r in self.regions:
            out += r.pieces()
        return out

    def union(self, other: "ShapeSet") -> "ShapeSet":
        return ShapeSet(self.points + other.points, self.polylines + other.polylines,
                        self.regions + other.regions)


class QuadrantOccupancy(NamedTuple):
    pp: bool
    pm: bool
    mp: bool
    mm: bool

    def count(self) -> int:
        return int(self.pp) + int(self.pm) + int(self.mp) + int(self.mm)

    def flag(self, sx: int, sy: int) -> bool:
        return {(1, 1): self.pp, (1, -1): self.pm, (-1, 1): self.mp, (-1, -1): self.mm}[(sx, sy)]

    def occupied(self) -> list[tuple[int, int]]:
        return [s for s in QUADRANT_SIGNS if self.flag(*s)]


# column order of the quadrant kernels
QUADRANT_SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class Ray:
    origin: Point
    axis: str  # "h" or "v"
    sign: int

    def hits(self, segs: np.ndarray, eps: float = EPS) -> bool:
        return bool(_ray_hits(segs, self.origin, self.axis, self.sign, eps))


@dataclass(frozen=True)
class Elbow:
    """Union of a horizontal and a vertical ray sharing ``corner``."""

    corner: Point
    xsign: int
    ysign: int

    @property
    def rays(self) -> tuple[Ray, Ray]:
        return Ray(self.corner, "h", self.xsign), Ray(self.corner, "v", self.ysign)

    def meets(self, segs: np.ndarray, eps: float = EPS) -> bool:
        return any(r.hits(segs, eps) for r in self.rays)


def _ray_hits(segs, origin, axis, sign, eps):
    if len(segs) == 0:
        return False
    if axis == "v":
        segs = segs[:, [1, 0, 3, 2]]
        ox, oy = origin.y, origin.x
    else:
        ox, oy = origin.x, origin.y
    x0, y0, x1, y1 = segs.T
    ylo, yhi = np.minimum(y0, y1), np.maximum(y0, y1)
    span = (ylo <= oy + eps) & (yhi >= oy - eps)
    dy = y1 - y0
    flat = np.abs(dy) <= eps
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.clip(np.where(flat, 0.0, (oy - y0) / np.where(flat, 1.0, dy)), 0.0, 1.0)
    xc = x0 + t * (x1 - x0)
    # a flat segment contributes its whole x-range
    far = np.where(flat, np.maximum(x0, x1) if sign > 0 else np.minimum(x0, x1), xc)
    reach = sign * (far - ox) >= -eps
    return np.any(span & reach)


def taxicab_distance(p, q) -> float:
    return abs(p[0] - q[0]) + abs(p[1] - q[1])


def to_uv(p) -> tuple[float, float]:
    return p[0] + p[1], p[0] - p[1]


def from_uv(u: float, v: float) -> Point:
    return Point((u + v) / 2.0, (u - v) / 2.0)


def quadrant_occupancy(shape: ShapeSet, p) -> QuadrantOccupancy:
    """Which closed quadrants of ``p`` meet the shape (boundary rays count twice)."""
    segs = shape.segments()
    if len(segs) == 0:
        raise ShapeError("empty input")
    hits = _kernels.quadrant_hits(segs, np.array([[p[0], p[1]]], dtype=float), EPS)
    return QuadrantOccupancy(*(bool(h) for h in hits[0]))


def quadrant_occupancy_many(segs: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Batch form: ``(m, 4)`` booleans in ``QUADRANT_SIGNS`` column order."""
    return _kernels.quadrant_hits(np.ascontiguousarray(segs, dtype=float),
                                  np.ascontiguousarray(pts, dtype=float), EPS)


# --- connectivity -----------------------------------------------------------

def _seg_seg_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Euclidean distance between every segment of ``a`` and every one of ``b``."""
    A = a[:, None, :]
    B = b[None, :, :]
    d = np.minimum.reduce([
        _point_seg_distance(A[..., 0], A[..., 1], B),
        _point_seg_distance(A[..., 2], A[..., 3], B),
        _point_seg_distance(B[..., 0], B[..., 1], A),
        _point_seg_distance(B[..., 2], B[..., 3], A),
    ])
    o1 = _orient(A[..., 0:2], A[..., 2:4], B[..., 0:2])
    o2 = _orient(A[..., 0:2], A[..., 2:4], B[..., 2:4])
    o3 = _orient(B[..., 0:2], B[..., 2:4], A[..., 0:2])
    o4 = _orient(B[..., 0:2], B[..., 2:4], A[..., 2:4])
    crossing = (o1 * o2 < 0) & (o3 * o4 < 0)
    return np.where(crossing, 0.0, d)


def _orient(p, q, r):
    return (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0])


def _point_seg_distance(px, py, seg):
    x0, y0, x1, y1 = seg[..., 0], seg[..., 1], seg[..., 2], seg[..., 3]
    dx, dy = x1 - x0, y1 - y0
    L2 = dx * dx + dy * dy
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(L2 > 0, ((px - x0) * dx + (py - y0) * dy) / np.where(L2 > 0, L2, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    return np.hypot(px - (x0 + t * dx), py - (y0 + t * dy))


def _inside_convex(pts: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Points strictly inside the convex polygon whose boundary is ``edges``."""
    cx = edges[:, [0, 2]].mean()
    cy = edges[:, [1, 3]].mean()
    o = _orient(edges[None, :, 0:2], edges[None, :, 2:4], pts[:, None, :])
    oc = _orient(edges[:, 0:2], edges[:, 2:4], np.array([cx, cy]))
    live = np.abs(oc) > 0
    return np.all((o * np.sign(oc) > 0) | ~live, axis=1) & live.any()


def _pieces_touch(a: np.ndarray, b: np.ndarray, eps: float) -> bool:
    if np.min(_seg_seg_distance(a, b)) <= eps:
        return True
    for inner, outer in ((a, b), (b, a)):
        if len(outer) >= 3 and _inside_convex(inner[:1, 0:2], outer).any():
            return True
    return False


def path_connectedness_check(shape: ShapeSet, eps: float = EPS) -> bool:
    pieces = shape.components()
    if not pieces:
        raise ShapeError("empty input")
    n = len(pieces)
    if n == 1:
        return True
    boxes = np.array([[p[:, [0, 2]].min(), p[:, [1, 3]].min(),
                       p[:, [0, 2]].max(), p[:, [1, 3]].max()] for p in pieces])
    near = ((boxes[:, None, 0] <= boxes[None, :, 2] + eps) & (boxes[None, :, 0] <= boxes[:, None, 2] + eps)
            & (boxes[:, None, 1] <= boxes[None, :, 3] + eps) & (boxes[None, :, 1] <= boxes[:, None, 3] + eps))
    rows, cols = [], []
    for i, j in zip(*np.nonzero(np.triu(near, 1))):
        if _pieces_touch(pieces[i], pieces[j], eps):
            rows.append(i)
            cols.append(j)
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    ncomp, _ = connected_components(graph, directed=False)
    return ncomp == 1


def points_array(pts: Iterable) -> np.ndarray:
    return np.array([(p[0], p[1]) for p in pts], dtype=float).reshape(-1, 2)


def sample_segments(segs: np.ndarray, spacing: float) -> np.ndarray:
    """Arc-length samples along every segment, endpoints included, gaps <= spacing."""
    out = []
    for x0, y0, x1, y1 in segs:
        n = max(1, int(math.ceil(math.hypot(x1 - x0, y1 - y0) / spacing)))
        t = np.linspace(0.0, 1.0, n + 1)
        out.append(np.column_stack([x0 + t * (x1 - x0), y0 + t * (y1 - y0)]))
    return np.vstack(out) if out else np.empty((0, 2))


def sample_shape(shape: ShapeSet, spacing: float) -> np.ndarray:
    """Dense sample of the shape: curves by arc length, regions by a grid."""
    parts = [points_array(shape.points)]
    for pl in shape.polylines:
        parts.append(sample_segments(pl.segments(), spacing))
    for r in shape.regions:
        parts.append(sample_segments(r.edges(), spacing))
        parts.append(r.grid_sample(spacing))
    pts = np.vstack(parts)
    return np.unique(pts, axis=0)


def l1_distance_to_segments(p, segs: np.ndarray) -> float:
    """Taxicab distance from ``p`` to the union of segments."""
    if len(segs) == 0:
        return math.inf
    x0, y0, x1, y1 = segs.T
    dx, dy = x1 - x0, y1 - y0
    cands = [np.zeros(len(segs)), np.ones(len(segs))]
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        cands.append(np.where(dx != 0, (p[0] - x0) / np.where(dx != 0, dx, 1.0), 0.0))
        cands.append(np.where(dy != 0, (p[1] - y0) / np.where(dy != 0, dy, 1.0), 0.0))
    t = np.clip(np.column_stack(cands), 0.0, 1.0)
    d = np.abs(x0[:, None] + t * dx[:, None] - p[0]) + np.abs(y0[:, None] + t * dy[:, None] - p[1])
    return float(d.min())
