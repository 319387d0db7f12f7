"""Brute-force grid hatching, used as an independent oracle for the exact engine."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from . import _kernels
from .geom import ShapeError, ShapeSet
from .hatch import SlabRegion

MAX_PIXELS = 2 ** 32


@dataclass
class Bitmap:
    """Boolean grid; pixel ``(ix, iy)`` is the closed square
    ``[x0 + ix*size, x0 + (ix+1)*size] x [y0 + iy*size, ...]`` and lives at
    ``bits[iy, ix]``."""

    bits: np.ndarray
    origin: tuple[float, float]
    size: float

    def __post_init__(self):
        if self.bits.ndim != 2 or min(self.bits.shape) < 1:
            raise ValueError("bitmap needs at least one pixel")
        if not self.size > 0:
            raise ValueError("pixel size must be positive")

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    def like(self, bits: np.ndarray) -> "Bitmap":
        return Bitmap(bits, self.origin, self.size)

    def centers(self) -> np.ndarray:
        """World coordinates of pixel centres, ``(height*width, 2)`` row-major."""
        xs = self.origin[0] + (np.arange(self.width) + 0.5) * self.size
        ys = self.origin[1] + (np.arange(self.height) + 0.5) * self.size
        gx, gy = np.meshgrid(xs, ys)
        return np.column_stack([gx.ravel(), gy.ravel()])

    def to_grid(self, xy: np.ndarray) -> np.ndarray:
        return (xy - np.array(self.origin)) / self.size

    def to_pgm(self) -> bytes:
        """Binary PGM (P5), top row first, 255 where set."""
        img = np.where(self.bits[::-1], 255, 0).astype(np.uint8)
        return b"P5\n%d %d\n255\n" % (self.width, self.height) + img.tobytes()


@dataclass
class Agreement:
    agreement: float
    compared: int
    disagreements: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"agreement": self.agreement, "compared": self.compared,
                "disagreements": len(self.disagreements),
                "first_disagreements": [list(map(int, d)) for d in self.disagreements[:20]]}


def frame_for(bbox, resolution: float, pad: int = 2):
    x0, y0, x1, y1 = bbox
    size = 1.0 / resolution
    w = int(math.ceil((x1 - x0) / size)) + 2 * pad + 1
    h = int(math.ceil((y1 - y0) / size)) + 2 * pad + 1
    return (x0 - pad * size, y0 - pad * size), size, w, h


def _blank(shape: ShapeSet, resolution: float, frame) -> Bitmap:
    if frame is None:
        frame = frame_for(shape.bbox(), resolution)
    origin, size, w, h = frame
    if w * h > MAX_PIXELS or max(w, h) > _kernels.SNAP_LIMIT:
        raise ShapeError(f"raster of {w}x{h} pixels is too large")
    return Bitmap(np.zeros((h, w), dtype=bool), origin, size)


def rasterize(shape: ShapeSet, resolution: float, frame=None) -> Bitmap:
    """Conservative raster: a pixel is set iff the shape meets its closed square."""
    if shape.is_empty():
        raise ShapeError("empty input")
    bm = _blank(shape, resolution, frame)
    bits = bm.bits
    loose = ShapeSet(points=shape.points, polylines=shape.polylines).segments()
    if len(loose):
        g = np.hstack([bm.to_grid(loose[:, 0:2]), bm.to_grid(loose[:, 2:4])])
        bits |= _kernels.supercover(g, bm.height, bm.width)
    for region in shape.regions:
        d = region.data.copy()
        if region.orientation == "h":
            d[:, 0:2] = (d[:, 0:2] - bm.origin[1]) / bm.size
            d[:, 2:6] = (d[:, 2:6] - bm.origin[0]) / bm.size
            bits |= _kernels.trapezoids(d, bm.height, bm.width)
        else:
            d[:, 0:2] = (d[:, 0:2] - bm.origin[0]) / bm.size
            d[:, 2:6] = (d[:, 2:6] - bm.origin[1]) / bm.size
            bits |= _kernels.trapezoids(d, bm.width, bm.height).T
    return bm


def raster_hatch(bm: Bitmap, axis: str) -> Bitmap:
    """Fill every row (``axis="x"``) or column (``"y"``) between its extreme set pixels."""
    if axis == "x":
        return bm.like(_kernels.fill_rows(bm.bits))
    if axis == "y":
        return bm.like(np.ascontiguousarray(_kernels.fill_rows(np.ascontiguousarray(bm.bits.T)).T))
    raise ValueError("axis must be 'x' or 'y'")


def raster_double_hatch(shape: ShapeSet, resolution: float, order: str = "xy", frame=None) -> Bitmap:
    bm = rasterize(shape, resolution, frame)
    for axis in order:
        bm = raster_hatch(bm, axis)
    return bm


def _transitions(bits: np.ndarray) -> np.ndarray:
    edge = np.zeros_like(bits)
    dx = bits[:, 1:] != bits[:, :-1]
    dy = bits[1:, :] != bits[:-1, :]
    edge[:, 1:] |= dx
    edge[:, :-1] |= dx
    edge[1:, :] |= dy
    edge[:-1, :] |= dy
    return edge


def compare_membership(region: SlabRegion, bm: Bitmap, band: int = 2) -> Agreement:
    """Agreement between exact membership of pixel centres and the bitmap,
    ignoring pixels within ``band`` pixels of a transition in either."""
    exact = region.contains(bm.centers()).reshape(bm.bits.shape)
    edge = _transitions(exact) | _transitions(bm.bits)
    if band > 0:
        edge = ndimage.binary_dilation(edge, structure=np.ones((3, 3), dtype=bool), iterations=band)
    keep = ~edge
    n = int(keep.sum())
    if n == 0:
        return Agreement(1.0, 0, [])
    differ = keep & (exact != bm.bits)
    iy, ix = np.nonzero(differ)
    return Agreement(float(1.0 - differ.sum() / n), n, list(zip(ix.tolist(), iy.tolist())))
