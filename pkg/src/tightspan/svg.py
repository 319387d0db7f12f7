"""Deterministic SVG drawings of shapes, hatched regions, traces and witnesses.

World y points up; the emitter writes ``-y`` so the picture is not mirrored.
All numbers go through one fixed-decimal formatter, so identical input gives
byte-identical output.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geom import Point, ShapeSet, as_point
from .hatch import HatchResult, SlabRegion
from .retract import RetractionTrace


@dataclass
class SvgStyle:
    width: float = 400.0
    pad: float = 0.08          # fraction of the larger bbox side
    decimals: int = 4
    region_fill: str = "#b0b0b0"
    stroke: str = "#000000"
    trace_color: str = "#1f4fbf"
    witness_color: str = "#c0392b"
    line_width: float = 0.006  # fraction of the larger bbox side
    dot_radius: float = 0.012


@dataclass(frozen=True)
class Witnesses:
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(as_point(p) for p in self.points))


def _num(v: float, decimals: int) -> str:
    s = f"{v:.{decimals}f}"
    if s.startswith("-") and float(s) == 0.0:
        s = s[1:]
    return s


def _item_points(item) -> np.ndarray:
    if isinstance(item, ShapeSet):
        s = item.segments()
        return s.reshape(-1, 2)
    if isinstance(item, SlabRegion):
        return item.edges().reshape(-1, 2)
    if isinstance(item, HatchResult):
        return np.vstack([_item_points(item.region), _item_points(item.residue)])
    if isinstance(item, RetractionTrace):
        pts = [s.point for s in item.steps] + ([item.final] if item.final else [])
        return np.array([(p.x, p.y) for p in pts]).reshape(-1, 2)
    if isinstance(item, Witnesses):
        return np.array([(p.x, p.y) for p in item.points]).reshape(-1, 2)
    if isinstance(item, Point):
        return np.array([[item.x, item.y]])
    raise TypeError(f"cannot draw {type(item).__name__}")


def _bbox(items) -> tuple[float, float, float, float]:
    pts = [p for p in (_item_points(it) for it in items) if len(p)]
    if not pts:
        return (-1.0, -1.0, 1.0, 1.0)
    pts = np.vstack(pts)
    return (float(pts[:, 0].min()), float(pts[:, 1].min()),
            float(pts[:, 0].max()), float(pts[:, 1].max()))


class _Writer:
    def __init__(self, style: SvgStyle, scale: float):
        self.style = style
        self.scale = scale
        self.body: list[str] = []
        self.uses_arrow = False

    def n(self, v: float) -> str:
        return _num(v, self.style.decimals)

    def xy(self, x: float, y: float) -> str:
        return f"{self.n(x)},{self.n(-y)}"

    def region(self, region: SlabRegion):
        if region.is_empty():
            return
        parts = []
        for s0, s1, la, lb, ha, hb in region.data:
            quad = [(la, s0), (ha, s0), (hb, s1), (lb, s1)]
            if region.orientation == "v":
                quad = [(b, a) for a, b in quad]
            parts.append("M" + " L".join(self.xy(x, y) for x, y in quad) + " Z")
        st = self.style
        # the thin stroke keeps zero-height slabs visible
        self.body.append(f'<path d="{" ".join(parts)}" fill="{st.region_fill}" stroke="{st.region_fill}" '
                         f'stroke-width="{self.n(st.line_width * self.scale)}" stroke-linejoin="round"/>')

    def shape(self, shape: ShapeSet):
        st = self.style
        lw = self.n(st.line_width * self.scale)
        for r in shape.regions:
            self.region(r)
        for pl in shape.polylines:
            pts = " ".join(self.xy(v.x, v.y) for v in pl.vertices)
            tag = "polygon" if pl.closed else "polyline"
            self.body.append(f'<{tag} points="{pts}" fill="none" stroke="{st.stroke}" stroke-width="{lw}" '
                             f'stroke-linejoin="round" stroke-linecap="round"/>')
        for p in shape.points:
            self.dot(p, st.stroke)

    def dot(self, p: Point, color: str):
        r = self.n(self.style.dot_radius * self.scale)
        self.body.append(f'<circle cx="{self.n(p.x)}" cy="{self.n(-p.y)}" r="{r}" fill="{color}"/>')

    def trace(self, trace: RetractionTrace):
        st = self.style
        pts = [s.point for s in trace.steps] + ([trace.final] if trace.final else [])
        lw = self.n(st.line_width * self.scale)
        for a, b in zip(pts, pts[1:]):
            if a == b:
                continue
            self.uses_arrow = True
            self.body.append(f'<line x1="{self.n(a.x)}" y1="{self.n(-a.y)}" x2="{self.n(b.x)}" y2="{self.n(-b.y)}" '
                             f'stroke="{st.trace_color}" stroke-width="{lw}" marker-end="url(#arrow)"/>')
        if pts:
            self.dot(pts[0], st.trace_color)


def emit_svg(items, style: SvgStyle | None = None) -> str:
    """One SVG document drawing ``items`` in order (later items on top).

    Items may be :class:`ShapeSet`, :class:`SlabRegion`, :class:`HatchResult`,
    :class:`RetractionTrace`, :class:`Witnesses` or a single :class:`Point`.
    """
    style = style or SvgStyle()
    items = list(items)
    x0, y0, x1, y1 = _bbox(items)
    ext = max(x1 - x0, y1 - y0, 1e-6)
    pad = style.pad * ext
    vx, vy = x0 - pad, -(y1 + pad)
    vw, vh = (x1 - x0) + 2 * pad, (y1 - y0) + 2 * pad
    w = _Writer(style, ext)
    for it in items:
        if isinstance(it, SlabRegion):
            w.region(it)
        elif isinstance(it, HatchResult):
            w.region(it.region)
            w.shape(it.residue)
        elif isinstance(it, ShapeSet):
            w.shape(it)
        elif isinstance(it, RetractionTrace):
            w.trace(it)
        elif isinstance(it, Witnesses):
            for p in it.points:
                w.dot(p, style.witness_color)
        elif isinstance(it, Point):
            w.dot(it, style.stroke)
        else:
            raise TypeError(f"cannot draw {type(it).__name__}")
    n = w.n
    height = style.width * vh / vw
    head = ['<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{n(style.width)}" '
            f'height="{n(height)}" viewBox="{n(vx)} {n(vy)} {n(vw)} {n(vh)}">']
    if w.uses_arrow:
        head.append(f'<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" '
                    f'markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 Z" fill="{style.trace_color}"/>'
                    f'</marker></defs>')
    return "\n".join(head + w.body + ["</svg>"]) + "\n"
