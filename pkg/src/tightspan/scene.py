"""JSON scene and region files."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .geom import Point, Polyline, ShapeError, ShapeSet
from .hatch import SLAB_FIELDS, HatchResult, SlabRegion

DEFAULT_ARC_SEGMENTS = 256


class SchemaError(ValueError):
    """Malformed scene or region document; ``path`` locates the offending value."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class Scene:
    name: str
    shapes: ShapeSet
    declared_connected: bool | None = None
    sample_spacing: float | None = None


# --- field readers ------------------------------------------------------------

def _number(v, path: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(path, f"expected a number, got {type(v).__name__}")
    v = float(v)
    if not math.isfinite(v):
        raise SchemaError(path, "coordinate must be finite")
    return v


def _xy(v, path: str) -> tuple[float, float]:
    if not isinstance(v, list) or len(v) != 2:
        raise SchemaError(path, "expected [x, y]")
    return _number(v[0], f"{path}[0]"), _number(v[1], f"{path}[1]")


def _list(v, path: str) -> list:
    if not isinstance(v, list):
        raise SchemaError(path, f"expected a list, got {type(v).__name__}")
    return v


def _object(v, path: str, allowed: set) -> dict:
    if not isinstance(v, dict):
        raise SchemaError(path, f"expected an object, got {type(v).__name__}")
    extra = sorted(set(v) - allowed)
    if extra:
        raise SchemaError(f"{path}.{extra[0]}", "unknown key")
    return v


def _reject_constant(name):
    raise ValueError(f"non-finite literal {name}")


def load_json(text: str):
    if not text or not text.strip():
        raise SchemaError("$", "empty document")
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except ValueError as exc:
        raise SchemaError("$", f"invalid JSON ({exc})") from None


# --- arcs ---------------------------------------------------------------------

def tessellate_arc(center, radius: float, from_deg: float, to_deg: float,
                   segments: int = DEFAULT_ARC_SEGMENTS) -> Polyline:
    """Polyline through ``segments + 1`` equally spaced points of the arc."""
    t = np.radians(np.linspace(from_deg, to_deg, segments + 1))
    xs = center[0] + radius * np.cos(t)
    ys = center[1] + radius * np.sin(t)
    return Polyline(list(zip(xs.tolist(), ys.tolist())))


def _arc(v, path: str) -> Polyline:
    v = _object(v, path, {"center", "radius", "from_deg", "to_deg", "segments"})
    for key in ("center", "radius", "from_deg", "to_deg"):
        if key not in v:
            raise SchemaError(f"{path}.{key}", "missing")
    center = _xy(v["center"], f"{path}.center")
    radius = _number(v["radius"], f"{path}.radius")
    if radius <= 0:
        raise SchemaError(f"{path}.radius", "must be positive")
    a = _number(v["from_deg"], f"{path}.from_deg")
    b = _number(v["to_deg"], f"{path}.to_deg")
    if abs(b - a) > 360:
        raise SchemaError(f"{path}.to_deg", "arc sweeps more than a full turn")
    n = v.get("segments", DEFAULT_ARC_SEGMENTS)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError(f"{path}.segments", "expected a positive integer")
    try:
        return tessellate_arc(center, radius, a, b, n)
    except ShapeError as exc:
        raise SchemaError(path, str(exc)) from None


# --- scenes -------------------------------------------------------------------

SCENE_KEYS = {"name", "points", "polylines", "arcs", "declared_connected", "sample_spacing"}


def scene_from_dict(doc) -> Scene:
    doc = _object(doc, "$", SCENE_KEYS)
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise SchemaError("$.name", "expected a string")
    points = [Point(*_xy(p, f"$.points[{i}]")) for i, p in enumerate(_list(doc.get("points", []), "$.points"))]
    polylines = []
    for i, pl in enumerate(_list(doc.get("polylines", []), "$.polylines")):
        path = f"$.polylines[{i}]"
        pl = _object(pl, path, {"vertices", "closed"})
        if "vertices" not in pl:
            raise SchemaError(f"{path}.vertices", "missing")
        verts = [_xy(v, f"{path}.vertices[{j}]") for j, v in enumerate(_list(pl["vertices"], f"{path}.vertices"))]
        closed = pl.get("closed", False)
        if not isinstance(closed, bool):
            raise SchemaError(f"{path}.closed", "expected a boolean")
        try:
            polylines.append(Polyline(verts, closed))
        except ShapeError as exc:
            raise SchemaError(path, str(exc)) from None
    for i, arc in enumerate(_list(doc.get("arcs", []), "$.arcs")):
        polylines.append(_arc(arc, f"$.arcs[{i}]"))
    if not points and not polylines:
        raise SchemaError("$", "scene has no points, polylines or arcs")

    declared = doc.get("declared_connected")
    if declared is not None and not isinstance(declared, bool):
        raise SchemaError("$.declared_connected", "expected a boolean")
    spacing = doc.get("sample_spacing")
    if spacing is not None:
        spacing = _number(spacing, "$.sample_spacing")
        if spacing <= 0:
            raise SchemaError("$.sample_spacing", "must be positive")
    return Scene(name, ShapeSet(points=points, polylines=polylines), declared, spacing)


def parse_scene(text: str) -> Scene:
    return scene_from_dict(load_json(text))


def scene_to_dict(scene: Scene) -> dict:
    """Arcs come back as the polylines they were tessellated into."""
    doc = {"name": scene.name,
           "points": [[p.x, p.y] for p in scene.shapes.points],
           "polylines": [{"vertices": [[v.x, v.y] for v in pl.vertices], "closed": pl.closed}
                         for pl in scene.shapes.polylines]}
    if scene.declared_connected is not None:
        doc["declared_connected"] = scene.declared_connected
    if scene.sample_spacing is not None:
        doc["sample_spacing"] = scene.sample_spacing
    return doc


def serialize_scene(scene: Scene) -> str:
    return json.dumps(scene_to_dict(scene), indent=1)


# --- regions ------------------------------------------------------------------

def region_to_dict(region: SlabRegion, residue: ShapeSet | None = None) -> dict:
    return {
        "orientation": region.orientation,
        "slabs": [dict(zip(SLAB_FIELDS, map(float, row))) for row in region.data],
        "residue": {"points": [[p.x, p.y] for p in (residue.points if residue else ())]},
    }


def hatch_result_to_dict(res: HatchResult) -> dict:
    return region_to_dict(res.region, res.residue)


def region_from_dict(doc) -> HatchResult:
    doc = _object(doc, "$", {"orientation", "slabs", "residue"})
    orient = doc.get("orientation", "h")
    if orient not in ("h", "v"):
        raise SchemaError("$.orientation", "expected 'h' or 'v'")
    rows = []
    for i, s in enumerate(_list(doc.get("slabs", []), "$.slabs")):
        s = _object(s, f"$.slabs[{i}]", set(SLAB_FIELDS))
        row = []
        for key in SLAB_FIELDS:
            if key not in s:
                raise SchemaError(f"$.slabs[{i}].{key}", "missing")
            row.append(_number(s[key], f"$.slabs[{i}].{key}"))
        rows.append(row)
    res = _object(doc.get("residue", {}), "$.residue", {"points"})
    pts = [Point(*_xy(p, f"$.residue.points[{i}]"))
           for i, p in enumerate(_list(res.get("points", []), "$.residue.points"))]
    try:
        region = SlabRegion(rows, orient)
    except ShapeError as exc:
        raise SchemaError("$.slabs", str(exc)) from None
    return HatchResult(region, ShapeSet(points=pts))


def parse_region(text: str) -> HatchResult:
    return region_from_dict(load_json(text))


def is_region_document(doc) -> bool:
    return isinstance(doc, dict) and "slabs" in doc


# --- shipped fixtures ---------------------------------------------------------

def builtin_scenes() -> list[str]:
    files = resources.files("tightspan") / "scenes"
    return sorted(f.name[:-5] for f in files.iterdir() if f.name.endswith(".json"))


def load_builtin(name: str) -> Scene:
    f = resources.files("tightspan") / "scenes" / f"{name}.json"
    if not f.is_file():
        raise FileNotFoundError(f"no built-in scene {name!r}; have {', '.join(builtin_scenes())}")
    return parse_scene(f.read_text())
