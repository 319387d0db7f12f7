import numpy as np
import pytest

from tightspan.geom import Polyline, ShapeSet
from tightspan.hatch import SlabRegion, double_hatch
from tightspan.scene import load_builtin

CONNECTED_FIXTURES = ("fig1_arc", "fig7_contour", "square", "lshape")

# criterion lines collected by test_acceptance.py, echoed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def random_walk(seed: int, max_vertices: int = 100) -> ShapeSet:
    """Random polyline with 3..max_vertices vertices; every third seed is
    snapped to a half-unit grid so axis-parallel and collinear runs show up."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, max_vertices + 1))
    steps = rng.normal(size=(n - 1, 2))
    if seed % 3 == 0:
        steps = np.round(steps * 2) / 2
        steps[np.all(steps == 0, axis=1)] = [0.5, 0.0]
    v = np.vstack([[0.0, 0.0], np.cumsum(steps, axis=0)])
    keep = np.concatenate([[True], np.any(np.abs(np.diff(v, axis=0)) > 1e-9, axis=1)])
    return ShapeSet(polylines=[Polyline(v[keep])])


def unit_square_region() -> SlabRegion:
    return SlabRegion([[0, 1, 0, 0, 1, 1]], "h")


def lshape_region() -> SlabRegion:
    return SlabRegion([[0, 1, 0, 0, 2, 2], [1, 2, 0, 0, 1, 1]], "h")


@pytest.fixture(scope="session")
def scenes():
    return {name: load_builtin(name) for name in CONNECTED_FIXTURES + ("fig3_points",)}


@pytest.fixture(scope="session")
def regions(scenes):
    return {name: double_hatch(scenes[name].shapes) for name in CONNECTED_FIXTURES}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
