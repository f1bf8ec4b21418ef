"""Built-in point configurations used by the CLI and the test suite.

The reflexive polygons are keyed by their standard classification labels;
the leading digit is the number of boundary lattice points. Each list
starts with the interior point and walks the boundary clockwise from
north, matching the labelling convention of the hexagon example.
"""

from .errors import BadConfig
from .geometry import PointConfiguration

_POINTS = {
    "square": [(0, 0), (1, 0), (1, 1), (0, 1)],
    "veronese": [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)],
    "hexagon": [(0, 0), (0, 1), (1, 1), (1, 0), (0, -1), (-1, -1), (-1, 0)],
    "triangle": [(0, 0), (1, 0), (0, 1)],
    "triangle4": [(0, 0), (2, 0), (0, 2)],
    "3": [(0, 0), (0, 1), (1, 0), (-1, -1)],
    "4a": [(0, 0), (0, 1), (1, 0), (0, -1), (-1, 0)],
    "4b": [(0, 0), (0, 1), (1, 0), (0, -1), (-1, -1)],
    "4c": [(0, 0), (0, 1), (1, 0), (0, -1), (-1, -2)],
    "5a": [(0, 0), (0, 1), (1, 0), (1, -1), (0, -1), (-1, 0)],
    "5b": [(0, 0), (0, 1), (1, 0), (1, -1), (0, -1), (-1, -1)],
    "6a": [(0, 0), (0, 1), (1, 1), (1, 0), (0, -1), (-1, -1), (-1, 0)],
    "6b": [(0, 0), (0, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0)],
    "6c": [(0, 0), (0, 1), (1, 0), (2, -1), (1, -1), (0, -1), (-1, -1)],
    "6d": [(0, 0), (0, 1), (1, 0), (2, -1), (1, -1), (0, -1), (-1, 0)],
}

_CACHE = {}


def fixture_names():
    return tuple(_POINTS)


def fixture(name):
    """The named built-in configuration (instances are shared)."""
    if name not in _POINTS:
        known = ", ".join(_POINTS)
        raise BadConfig(f"unknown fixture {name!r} (known: {known})")
    if name not in _CACHE:
        _CACHE[name] = PointConfiguration(_POINTS[name], name=name)
    return _CACHE[name]
