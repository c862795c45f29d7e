"""Small crease patterns drawn in the figures, rebuilt as exact fixtures."""
from __future__ import annotations

from fractions import Fraction

from foldlogic.exact import HALF, ORIGIN, SQRT3, ExactPoint, polar
from foldlogic.local import VertexStar
from foldlogic.pattern import CreaseLabel, CreasePattern, point_in_convex

M, V = CreaseLabel.MOUNTAIN, CreaseLabel.VALLEY
P = ExactPoint


def impossible_star() -> VertexStar:
    """Four creases whose 30-degree wedge lies between two valleys."""
    return VertexStar.from_degrees({60: "M", 120: "V", 150: "V", 270: "V"})


def hexagonal_folder():
    """Six creases at 60 degree spacing, four mountains then two valleys.

    Returns the pattern and a point inside each of the six regions a..f,
    counterclockwise from the region at 30 degrees.
    """
    hexagon = [polar(30 + 60 * i, 2) for i in range(6)]
    labels = {0: M, 60: M, 120: M, 180: M, 240: V, 300: V}
    cp = CreasePattern.from_segments([(ORIGIN, polar(d, 3), lab) for d, lab in labels.items()], hexagon)
    inside = {n: polar(d, HALF) for n, d in zip("abcdef", (30, 90, 150, 210, 270, 330))}
    return cp, inside


def region_names(cp, fc, inside) -> dict[int, str]:
    names = {}
    for name, p in inside.items():
        for f in range(len(fc.faces)):
            if point_in_convex(p, fc.polygon(f), strict=True):
                names[f] = name
    return names


def problematic_configuration() -> CreasePattern:
    """Two nested pleats meeting a hex corner; every vertex is locally fine."""
    segs = [
        (polar(120, 4), polar(-60, 2), M),
        (polar(120, 4) + P(1, 0), polar(120, 4) + P(1, 0) + polar(-60, 2), V),
        (polar(120, 2) + polar(-120, 1), polar(120, 2) + polar(-120, 1) + polar(-60, 3), V),
        (polar(60, 1), polar(60, 1) + P(Fraction(3, 2), 0), M),
        (polar(120, 2), polar(120, 2) + P(3, 0), V),
        (P(-1, 0), P(-4, 0), M),
        (P(-1, 0) + polar(120, 1), P(-1, 0) + polar(120, 1) + P(-2, 0), V),
        (polar(120, 2), polar(120, 2) + polar(-120, 1), M),
        (polar(60, 1), polar(120, 1), M),
        (polar(120, 1), polar(120, 1) + polar(-120, 1), V),
        (polar(120, 1), polar(120, 1) + P(-1, 0), V),
        (polar(120, 1), polar(120, 1) + polar(60, 1), M),
    ]
    box = [P(-3, -SQRT3), P(2, -SQRT3), P(2, SQRT3 * 2), P(-3, SQRT3 * 2)]
    return CreasePattern.from_segments(segs, box)


def square(labels=((0, 0, 1, 1, V),), size=1) -> CreasePattern:
    """Unit square with straight creases given as (x0, y0, x1, y1, label)."""
    box = [P(0, 0), P(size, 0), P(size, size), P(0, size)]
    return CreasePattern.from_segments([(P(a, b), P(c, d), lab) for a, b, c, d, lab in labels], box)
