"""
Newton polygons of A-polynomials.

The polygon lives in the (deg_L, deg_M) lattice; a side from (a, b) to (c, d)
has slope (d - b) / (c - a) and boundary slopes of the knot are read off it.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from src.algebra.poly import MultiPoly
from src.errors import PreconditionError

logger = logging.getLogger(__name__)

Point = Tuple[int, int]


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: List[Point]
    slopes: List[Optional[Fraction]] = field(default_factory=list)
    degenerate: bool = False

    def finite_slopes(self) -> List[Fraction]:
        return [s for s in self.slopes if s is not None]

    def all_slopes_even(self) -> bool:
        return all(s.denominator == 1 and s.numerator % 2 == 0 for s in self.finite_slopes())


def support(p: MultiPoly, x: str = "L", y: str = "M") -> np.ndarray:
    """Exponent pairs (deg_x, deg_y) of the nonzero terms."""
    ix, iy = p._index(x), p._index(y)
    pts = {(e[ix] if ix >= 0 else 0, e[iy] if iy >= 0 else 0) for e in p.terms}
    return np.array(sorted(pts), dtype=np.int64)


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> int:
    return int((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def convex_hull(points: np.ndarray) -> List[Point]:
    """Monotone chain, counter-clockwise, collinear points dropped."""
    if len(points) <= 2:
        return [tuple(int(v) for v in pt) for pt in points]
    lower: List[np.ndarray] = []
    for pt in points:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    upper: List[np.ndarray] = []
    for pt in points[::-1]:
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    return [tuple(int(v) for v in pt) for pt in lower[:-1] + upper[:-1]]


def _slope(a: Point, b: Point) -> Optional[Fraction]:
    dx = b[0] - a[0]
    if dx == 0:
        return None
    return Fraction(b[1] - a[1], dx)


def newton_polygon(p: MultiPoly, x: str = "L", y: str = "M") -> NewtonPolygon:
    if p.is_zero():
        raise PreconditionError("Newton polygon of the zero polynomial")
    pts = support(p, x, y)
    hull = convex_hull(pts)
    if len(hull) == 1:
        return NewtonPolygon(hull, [], degenerate=True)
    if len(hull) == 2:
        logger.debug(f"support of {p} is collinear")
        return NewtonPolygon(hull, [_slope(hull[0], hull[1])], degenerate=True)
    sides = [_slope(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]
    logger.debug(f"Newton polygon: {len(hull)} vertices, slopes {[str(s) for s in sides]}")
    return NewtonPolygon(hull, sides)
