"""Normal directions of the polytope and the extremal-direction map.

Directions live in the plane of normalized statistics. Four closed cones
partition it; the map alpha sends a direction to the limiting location of
the maximizing statistic on the unit-square limit region

    lower boundary  L(x) = 1 - sqrt(1 - x)
    upper boundary  U(x) = sqrt(x)        for x in [0, 1].

All cone tests are exact: inputs are converted to Fractions (floats at
their exact binary value) and membership is decided by the signs of the
conic coefficients with respect to each cone's integer generators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

from .polytope import build_polytope

DirectionLike = tuple


class ConeClass(Enum):
    EMPTY = "empty"
    COMPLETE = "complete"
    UPPER_INTERIOR = "upper_interior"
    LOWER_INTERIOR = "lower_interior"
    BOUNDARY = "boundary"


# cone generators, counterclockwise pairs
_CONES: tuple[tuple[ConeClass, tuple[tuple[int, int], tuple[int, int]]], ...] = (
    (ConeClass.EMPTY, ((1, -2), (-1, 0))),
    (ConeClass.COMPLETE, ((-1, 2), (1, 0))),
    (ConeClass.UPPER_INTERIOR, ((-1, 2), (-1, 0))),
    (ConeClass.LOWER_INTERIOR, ((1, 0), (1, -2))),
)


def _as_fractions(direction: DirectionLike) -> tuple[Fraction, Fraction]:
    if len(direction) != 2:
        raise ValueError(f"direction must have two coordinates, got {direction!r}")
    d1 = Fraction(direction[0])
    d2 = Fraction(direction[1])
    if d1 == 0 and d2 == 0:
        raise ValueError("the zero vector has no direction")
    return d1, d2


def classify_direction(direction: DirectionLike) -> ConeClass:
    """Which cone's (open) interior holds the direction; BOUNDARY on a shared ray."""
    d1, d2 = _as_fractions(direction)
    for cls, (g1, g2) in _CONES:
        det = g1[0] * g2[1] - g1[1] * g2[0]
        s = (d1 * g2[1] - d2 * g2[0]) / det
        t = (g1[0] * d2 - g1[1] * d1) / det
        if s > 0 and t > 0:
            return cls
    return ConeClass.BOUNDARY


def alpha_exact(direction: DirectionLike) -> tuple[Fraction, Fraction]:
    """alpha as exact rationals (for a direction with rational coordinates)."""
    cls = classify_direction(direction)
    if cls is ConeClass.BOUNDARY:
        raise ValueError(f"direction {direction!r} lies on a cone boundary ray")
    if cls is ConeClass.EMPTY:
        return (Fraction(0), Fraction(0))
    if cls is ConeClass.COMPLETE:
        return (Fraction(1), Fraction(1))
    d1, d2 = _as_fractions(direction)
    a = d2 / abs(d1)  # d1 != 0 strictly inside either side cone
    if cls is ConeClass.LOWER_INTERIOR:
        return (1 - a * a / 4, 1 + a / 2)
    return (a * a / 4, a / 2)


def alpha(direction: DirectionLike) -> tuple[float, float]:
    """Limit of the maximizing normalized statistic along the direction.

    Interior of the empty cone maps to (0,0), of the complete cone to (1,1).
    A direction (1, a) with a in (-2, 0) maps to the lower-boundary point
    with tangent slope -1/a, namely (1 - a^2/4, 1 + a/2); a direction
    (-1, a) with a in (0, 2) maps to (a^2/4, a/2) on the upper boundary.
    Rays on cone boundaries are rejected. Scaling the direction by any
    positive constant leaves the value unchanged.
    """
    x, y = alpha_exact(direction)
    return (float(x), float(y))


@dataclass(frozen=True)
class FaceNormals:
    """Outward normal directions of the polytope edges.

    raw is for the lattice polytope: +-(1, -m), m = 1..n-1. normalized is
    for the polytope rescaled to [0,1]^2, where an edge of raw slope 1/m
    turns into one of slope C(n,2)/(n-1) * (1/m) = n/(2m), giving normals
    +-(1, -2m/n).
    """

    n: int
    raw: tuple[tuple[int, int], ...]
    normalized: tuple[tuple[Fraction, Fraction], ...]


def face_normals(n: int) -> FaceNormals:
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    raw = []
    normalized = []
    for m in range(1, n):
        raw.append((1, -m))
        normalized.append((Fraction(1), Fraction(-2 * m, n)))
    for m in range(1, n):
        raw.append((-1, m))
        normalized.append((Fraction(-1), Fraction(2 * m, n)))
    return FaceNormals(n, tuple(raw), tuple(normalized))


def nearest_extremal_vertex(n: int, direction: DirectionLike) -> tuple[tuple[int, int], ...]:
    """Vertices of the normalized polytope maximizing the inner product.

    Returns the raw lattice coordinates of the maximizer; a direction
    normal to an edge returns both endpoints (sorted). Exact arithmetic.
    """
    d1, d2 = _as_fractions(direction)
    pairs = Fraction(comb(n, 2))
    levels = Fraction(n - 1)
    best_val = None
    best: list[tuple[int, int]] = []
    for e, d in build_polytope(n).vertices:
        val = d1 * e / pairs + d2 * d / levels
        if best_val is None or val > best_val:
            best_val = val
            best = [(e, d)]
        elif val == best_val:
            best.append((e, d))
    return tuple(sorted(best))


def lower_limit(x: float) -> float:
    """Lower boundary of the limit region: 1 - sqrt(1 - x) on [0, 1]."""
    if not 0 <= x <= 1:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    return 1.0 - math.sqrt(1.0 - x)


def upper_limit(x: float) -> float:
    """Upper boundary of the limit region: sqrt(x) on [0, 1]."""
    if not 0 <= x <= 1:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    return math.sqrt(x)


def limit_contains_exact(x, y) -> bool:
    """Exact membership of (x, y) in the limit region, boundary included.

    For x, y in [0, 1] the two square-root inequalities are equivalent to
    y^2 <= x and (1-y)^2 <= 1-x, which Fractions decide exactly.
    """
    fx = Fraction(x)
    fy = Fraction(y)
    if not (0 <= fx <= 1 and 0 <= fy <= 1):
        return False
    return fy * fy <= fx and (1 - fy) * (1 - fy) <= 1 - fx
