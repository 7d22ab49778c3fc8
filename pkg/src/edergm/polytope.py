"""The model polytope: convex hull of all achievable (edge count, degeneracy) pairs.

For n nodes and degeneracy level d, the achievable edge counts are exactly
the integers in [U_n(d), L_n(d)] with

    U_n(d) = C(d+1, 2)                  (a (d+1)-clique plus isolated nodes)
    L_n(d) = C(d+1, 2) + (n-d-1) * d

Every geometric predicate here is exact: integer or Fraction arithmetic
only, floats never enter.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

RationalLike = int | Fraction | str | float


class PointClass(Enum):
    INTERIOR_REALIZABLE = "interior"
    BOUNDARY_VERTEX = "boundary_vertex"
    NOT_REALIZABLE = "not_realizable"


def _check_level(n: int, d: int) -> None:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0 <= d <= n - 1:
        raise ValueError(f"degeneracy level must satisfy 0 <= d <= n-1, got d={d} for n={n}")


def upper_bound(n: int, d: int) -> int:
    """Minimum edge count among n-node graphs with degeneracy d."""
    _check_level(n, d)
    return comb(d + 1, 2)


def lower_bound(n: int, d: int) -> int:
    """Maximum edge count among n-node graphs with degeneracy d."""
    _check_level(n, d)
    return comb(d + 1, 2) + (n - d - 1) * d


@dataclass(frozen=True)
class Polytope:
    """Vertices of the hull, listed in boundary order.

    The cycle walks the minimum-edge chain from (0,0) up to (C(n,2), n-1)
    and returns along the maximum-edge chain.
    """

    n: int
    vertices: tuple[tuple[int, int], ...]

    def center(self) -> tuple[Fraction, Fraction]:
        """Fixed point of the 180-degree rotation that maps the hull to itself."""
        return (Fraction((self.n - 1) * self.n, 4), Fraction(self.n - 1, 2))

    def contains(self, point: tuple[RationalLike, RationalLike]) -> bool:
        """Hull membership, boundary included. Exact."""
        return _hull_position(self.vertices, point) >= 0

    def strictly_contains(self, point: tuple[RationalLike, RationalLike]) -> bool:
        """Strict interior membership. Exact."""
        return _hull_position(self.vertices, point) > 0

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "vertices": [[e, d] for e, d in self.vertices],
            "integer_point_count": count_integer_points(self.n),
            "p_n": list(interior_proportion(self.n).as_integer_ratio()),
        }


def build_polytope(n: int) -> Polytope:
    """Hull of the achievable statistics; 2n-2 vertices, requires n >= 3.

    (For n = 1 the hull is a point and for n = 2 a segment; counting
    operations handle those sizes, the 2n-2 vertex cycle does not.)
    """
    if n < 3:
        raise ValueError(f"polytope vertices are only defined for n >= 3, got {n}")
    upper_chain = [(upper_bound(n, d), d) for d in range(n)]
    lower_chain = [(lower_bound(n, d), d) for d in range(n - 2, 0, -1)]
    return Polytope(n, tuple(upper_chain + lower_chain))


def classify_point(n: int, e: int, d: int) -> PointClass:
    """Classify an integer pair against the achievable set for n nodes."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not isinstance(e, int) or not isinstance(d, int) or e < 0 or d < 0:
        raise ValueError(f"expected nonnegative integers, got e={e!r}, d={d!r}")
    if d > n - 1:
        return PointClass.NOT_REALIZABLE
    lo = upper_bound(n, d)
    hi = lower_bound(n, d)
    if e < lo or e > hi:
        return PointClass.NOT_REALIZABLE
    if e == lo or e == hi:
        return PointClass.BOUNDARY_VERTEX
    return PointClass.INTERIOR_REALIZABLE


def count_integer_points(n: int) -> int:
    """Number of achievable (e, d) pairs: sum over d of (n-d-1)d + 1."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return sum((n - d - 1) * d + 1 for d in range(n))


def interior_proportion(n: int) -> Fraction:
    """Fraction of achievable lattice points that are not hull vertices."""
    if n < 3:
        raise ValueError(f"interior proportion needs n >= 3, got {n}")
    total = count_integer_points(n)
    return Fraction(total - (2 * n - 2), total)


def mle_exists(n: int, mean_stat: tuple[RationalLike, RationalLike]) -> bool:
    """Whether a mean statistic admits a maximum-likelihood estimate.

    mean_stat is in raw coordinates (edge scale 0..C(n,2), degeneracy scale
    0..n-1); the answer is True exactly when the point lies strictly inside
    the hull. Inputs are converted to Fractions, so pass Fraction or str
    (e.g. "7/2") when exactness at the boundary matters; a float is used
    at its exact binary value.
    """
    return build_polytope(n).strictly_contains(mean_stat)


def _hull_position(vertices: tuple[tuple[int, int], ...],
                   point: tuple[RationalLike, RationalLike]) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside. Exact."""
    px = Fraction(point[0])
    py = Fraction(point[1])
    neg = pos = zero = 0
    k = len(vertices)
    for i in range(k):
        x1, y1 = vertices[i]
        x2, y2 = vertices[(i + 1) % k]
        cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
        if cross > 0:
            pos += 1
        elif cross < 0:
            neg += 1
        else:
            zero += 1
    if pos and neg:
        return -1
    if zero:
        return 0
    return 1
