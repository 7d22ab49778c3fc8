"""Witness constructions for every achievable (edge count, degeneracy) pair."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

from .graph import Graph, StatPair, complement, is_tree
from .polytope import lower_bound, upper_bound


class NotRealizableError(ValueError):
    """No n-node graph has the requested (edge count, degeneracy) pair."""


def upper_witness(n: int, d: int) -> Graph:
    """The unique minimum-edge graph of degeneracy d: K_{d+1} plus isolated nodes."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0 <= d <= n - 1:
        raise ValueError(f"degeneracy level must satisfy 0 <= d <= n-1, got d={d} for n={n}")
    rows = [0] * n
    clique = (1 << (d + 1)) - 1
    for v in range(d + 1):
        rows[v] = clique ^ (1 << v)
    return Graph._from_rows(n, rows)


def lower_witness_complement(n: int, d: int) -> Graph:
    """A maximum-edge graph of degeneracy d, built by complementation.

    Complementing the minimum-edge witness at level n-d-1 lands on the
    opposite extreme: an independent (n-d)-set joined to K_d, with
    statistic (L_n(d), d).
    """
    if n >= 1 and not 0 <= d <= n - 1:
        raise ValueError(f"degeneracy level must satisfy 0 <= d <= n-1, got d={d} for n={n}")
    return complement(upper_witness(n, n - d - 1))


def realize(n: int, d: int, e: int) -> Graph:
    """A deterministic n-node graph with exactly e edges and degeneracy d.

    Starts from K_{d+1} plus an isolated pool of p = n-d-1 nodes and deals
    the extra edges out round-robin: the j-th extra edge (j = 1, 2, ...)
    attaches pool node d+1+((j-1) mod p) to its lowest-index non-neighbor
    in the clique. Pool degrees never exceed d, so the degeneracy stays d.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0 <= d <= n - 1:
        raise NotRealizableError(
            f"no n={n} graph has degeneracy {d}; levels run 0..{n - 1}")
    lo = upper_bound(n, d)
    hi = lower_bound(n, d)
    if not lo <= e <= hi:
        raise NotRealizableError(
            f"no n={n} graph has degeneracy {d} with {e} edges; "
            f"achievable range is [{lo}, {hi}]")
    g = upper_witness(n, d)
    rows = [g.adjacency_row(v) for v in range(n)]
    pool = n - d - 1
    for j in range(1, e - lo + 1):
        v = d + 1 + (j - 1) % pool
        target = -1
        for c in range(d + 1):
            if not rows[v] >> c & 1:
                target = c
                break
        rows[v] |= 1 << target
        rows[target] |= 1 << v
    return Graph._from_rows(n, rows)


@dataclass(frozen=True)
class BoundaryClass:
    """A maximum-edge boundary class with a membership certificate."""

    n: int
    degen: int
    stats: StatPair
    description: str
    representative: Graph
    is_member: Callable[[Graph], bool]


def named_boundary_graphs(n: int, d: int) -> BoundaryClass:
    """The two characterized maximum-edge classes.

    d = 1: the graphs at (n-1, 1) are exactly the trees on n nodes.
    d = n-2: the graphs at (C(n,2)-1, n-2) are exactly K_n minus one edge.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if d == 1:
        return BoundaryClass(
            n=n,
            degen=1,
            stats=StatPair(lower_bound(n, 1), 1),
            description=f"trees on {n} nodes",
            representative=realize(n, 1, n - 1),
            is_member=lambda g: g.n == n and is_tree(g),
        )
    if d == n - 2:
        rows = [((1 << n) - 1) ^ (1 << v) for v in range(n)]
        rows[0] ^= 1 << 1
        rows[1] ^= 1 << 0
        rep = Graph._from_rows(n, rows)
        full = comb(n, 2)
        return BoundaryClass(
            n=n,
            degen=n - 2,
            stats=StatPair(full - 1, n - 2),
            description=f"K_{n} minus one edge",
            representative=rep,
            is_member=lambda g: g.n == n and g.edge_count == full - 1,
        )
    raise ValueError(f"characterized classes exist only at d=1 and d=n-2, got d={d}")
