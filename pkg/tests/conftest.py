"""Shared fixtures and reference implementations used across the suite."""

import itertools

import pytest

from edergm import Graph, build_census


def naive_core_decompose(g):
    """Definition-based core numbers: the k-core is the maximal subgraph
    of minimum degree >= k, found by repeated deletion until stable.

    Deliberately ignorant of peeling orders; used as an oracle for the
    optimized implementation.
    """
    core = [0] * g.n
    for k in range(1, g.n + 1):
        alive = set(range(g.n))
        changed = True
        while changed:
            changed = False
            for v in list(alive):
                deg = sum(1 for u in g.neighbors(v) if u in alive)
                if deg < k:
                    alive.discard(v)
                    changed = True
        if not alive:
            break
        for v in alive:
            core[v] = k
    return core


def all_graphs(n):
    """Iterate every labeled simple graph on n nodes."""
    m = n * (n - 1) // 2
    for mask in range(1 << m):
        yield Graph.from_edge_mask(n, mask)


def graphs_with_edges(n, e):
    """Iterate every labeled graph on n nodes with exactly e edges."""
    pairs = list(itertools.combinations(range(n), 2))
    for chosen in itertools.combinations(pairs, e):
        yield Graph(n, chosen)


@pytest.fixture(scope="session")
def census_tables():
    """One census per small n, shared across the whole run."""
    return {n: build_census(n) for n in range(3, 8)}


@pytest.fixture()
def fig_graph():
    # 14 nodes: a 5-clique fused to a hub, two triangles-with-tail arms,
    # and a pendant star. Degeneracy 4.
    edges = [
        (0, 1), (1, 2), (1, 3), (1, 4), (1, 5),
        (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5),
        (0, 6), (6, 7), (6, 8), (7, 8),
        (0, 9), (9, 10), (9, 11), (9, 12),
    ]
    return Graph(14, edges)
