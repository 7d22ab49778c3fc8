"""Labeled simple graphs: core decomposition, sufficient statistics, constructions.

Nodes are the integers 0..n-1. Adjacency is stored as one Python-int bitmask
per node, so complement/join/union are exact set operations and isolated
nodes stay explicit (they change n and therefore the normalization).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from . import _kernels


class GraphFormatError(ValueError):
    """Malformed edge-list text."""


@dataclass(frozen=True)
class CoreDecomposition:
    """Per-node core numbers plus their maximum, the graph degeneracy."""

    core_numbers: tuple[int, ...]
    degeneracy: int


@dataclass(frozen=True)
class StatPair:
    """Raw sufficient statistic: edge count and degeneracy."""

    edges: int
    degen: int


@dataclass(frozen=True)
class NormalizedStat:
    """Sufficient statistic rescaled to [0,1]^2: (edges/C(n,2), degen/(n-1))."""

    x: float
    y: float


def node_pairs(n: int) -> list[tuple[int, int]]:
    """Unordered node pairs in lexicographic order.

    This ordering assigns bit k of an edge mask to pair k; the census cache
    and the sampler trace both rely on it.
    """
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Graph:
    """Immutable labeled simple undirected graph on nodes 0..n-1."""

    __slots__ = ("n", "_adj", "_m")

    n: int

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValueError(f"node count must be a positive integer, got {n!r}")
        adj = [0] * n
        m = 0
        for u, v in edges:
            _check_pair(n, u, v)
            if adj[u] >> v & 1:
                raise ValueError(f"duplicate edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            m += 1
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_adj", adj)
        object.__setattr__(self, "_m", m)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def _from_rows(cls, n: int, rows: list[int]) -> "Graph":
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "_adj", rows)
        object.__setattr__(g, "_m", sum(r.bit_count() for r in rows) // 2)
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        if n < 1:
            raise ValueError(f"node count must be positive, got {n!r}")
        full = (1 << n) - 1
        return cls._from_rows(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> "Graph":
        """Decode an edge mask whose bit k is pair k of node_pairs(n)."""
        m = comb(n, 2)
        if not 0 <= mask < (1 << m):
            raise ValueError(f"edge mask out of range for n={n}: {mask}")
        rows = [0] * n
        for k, (u, v) in enumerate(node_pairs(n)):
            if mask >> k & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return cls._from_rows(n, rows)

    def edge_mask(self) -> int:
        mask = 0
        for k, (u, v) in enumerate(node_pairs(self.n)):
            if self._adj[u] >> v & 1:
                mask |= 1 << k
        return mask

    @property
    def edge_count(self) -> int:
        return self._m

    def has_edge(self, u: int, v: int) -> bool:
        _check_pair(self.n, min(u, v), max(u, v))
        return bool(self._adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def neighbors(self, v: int) -> Iterator[int]:
        return _iter_bits(self._adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            row = self._adj[u] >> (u + 1)
            for off in _iter_bits(row):
                yield (u, u + 1 + off)

    def adjacency_row(self, v: int) -> int:
        """Neighbor set of v as a bitmask."""
        return self._adj[v]

    def to_matrix(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix (uint8)."""
        out = np.zeros((self.n, self.n), dtype=np.uint8)
        for u in range(self.n):
            for v in _iter_bits(self._adj[u]):
                out[u, v] = 1
        return out

    def with_edge(self, u: int, v: int) -> "Graph":
        _check_pair(self.n, min(u, v), max(u, v))
        if self._adj[u] >> v & 1:
            return self
        rows = list(self._adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph._from_rows(self.n, rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self._m})"


def _check_pair(n: int, u, v) -> None:
    if not isinstance(u, int) or not isinstance(v, int):
        raise ValueError(f"edge endpoints must be integers, got ({u!r}, {v!r})")
    if not (0 <= u < v < n):
        raise ValueError(f"edge ({u}, {v}) violates 0 <= u < v < n with n={n}")


def core_decompose(g: Graph) -> CoreDecomposition:
    """Core number of every node via degree-indexed bucket peeling.

    Runs in time linear in n + |edges|. The degeneracy is the largest core
    number; the empty graph on any n has degeneracy 0.
    """
    n = g.n
    indptr = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        indptr[v + 1] = indptr[v] + g.degree(v)
    indices = np.empty(int(indptr[-1]), dtype=np.int64)
    pos = 0
    for v in range(n):
        for u in _iter_bits(g.adjacency_row(v)):
            indices[pos] = u
            pos += 1
    core = _kernels.core_numbers(indptr, indices)
    return CoreDecomposition(tuple(int(c) for c in core), int(core.max()))


def stat_pair(g: Graph) -> StatPair:
    """The model's raw sufficient statistic (edge count, degeneracy)."""
    return StatPair(g.edge_count, core_decompose(g).degeneracy)


def normalize(s: StatPair, n: int) -> NormalizedStat:
    """Rescale a raw statistic to [0,1]^2; requires n >= 2."""
    if n < 2:
        raise ValueError(f"normalization needs n >= 2, got {n}")
    return NormalizedStat(s.edges / comb(n, 2), s.degen / (n - 1))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    rows = [full & ~g.adjacency_row(v) & ~(1 << v) for v in range(g.n)]
    return Graph._from_rows(g.n, rows)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """g1 on 0..n1-1, g2 relabeled to n1..n1+n2-1, no edges between."""
    n1 = g1.n
    rows = [g1.adjacency_row(v) for v in range(n1)]
    rows += [g2.adjacency_row(v) << n1 for v in range(g2.n)]
    return Graph._from_rows(n1 + g2.n, rows)


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    n1, n2 = g1.n, g2.n
    left_mask = (1 << n1) - 1
    right_mask = ((1 << n2) - 1) << n1
    rows = [g1.adjacency_row(v) | right_mask for v in range(n1)]
    rows += [(g2.adjacency_row(v) << n1) | left_mask for v in range(n2)]
    return Graph._from_rows(n1 + n2, rows)


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        for v in _iter_bits(frontier):
            reach |= g.adjacency_row(v)
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def is_tree(g: Graph) -> bool:
    """Connected with exactly n-1 edges."""
    return g.edge_count == g.n - 1 and is_connected(g)


def parse_edge_list(text: str) -> Graph:
    """Parse the shared edge-list format.

    First significant line is "n m"; each of the next m lines is "u v" with
    0 <= u < v < n. Blank lines and lines starting with "#" are ignored.
    """
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {line!r}") from None
        if header is None:
            header = (a, b)
        else:
            edges.append((a, b))
    if header is None:
        raise GraphFormatError("no header line 'n m' found")
    n, m = header
    if n < 1:
        raise GraphFormatError(f"header node count must be positive, got {n}")
    if m < 0 or m != len(edges):
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g))
