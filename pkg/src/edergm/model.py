"""Exact small-n distributions of the two-parameter exponential family.

The family weights an n-node labeled graph G by exp(<theta, t(G)>) with
t(G) = (edges/C(n,2), degen/(n-1)). For n <= 7 the full census of all
2^C(n,2) labeled graphs is enumerable, which makes the log-partition,
the class distribution, moments and the MLE exact up to float rounding.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path

import numpy as np

from . import _kernels, polytope

CENSUS_MAX_NODES = 7
_CACHE_FORMAT = "edergm-census"
_CACHE_VERSION = 1
_PAIR_ORDER = "lex"


class CensusSizeError(ValueError):
    """Census requested beyond the enumeration cost guard."""


class CensusCacheError(ValueError):
    """Census cache file failed verification."""


@dataclass(frozen=True)
class CensusTable:
    """counts[(e, d)] = number of labeled n-node graphs with that statistic."""

    n: int
    counts: dict[tuple[int, int], int]

    def total(self) -> int:
        return sum(self.counts.values())

    def support(self) -> set[tuple[int, int]]:
        return set(self.counts)


@dataclass(frozen=True)
class MLEFit:
    """Outcome of a likelihood maximization.

    status is "ok" (theta holds the estimate), "no_mle" (the observed mean
    lies on or outside the polytope boundary, so no finite maximizer
    exists), or "not_converged". gap is the final max-norm moment residual.
    """

    status: str
    theta: tuple[float, float] | None
    iterations: int
    gap: float


def build_census(n: int, cache_dir: str | Path | None = None, *,
                 allow_large: bool = False) -> CensusTable:
    """Exhaustive statistic census over all labeled graphs on n nodes.

    Guarded at n <= 7 (2^21 graphs); allow_large lifts the guard up to the
    kernel's mask width. With cache_dir set, a verified cache file is
    reused; a missing, stale or corrupt file triggers a rebuild and
    rewrite.
    """
    if n < 3:
        raise ValueError(f"census needs n >= 3, got {n}")
    if n > CENSUS_MAX_NODES and not allow_large:
        raise CensusSizeError(
            f"census at n={n} enumerates 2^{comb(n, 2)} graphs; "
            f"pass allow_large to go beyond n={CENSUS_MAX_NODES}")
    path = None
    if cache_dir is not None:
        path = Path(cache_dir) / f"census_n{n}.txt"
        if path.exists():
            try:
                return load_census(path, expect_n=n)
            except CensusCacheError:
                pass  # fall through to rebuild
    grid = _kernels.census_counts(n)
    counts = {}
    for e in range(grid.shape[0]):
        for d in range(grid.shape[1]):
            c = int(grid[e, d])
            if c:
                counts[(e, d)] = c
    table = CensusTable(n, counts)
    _verify_census(table)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        save_census(table, path)
    return table


def _verify_census(table: CensusTable) -> None:
    n = table.n
    if table.total() != 1 << comb(n, 2):
        raise CensusCacheError(
            f"census totals for n={n} do not sum to 2^C(n,2)")
    for (e, d), c in table.counts.items():
        if c <= 0 or polytope.classify_point(n, e, d) is polytope.PointClass.NOT_REALIZABLE:
            raise CensusCacheError(
                f"census for n={n} holds impossible entry ({e}, {d}) -> {c}")


def save_census(table: CensusTable, path: str | Path) -> None:
    """Write "e d count" rows sorted by (d, e) under a versioned header."""
    buf = io.StringIO()
    buf.write(f"{_CACHE_FORMAT} v{_CACHE_VERSION} n={table.n} pairs={_PAIR_ORDER}\n")
    for (e, d) in sorted(table.counts, key=lambda p: (p[1], p[0])):
        buf.write(f"{e} {d} {table.counts[(e, d)]}\n")
    Path(path).write_text(buf.getvalue())


def load_census(path: str | Path, expect_n: int | None = None) -> CensusTable:
    """Read and verify a census cache file."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise CensusCacheError(f"{path}: empty cache file")
    head = lines[0].split()
    if (len(head) != 4 or head[0] != _CACHE_FORMAT
            or head[1] != f"v{_CACHE_VERSION}" or head[3] != f"pairs={_PAIR_ORDER}"
            or not head[2].startswith("n=")):
        raise CensusCacheError(f"{path}: unrecognized cache header {lines[0]!r}")
    try:
        n = int(head[2][2:])
    except ValueError:
        raise CensusCacheError(f"{path}: bad node count in header") from None
    if expect_n is not None and n != expect_n:
        raise CensusCacheError(f"{path}: cache holds n={n}, expected n={expect_n}")
    counts: dict[tuple[int, int], int] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise CensusCacheError(f"{path}:{lineno}: expected 'e d count'")
        try:
            e, d, c = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise CensusCacheError(f"{path}:{lineno}: expected integers") from None
        if (e, d) in counts:
            raise CensusCacheError(f"{path}:{lineno}: duplicate class ({e}, {d})")
        counts[(e, d)] = c
    table = CensusTable(n, counts)
    _verify_census(table)
    return table


def _stat_arrays(table: CensusTable):
    n = table.n
    keys = sorted(table.counts, key=lambda p: (p[1], p[0]))
    tx = np.array([e / comb(n, 2) for e, _ in keys], dtype=np.float64)
    ty = np.array([d / (n - 1) for _, d in keys], dtype=np.float64)
    logc = np.log(np.array([table.counts[k] for k in keys], dtype=np.float64))
    return keys, tx, ty, logc


def log_partition(table: CensusTable, theta: tuple[float, float]) -> float:
    """log sum over graphs of exp(<theta, t(G)>), evaluated with a max shift."""
    _, tx, ty, logc = _stat_arrays(table)
    expo = theta[0] * tx + theta[1] * ty + logc
    m = expo.max()
    return float(m + np.log(np.exp(expo - m).sum()))


def exact_distribution(table: CensusTable, theta: tuple[float, float]) -> dict[tuple[int, int], float]:
    """Probability of each statistic class; values sum to 1."""
    keys, tx, ty, logc = _stat_arrays(table)
    expo = theta[0] * tx + theta[1] * ty + logc
    expo -= expo.max()
    w = np.exp(expo)
    w /= w.sum()
    return {k: float(p) for k, p in zip(keys, w)}


def moments(table: CensusTable, theta: tuple[float, float]):
    """Mean vector and covariance matrix of the normalized statistic."""
    keys, tx, ty, logc = _stat_arrays(table)
    expo = theta[0] * tx + theta[1] * ty + logc
    expo -= expo.max()
    w = np.exp(expo)
    w /= w.sum()
    mx = float(w @ tx)
    my = float(w @ ty)
    cxx = float(w @ (tx * tx)) - mx * mx
    cyy = float(w @ (ty * ty)) - my * my
    cxy = float(w @ (tx * ty)) - mx * my
    return np.array([mx, my]), np.array([[cxx, cxy], [cxy, cyy]])


def mean_stat(table: CensusTable, theta: tuple[float, float]) -> tuple[float, float]:
    """Expected normalized statistic, i.e. the gradient of log_partition."""
    mean, _ = moments(table, theta)
    return (float(mean[0]), float(mean[1]))


def mle_fit(table: CensusTable, observed, *, gap_tol: float = 1e-8,
            max_iter: int = 200) -> MLEFit:
    """Damped Newton maximum-likelihood fit for an observed normalized mean.

    observed is a pair accepted by Fraction (int, Fraction, str like "7/10",
    or float at its exact binary value); existence is decided exactly
    against the polytope before any float iteration. Newton steps are
    halved until the log-likelihood increases.
    """
    if len(observed) != 2:
        raise ValueError(f"observed must be a pair, got {observed!r}")
    ox = Fraction(observed[0])
    oy = Fraction(observed[1])
    n = table.n
    raw = (ox * comb(n, 2), oy * (n - 1))
    if not polytope.mle_exists(n, raw):
        return MLEFit(status="no_mle", theta=None, iterations=0, gap=float("inf"))
    obs = np.array([float(ox), float(oy)])
    theta = np.zeros(2)

    def loglik(th):
        return float(th @ obs) - log_partition(table, (th[0], th[1]))

    current = loglik(theta)
    for it in range(1, max_iter + 1):
        mean, cov = moments(table, (theta[0], theta[1]))
        grad = obs - mean
        gap = float(np.abs(grad).max())
        if gap <= gap_tol:
            return MLEFit(status="ok", theta=(float(theta[0]), float(theta[1])),
                          iterations=it - 1, gap=gap)
        try:
            step = np.linalg.solve(cov, grad)
        except np.linalg.LinAlgError:
            step = grad
        scale = 1.0
        while scale > 1e-12:
            candidate = theta + scale * step
            value = loglik(candidate)
            if value > current:
                theta = candidate
                current = value
                break
            scale /= 2
        else:
            break
    mean, _ = moments(table, (theta[0], theta[1]))
    gap = float(np.abs(obs - mean).max())
    status = "ok" if gap <= gap_tol else "not_converged"
    return MLEFit(status=status, theta=(float(theta[0]), float(theta[1])),
                  iterations=max_iter, gap=gap)


def distribution_rows(table: CensusTable, theta: tuple[float, float]):
    """(e, d, count, probability) rows sorted by (d, e), for CSV export."""
    dist = exact_distribution(table, theta)
    rows = []
    for (e, d) in sorted(dist, key=lambda p: (p[1], p[0])):
        rows.append((e, d, table.counts[(e, d)], dist[(e, d)]))
    return rows
