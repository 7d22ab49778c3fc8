"""Metropolis sampling and the extremal-concentration experiment.

The chain proposes a uniformly random node pair each step and toggles that
edge with the usual acceptance ratio exp(<theta, t(G') - t(G)>) on
normalized statistics. Degeneracy is recomputed from scratch for every
proposal. All randomness is drawn ahead of the kernel from a seeded
generator, so a configuration determines the sample path exactly,
independent of the kernel backend.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from . import _kernels, model
from .fan import ConeClass, alpha_exact, classify_direction, nearest_extremal_vertex
from .graph import Graph, StatPair, node_pairs, stat_pair

_MASK_LIMIT = 62  # edge masks are tracked in an int64


@dataclass(frozen=True)
class ChainConfig:
    n: int
    theta: tuple[float, float]
    burn_in: int
    samples: int
    thinning: int
    seed: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"need n >= 3, got {self.n}")
        if self.burn_in < 1 or self.samples < 1 or self.thinning < 1:
            raise ValueError("burn_in, samples and thinning must be positive")
        if self.seed is None:
            raise ValueError("a seed is required; sampling is never implicitly random")

    def total_steps(self) -> int:
        return self.burn_in + self.samples * self.thinning


class ChainResult(Sequence):
    """Recorded samples; behaves as a sequence of StatPair."""

    def __init__(self, n: int, edges: np.ndarray, degens: np.ndarray,
                 accept_rate: float, masks: np.ndarray | None):
        self.n = n
        self.edges = edges
        self.degens = degens
        self.accept_rate = accept_rate
        self.masks = masks

    def __len__(self) -> int:
        return len(self.edges)

    def __getitem__(self, i):
        if isinstance(i, slice):
            raise TypeError("slicing is not supported; index samples one at a time")
        return StatPair(int(self.edges[i]), int(self.degens[i]))

    def class_frequencies(self) -> dict[tuple[int, int], float]:
        """Empirical frequency of each statistic class among the samples."""
        out: dict[tuple[int, int], int] = {}
        for e, d in zip(self.edges.tolist(), self.degens.tolist()):
            out[(e, d)] = out.get((e, d), 0) + 1
        total = len(self.edges)
        return {k: v / total for k, v in out.items()}


def _run_kernel(n: int, theta: tuple[float, float], steps: int, seed,
                initial: Graph | None, chain_index: int):
    pairs = node_pairs(n)
    rng = np.random.default_rng([int(seed), int(chain_index)])
    proposals = rng.integers(0, len(pairs), size=steps, dtype=np.int64)
    logu = np.log(rng.random(size=steps))
    g = Graph.empty(n) if initial is None else initial
    if g.n != n:
        raise ValueError(f"initial graph has n={g.n}, chain wants n={n}")
    s = stat_pair(g)
    track = comb(n, 2) <= _MASK_LIMIT
    mask0 = g.edge_mask() if track else 0
    pu = np.array([u for u, _ in pairs], dtype=np.int64)
    pv = np.array([v for _, v in pairs], dtype=np.int64)
    e_t, d_t, acc_t, mask_t = _kernels.chain_run(
        g.to_matrix(), theta[0], theta[1], pu, pv, proposals, logu,
        s.edges, s.degen, mask0, track,
        1.0 / comb(n, 2), 1.0 / (n - 1),
    )
    return e_t, d_t, acc_t, (mask_t if track else None)


def run_chain(config: ChainConfig, initial: Graph | None = None,
              chain_index: int = 0) -> ChainResult:
    """Run one chain and keep every thinning-th state after burn-in.

    chain_index derives an independent substream from the same seed, for
    running several chains of one configuration in parallel.
    """
    e_t, d_t, acc_t, mask_t = _run_kernel(
        config.n, config.theta, config.total_steps(), config.seed,
        initial, chain_index)
    idx = np.arange(config.samples) * config.thinning + (config.burn_in + config.thinning - 1)
    return ChainResult(
        config.n,
        e_t[idx].copy(),
        d_t[idx].copy(),
        float(acc_t.mean()),
        mask_t[idx].copy() if mask_t is not None else None,
    )


def chain_trace(n: int, theta: tuple[float, float], steps: int, seed: int,
                initial: Graph | None = None):
    """Full per-step trace (edges, degens, accepted) for diagnostics/CSV."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if steps < 1:
        raise ValueError(f"need steps >= 1, got {steps}")
    if seed is None:
        raise ValueError("a seed is required; sampling is never implicitly random")
    e_t, d_t, acc_t, _ = _run_kernel(n, theta, steps, seed, initial, 0)
    return e_t, d_t, acc_t


DEFAULT_LADDER = (1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0)


@dataclass(frozen=True)
class LadderPoint:
    r: float
    mass_near_alpha: float
    mass_on_target: float
    top_class: tuple[int, int]
    top_mass: float


@dataclass(frozen=True)
class ExtremalReport:
    """Concentration of P_{beta + r*direction} along an increasing ladder of r."""

    n: int
    beta: tuple[float, float]
    direction: tuple[float, float]
    eta: float
    cone: str
    alpha_point: tuple[float, float]
    target_vertices: tuple[tuple[int, int], ...]
    method: str
    ladder: tuple[LadderPoint, ...] = field(default_factory=tuple)

    def first_r_reaching(self, mass: float) -> float | None:
        """Smallest ladder r whose near-alpha mass is at least the given mass."""
        for point in self.ladder:
            if point.mass_near_alpha >= mass:
                return point.r
        return None

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "beta": list(self.beta),
            "direction": list(self.direction),
            "eta": self.eta,
            "cone": self.cone,
            "alpha": list(self.alpha_point),
            "target_vertices": [list(v) for v in self.target_vertices],
            "method": self.method,
            "ladder": [
                {
                    "r": p.r,
                    "mass_near_alpha": p.mass_near_alpha,
                    "mass_on_target": p.mass_on_target,
                    "top_class": list(p.top_class),
                    "top_mass": p.top_mass,
                }
                for p in self.ladder
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _class_distribution(n, theta, census, seed, rung_index, chain_samples):
    if census is not None:
        return model.exact_distribution(census, theta)
    if seed is None:
        raise ValueError("n > 7 needs chain sampling: a seed is required")
    config = ChainConfig(n=n, theta=theta, burn_in=max(10_000, chain_samples // 10),
                         samples=chain_samples, thinning=1, seed=seed)
    return run_chain(config, chain_index=rung_index).class_frequencies()


def extremal_experiment(n: int, beta: tuple[float, float],
                        direction: tuple[float, float],
                        r_ladder: Sequence[float] | None = None,
                        eta: float | str | Fraction = 0.15,
                        seed: int | None = None,
                        census: model.CensusTable | None = None,
                        chain_samples: int = 100_000) -> ExtremalReport:
    """Tabulate concentration toward alpha(direction) as r grows.

    Exact via the census for n <= 7; chain-based beyond that (seed
    required). The direction must lie strictly inside one of the four
    cones. mass_near_alpha sums classes whose normalized statistic lies
    within L-infinity distance eta of alpha(direction); the ball test is
    exact, and a float eta is read at its decimal display value (so 0.15
    means 3/20, closed ball). mass_on_target sums the nearest extremal
    vertex class(es) of the finite-n polytope.
    """
    eta_exact = Fraction(str(eta)) if isinstance(eta, float) else Fraction(eta)
    if not 0 < eta_exact < 1:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    cone = classify_direction(direction)
    if cone is ConeClass.BOUNDARY:
        raise ValueError(f"direction {direction!r} lies on a cone boundary ray")
    ladder = tuple(float(r) for r in (DEFAULT_LADDER if r_ladder is None else r_ladder))
    if not ladder or any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError("r ladder must be nonempty and strictly increasing")
    if census is None and n <= model.CENSUS_MAX_NODES:
        census = model.build_census(n)
    ax, ay = alpha_exact(direction)
    targets = nearest_extremal_vertex(n, direction)
    pairs = comb(n, 2)
    points = []
    for i, r in enumerate(ladder):
        theta = (beta[0] + r * direction[0], beta[1] + r * direction[1])
        dist = _class_distribution(n, theta, census, seed, i, chain_samples)
        near = 0.0
        on_target = 0.0
        top_class, top_mass = None, -1.0
        for (e, d), p in dist.items():
            dx = abs(Fraction(e, pairs) - ax)
            dy = abs(Fraction(d, n - 1) - ay)
            if max(dx, dy) <= eta_exact:
                near += p
            if (e, d) in targets:
                on_target += p
            if p > top_mass:
                top_class, top_mass = (e, d), p
        points.append(LadderPoint(r, near, on_target, top_class, top_mass))
    return ExtremalReport(
        n=n, beta=(float(beta[0]), float(beta[1])),
        direction=(float(direction[0]), float(direction[1])),
        eta=float(eta_exact), cone=cone.value, alpha_point=(float(ax), float(ay)),
        target_vertices=targets,
        method="census" if census is not None else "chain",
        ladder=tuple(points),
    )


@dataclass(frozen=True)
class BetaInvarianceReport:
    """The concentration target must not depend on the offset beta."""

    n: int
    direction: tuple[float, float]
    r: float
    betas: tuple[tuple[float, float], ...]
    top_classes: tuple[tuple[int, int], ...]
    top_masses: tuple[float, ...]
    consistent: bool
    max_pairwise_tv: float


def beta_invariance_check(n: int, direction: tuple[float, float],
                          betas: Sequence[tuple[float, float]], r: float,
                          census: model.CensusTable | None = None,
                          seed: int | None = None,
                          chain_samples: int = 100_000) -> BetaInvarianceReport:
    """Compare the distributions at theta = beta + r*direction across betas."""
    if census is None and n <= model.CENSUS_MAX_NODES:
        census = model.build_census(n)
    dists = []
    for i, beta in enumerate(betas):
        theta = (beta[0] + r * direction[0], beta[1] + r * direction[1])
        dists.append(_class_distribution(n, theta, census, seed, i, chain_samples))
    tops = tuple(max(d, key=d.get) for d in dists)
    masses = tuple(float(d[t]) for d, t in zip(dists, tops))
    max_tv = 0.0
    for i in range(len(dists)):
        for j in range(i + 1, len(dists)):
            keys = set(dists[i]) | set(dists[j])
            tv = 0.5 * sum(abs(dists[i].get(k, 0.0) - dists[j].get(k, 0.0)) for k in keys)
            max_tv = max(max_tv, tv)
    return BetaInvarianceReport(
        n=n, direction=(float(direction[0]), float(direction[1])), r=float(r),
        betas=tuple((float(b[0]), float(b[1])) for b in betas),
        top_classes=tops, top_masses=masses,
        consistent=len(set(tops)) <= 1, max_pairwise_tv=max_tv,
    )
