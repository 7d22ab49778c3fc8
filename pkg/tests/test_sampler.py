import json
import math

import numpy as np
import pytest

from edergm import (
    ChainConfig,
    Graph,
    StatPair,
    beta_invariance_check,
    build_census,
    chain_trace,
    exact_distribution,
    extremal_experiment,
    run_chain,
    stat_pair,
)


# --------------------------------------------------------------- configuration


def test_chain_config_validation():
    good = dict(n=5, theta=(0.0, 0.0), burn_in=10, samples=10, thinning=2, seed=1)
    ChainConfig(**good)
    for field, bad in (
        ("n", 2), ("burn_in", 0), ("samples", 0), ("thinning", 0), ("seed", None),
    ):
        with pytest.raises(ValueError):
            ChainConfig(**{**good, field: bad})


def test_total_steps():
    cfg = ChainConfig(n=5, theta=(0.0, 0.0), burn_in=100, samples=50, thinning=4, seed=1)
    assert cfg.total_steps() == 100 + 50 * 4


# ---------------------------------------------------------------- reproducible


def test_chain_is_deterministic():
    cfg = ChainConfig(n=6, theta=(1.0, -1.0), burn_in=100, samples=500, thinning=3, seed=77)
    a, b = run_chain(cfg), run_chain(cfg)
    assert np.array_equal(a.edges, b.edges)
    assert np.array_equal(a.degens, b.degens)
    assert np.array_equal(a.masks, b.masks)
    assert a.accept_rate == b.accept_rate


def test_seed_changes_stream():
    base = dict(n=6, theta=(1.0, -1.0), burn_in=100, samples=500, thinning=1)
    a = run_chain(ChainConfig(seed=1, **base))
    b = run_chain(ChainConfig(seed=2, **base))
    assert not np.array_equal(a.edges, b.edges)


def test_chain_index_gives_independent_substreams():
    cfg = ChainConfig(n=6, theta=(0.0, 0.0), burn_in=100, samples=500, thinning=1, seed=5)
    a = run_chain(cfg, chain_index=0)
    b = run_chain(cfg, chain_index=1)
    assert not np.array_equal(a.edges, b.edges)


# -------------------------------------------------------------------- validity


def test_recorded_stats_match_recorded_graphs():
    # the kernel's incremental bookkeeping must agree with a from-scratch
    # recomputation of the statistic on the stored graph states
    cfg = ChainConfig(n=5, theta=(1.5, -0.5), burn_in=1, samples=2000, thinning=1, seed=5)
    res = run_chain(cfg)
    for i in range(0, len(res), 7):
        g = Graph.from_edge_mask(5, int(res.masks[i]))
        s = stat_pair(g)
        assert (s.edges, s.degen) == (int(res.edges[i]), int(res.degens[i]))


def test_sequence_protocol():
    cfg = ChainConfig(n=4, theta=(0.0, 0.0), burn_in=1, samples=10, thinning=1, seed=3)
    res = run_chain(cfg)
    assert len(res) == 10
    assert isinstance(res[0], StatPair)
    assert res[-1] == res[9]
    with pytest.raises(TypeError):
        res[0:3]
    with pytest.raises(IndexError):
        res[10]


def test_masks_disabled_for_wide_graphs():
    # beyond 62 node pairs the edge mask no longer fits an int64 and is not kept
    cfg = ChainConfig(n=12, theta=(0.0, 0.0), burn_in=10, samples=50, thinning=1, seed=4)
    res = run_chain(cfg)
    assert res.masks is None
    assert res.class_frequencies()  # still available from the stat arrays


def test_initial_graph():
    cfg = ChainConfig(n=5, theta=(0.0, 0.0), burn_in=1, samples=1, thinning=1, seed=9)
    res = run_chain(cfg, initial=Graph.complete(5))
    assert int(res.edges[0]) >= 8  # at most two moves from complete
    with pytest.raises(ValueError):
        run_chain(cfg, initial=Graph.complete(6))


def test_always_accepts_at_zero_theta():
    cfg = ChainConfig(n=5, theta=(0.0, 0.0), burn_in=1, samples=100, thinning=1, seed=8)
    assert run_chain(cfg).accept_rate == 1.0


def test_chain_trace_shapes():
    e_t, d_t, acc_t = chain_trace(5, (0.0, 0.0), steps=250, seed=12)
    assert e_t.shape == d_t.shape == acc_t.shape == (250,)
    assert set(np.unique(acc_t)) <= {0, 1}
    with pytest.raises(ValueError):
        chain_trace(5, (0.0, 0.0), steps=0, seed=1)
    with pytest.raises(ValueError):
        chain_trace(5, (0.0, 0.0), steps=10, seed=None)


# ------------------------------------------------------------------ stationary


def test_uniform_stationary_mean():
    # at theta = 0 the chain samples graphs uniformly: mean edge count n(n-1)/4
    cfg = ChainConfig(n=6, theta=(0.0, 0.0), burn_in=5000, samples=100_000,
                      thinning=1, seed=314)
    res = run_chain(cfg)
    assert abs(float(res.edges.mean()) - 7.5) < 0.05


def test_per_graph_detailed_balance_n4():
    # compare the visit frequency of every labeled graph against its exact
    # stationary probability
    n, steps, seed = 4, 1_000_000, 99
    for theta in ((0.0, 0.0), (2.0, -1.0)):
        cfg = ChainConfig(n=n, theta=theta, burn_in=10_000, samples=steps,
                          thinning=1, seed=seed)
        res = run_chain(cfg)
        masks, counts = np.unique(res.masks, return_counts=True)
        freq = dict(zip(masks.tolist(), (counts / steps).tolist()))
        weights = {}
        for mask in range(64):
            s = stat_pair(Graph.from_edge_mask(n, mask))
            weights[mask] = math.exp(theta[0] * s.edges / 6 + theta[1] * s.degen / 3)
        z = sum(weights.values())
        tv = 0.5 * sum(abs(freq.get(m, 0.0) - w / z) for m, w in weights.items())
        assert tv < 0.02, (theta, tv)


def test_class_distribution_matches_census_quickly(census_tables):
    cfg = ChainConfig(n=5, theta=(2.0, -1.0), burn_in=20_000, samples=200_000,
                      thinning=1, seed=11)
    res = run_chain(cfg)
    freq = res.class_frequencies()
    exact = exact_distribution(census_tables[5], (2.0, -1.0))
    keys = set(freq) | set(exact)
    tv = 0.5 * sum(abs(freq.get(k, 0.0) - exact.get(k, 0.0)) for k in keys)
    assert tv < 0.03


# ------------------------------------------------------------------ experiment


def test_extremal_experiment_empty_direction(census_tables):
    rep = extremal_experiment(5, beta=(0.0, 0.0), direction=(0, -1),
                              r_ladder=(1, 4, 16, 64, 200),
                              census=census_tables[5])
    assert rep.cone == "empty"
    assert rep.alpha_point == (0.0, 0.0)
    assert rep.target_vertices == ((0, 0),)
    assert rep.method == "census"
    masses = [pt.mass_near_alpha for pt in rep.ladder]
    assert masses[-1] > 0.999
    assert rep.ladder[-1].top_class == (0, 0)
    assert rep.first_r_reaching(0.999) is not None
    assert rep.first_r_reaching(2.0) is None


def test_extremal_experiment_lower_tie(census_tables):
    rep = extremal_experiment(6, beta=(0.0, 0.0), direction=(1, -1),
                              r_ladder=(50, 200), census=census_tables[6])
    assert rep.target_vertices == ((9, 2), (12, 3))
    last = rep.ladder[-1]
    assert last.mass_on_target > 0.999
    assert last.mass_near_alpha >= last.mass_on_target


def test_extremal_experiment_json(census_tables):
    rep = extremal_experiment(5, beta=(1.0, 1.0), direction=(0, 1),
                              r_ladder=(1, 10), census=census_tables[5])
    data = json.loads(rep.to_json())
    assert data["n"] == 5
    assert data["cone"] == "complete"
    assert len(data["ladder"]) == 2
    assert {"r", "mass_near_alpha", "mass_on_target"} <= set(data["ladder"][0])


def test_extremal_experiment_validation(census_tables):
    t = census_tables[5]
    with pytest.raises(ValueError):
        extremal_experiment(5, (0, 0), (1, -2), census=t)  # boundary ray
    with pytest.raises(ValueError):
        extremal_experiment(5, (0, 0), (0, -1), eta=0.0, census=t)
    with pytest.raises(ValueError):
        extremal_experiment(5, (0, 0), (0, -1), eta=1.0, census=t)
    with pytest.raises(ValueError):
        extremal_experiment(5, (0, 0), (0, -1), r_ladder=(4, 2), census=t)
    with pytest.raises(ValueError):
        extremal_experiment(5, (0, 0), (0, -1), r_ladder=(), census=t)
    with pytest.raises(ValueError):
        extremal_experiment(10, (0, 0), (0, -1))  # n > 7 without a seed


def test_extremal_experiment_chain_path():
    rep = extremal_experiment(9, beta=(0.0, 0.0), direction=(0, -1),
                              r_ladder=(200,), seed=21, chain_samples=20_000)
    assert rep.method == "chain"
    assert rep.ladder[0].mass_near_alpha > 0.99
    assert rep.ladder[0].top_class == (0, 0)


def test_beta_invariance(census_tables):
    rep = beta_invariance_check(
        5, direction=(0, 1), betas=((0.0, 0.0), (3.0, -2.0), (-5.0, 5.0)),
        r=200.0, census=census_tables[5])
    assert rep.consistent
    assert rep.top_classes[0] == (10, 4)
    assert min(rep.top_masses) > 0.999
    assert rep.max_pairwise_tv < 1e-6


def test_beta_matters_at_small_r(census_tables):
    rep = beta_invariance_check(
        5, direction=(0, 1), betas=((0.0, 0.0), (3.0, -2.0), (-5.0, 5.0)),
        r=0.0, census=census_tables[5])
    assert rep.max_pairwise_tv > 0.05
