import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from loplab.graph import Graph
from loplab.randgen import (
    GeometricSample,
    RngStream,
    _pairs_within,
    _unrank_pairs,
    gen_er,
    gen_rg,
    graph_from_sample,
    sample_from_json_dict,
    sample_to_json_dict,
)


# ---------------------------------------------------------------------------
# streams


def test_stream_is_a_pure_function_of_seed_and_trial():
    a = RngStream(123, 7).random(64)
    b = RngStream(123, 7).random(64)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, RngStream(123, 8).random(64))
    assert not np.array_equal(a, RngStream(124, 7).random(64))


def test_stream_rejects_bad_addressing():
    with pytest.raises(ValueError):
        RngStream(-1, 0)
    with pytest.raises(ValueError):
        RngStream(2**64, 0)
    with pytest.raises(ValueError):
        RngStream(0, -1)


def test_integers_cover_their_range():
    draws = RngStream(5, 0).integers(6, size=2000)
    assert draws.min() == 0 and draws.max() == 5


# ---------------------------------------------------------------------------
# pair unranking


@pytest.mark.parametrize("n", [2, 3, 5, 17])
def test_unrank_enumerates_pairs_lexicographically(n):
    total = n * (n - 1) // 2
    u, v = _unrank_pairs(np.arange(total, dtype=np.int64), n)
    assert list(zip(u.tolist(), v.tolist())) == list(combinations(range(n), 2))


# ---------------------------------------------------------------------------
# erdos-renyi


def test_gen_er_trivial_densities():
    s = RngStream(1, 0)
    assert gen_er(s, 7, 0.0).edges == []
    full = gen_er(RngStream(1, 0), 7, 1.0)
    assert full.edges == list(combinations(range(7), 2))
    assert gen_er(RngStream(1, 0), 0, 0.5).n == 0
    assert gen_er(RngStream(1, 0), 1, 0.5).edges == []


def test_gen_er_rejects_bad_p():
    with pytest.raises(ValueError):
        gen_er(RngStream(1, 0), 5, -0.1)
    with pytest.raises(ValueError):
        gen_er(RngStream(1, 0), 5, 1.1)
    with pytest.raises(ValueError):
        gen_er(RngStream(1, 0), -2, 0.5)


def test_gen_er_deterministic_bit_for_bit():
    a = gen_er(RngStream(99, 3), 200, 0.05)
    b = gen_er(RngStream(99, 3), 200, 0.05)
    assert a == b
    assert a != gen_er(RngStream(99, 4), 200, 0.05)


def test_er_edge_counts_match_binomial():
    # n=50, p=0.3: mean and variance against Binomial(1225, 0.3),
    # both within 4 standard errors of the respective estimator
    N = 10_000
    n, p = 50, 0.3
    total = n * (n - 1) // 2
    counts = np.array(
        [len(gen_er(RngStream(20240, t), n, p).edges) for t in range(N)],
        dtype=np.float64,
    )
    mean, var = total * p, total * p * (1 - p)
    assert abs(counts.mean() - mean) < 4 * math.sqrt(var / N)
    assert abs(counts.var(ddof=1) - var) < 4 * var * math.sqrt(2 / (N - 1))


def test_er_pairs_are_uniform():
    # every one of the 15 pair slots at n=6 is hit at rate p
    N, n, p = 6000, 6, 0.4
    hits = {pair: 0 for pair in combinations(range(n), 2)}
    for t in range(N):
        for e in gen_er(RngStream(4242, t), n, p).edges:
            hits[e] += 1
    band = 4 * math.sqrt(p * (1 - p) / N)
    for pair, c in hits.items():
        assert abs(c / N - p) < band, pair


def test_er_mean_edges_in_sparse_regime():
    # p = 4/n puts the mean at 2(n-1); the 2 percent band is ~35 SE here
    n, trials = 10_000, 300
    total = sum(
        len(gen_er(RngStream(31337, t), n, 4.0 / n).edges) for t in range(trials)
    )
    assert 2 * n * 0.98 < total / trials < 2 * n * 1.02


# ---------------------------------------------------------------------------
# geometric


def brute_pairs(points, r):
    out = []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            d = points[i] - points[j]
            if d[0] * d[0] + d[1] * d[1] < r * r:
                out.append((i, j))
    return out


def test_gen_rg_points_come_from_a_row_major_fill():
    g, sample = gen_rg(RngStream(7, 2), 40, 0.3)
    expected = RngStream(7, 2).random((40, 2)) - 0.5
    assert np.array_equal(sample.points, expected)
    assert sample.r == 0.3
    assert np.all(np.abs(sample.points) <= 0.5)


def test_gen_rg_trivial_radii():
    g, _ = gen_rg(RngStream(3, 0), 30, 0.0)
    assert g.edges == []
    g, _ = gen_rg(RngStream(3, 0), 25, math.sqrt(2.0))
    assert g.edges == list(combinations(range(25), 2))
    with pytest.raises(ValueError):
        gen_rg(RngStream(3, 0), 5, -0.2)
    g, _ = gen_rg(RngStream(3, 0), 0, 0.5)
    assert g.n == 0


@pytest.mark.parametrize(
    "seed,n,r",
    [(11, 300, 0.03), (12, 300, 0.12), (13, 200, 0.5), (14, 120, 1.7), (15, 64, 0.25)],
)
def test_gen_rg_matches_quadratic_scan(seed, n, r):
    g, sample = gen_rg(RngStream(seed, 0), n, r)
    assert g.edges == brute_pairs(sample.points, r)
    assert graph_from_sample(sample) == g


def test_rg_distance_strictly_less_than_r():
    pts = np.array([[0.0, 0.0], [0.25, 0.0], [0.0, 0.2499999]])
    g = graph_from_sample(GeometricSample(r=0.25, points=pts))
    # the exact-distance pair is out, the slightly closer one is in
    assert g.edges == [(0, 2)]


def test_rg_relabeling_points_relabels_the_graph():
    _, sample = gen_rg(RngStream(21, 0), 150, 0.15)
    perm = np.random.default_rng(0).permutation(150)
    permuted = graph_from_sample(GeometricSample(r=0.15, points=sample.points[perm]))
    # edge {i,j} of the permuted graph is edge {perm[i], perm[j]} upstream
    base = set(graph_from_sample(sample).edges)
    mapped = {
        (min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in permuted.edges
    }
    assert mapped == base


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 40), st.floats(0.01, 1.5))
def test_pairs_within_agrees_with_brute_force(seed, n, r):
    points = RngStream(seed, 0).random((n, 2)) - 0.5
    u, v = _pairs_within(points, r)
    got = sorted(zip(u.tolist(), v.tolist()))
    assert got == brute_pairs(points, r)


def test_rg_mean_edges_tracks_the_square_distance_law():
    # exact mean is C(n,2) P(|X-Y| < r) with P = pi r^2 - 8r^3/3 + r^4/2;
    # the cubic term is the unit-square boundary deficit, about 96 edges
    # here, so this also pins the deficit as real rather than noise
    n, trials = 2500, 200
    r = math.sqrt(4.0 / (math.pi * n))
    expect = n * (n - 1) / 2 * (math.pi * r * r - 8 * r**3 / 3 + r**4 / 2)
    total = sum(len(gen_rg(RngStream(555, t), n, r)[0].edges) for t in range(trials))
    mean = total / trials
    assert abs(mean - expect) < 60
    assert mean < 2 * (n - 1) - 30  # visibly below the boundless-plane value


# ---------------------------------------------------------------------------
# sample json


def test_sample_round_trip():
    _, sample = gen_rg(RngStream(77, 0), 12, 0.4)
    d = sample_to_json_dict(sample)
    back = sample_from_json_dict(d)
    assert back.r == sample.r
    assert np.array_equal(back.points, sample.points)


def test_sample_json_rejects_malformed():
    with pytest.raises(ValueError):
        sample_from_json_dict({"r": 0.5})
    with pytest.raises(ValueError):
        sample_from_json_dict({"r": 0.5, "points": [[1, 2, 3]]})
    empty = sample_from_json_dict({"r": 0.5, "points": []})
    assert empty.points.shape == (0, 2)
