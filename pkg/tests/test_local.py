from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from netcontrol import InputError, OffspringDistribution, build_graph, gen_er_directed, rooted_code
from netcontrol.analysis import (
    OVERFLOW,
    NeighborhoodHistogram,
    estimate_limit_ratio,
    neighborhood_histogram,
    reference_histogram,
    tv_distance,
)

from test_graph import ALTERNATING_6, small_graphs

CODES = [bytes([i]) for i in range(5)]


@st.composite
def histograms(draw):
    counts = draw(st.dictionaries(st.sampled_from(CODES), st.integers(1, 20), min_size=1))
    return NeighborhoodHistogram(1, "minus", counts, sum(counts.values()))


def test_three_cycle_single_class():
    h = neighborhood_histogram(build_graph(3, [(0, 1), (1, 2), (2, 0)]), 1)
    assert list(h.probabilities.values()) == [1.0]


def test_alternating_six_cycle_two_classes():
    h = neighborhood_histogram(build_graph(6, ALTERNATING_6), 1)
    assert sorted(h.counts.values()) == [3, 3]
    assert sorted(h.probabilities.values()) == [0.5, 0.5]
    # one class is the root with two out-edges, the other with two in-edges
    out_star = rooted_code(build_graph(3, [(0, 1), (0, 2)]), 0)
    in_star = rooted_code(build_graph(3, [(1, 0), (2, 0)]), 0)
    assert h.counts == {out_star: 3, in_star: 3}


@given(small_graphs(), st.integers(0, 3))
def test_exhaustive_probabilities_are_multiples_of_one_over_n(g, r):
    h = neighborhood_histogram(g, r)
    assert h.samples == g.n
    assert sum(h.counts.values()) == g.n
    for p in h.probabilities.values():
        assert (Fraction(p).limit_denominator(g.n) * g.n).denominator == 1


def test_sampled_histogram_approaches_exhaustive():
    g = gen_er_directed(300, 2.0, 4)
    full = neighborhood_histogram(g, 1)
    tvs = [tv_distance(neighborhood_histogram(g, 1, k, seed=1), full) for k in (50, 250)]
    big = neighborhood_histogram(g, 1, 30_000, seed=1)
    big_tv = tv_distance(big, full)
    assert big_tv < 0.05
    assert big_tv < min(tvs)


def test_overflow_bucket():
    g = build_graph(8, [(i, i + 1) for i in range(7)])
    h = neighborhood_histogram(g, 7, cap=4)
    assert h.overflow == 8 and h.counts == {OVERFLOW: 8}
    assert h.overflow_roots == list(range(8))


def test_histogram_errors():
    g = build_graph(2, [(0, 1)])
    with pytest.raises(InputError):
        neighborhood_histogram(g, -1)
    with pytest.raises(InputError):
        neighborhood_histogram(build_graph(0, []), 1)
    with pytest.raises(InputError):
        neighborhood_histogram(g, 1, sample_size=0)


@given(histograms())
def test_tv_self_is_zero(h):
    assert tv_distance(h, h) == 0


@given(histograms(), histograms(), histograms())
def test_tv_is_a_metric(a, b, c):
    ab, bc, ac = tv_distance(a, b), tv_distance(b, c), tv_distance(a, c)
    assert 0 <= ab <= 1 + 1e-12
    assert ab == pytest.approx(tv_distance(b, a))
    assert ac <= ab + bc + 1e-12


def test_tv_disjoint_supports():
    a = NeighborhoodHistogram(1, "minus", {b"x": 2}, 2)
    b = NeighborhoodHistogram(1, "minus", {b"y": 1, b"z": 3}, 4)
    assert tv_distance(a, b) == 1


def test_tv_rejects_mismatched_radius():
    a = NeighborhoodHistogram(1, "minus", {b"x": 1}, 1)
    with pytest.raises(InputError):
        tv_distance(a, NeighborhoodHistogram(2, "minus", {b"x": 1}, 1))
    with pytest.raises(InputError):
        tv_distance(a, NeighborhoodHistogram(1, "full", {b"x": 1}, 1))


def test_er_histogram_moves_towards_ugw_reference():
    ref = reference_histogram(OffspringDistribution.poisson(2.0), 1, 20_000, seed=0)
    small = tv_distance(neighborhood_histogram(gen_er_directed(200, 2.0, 1), 1), ref)
    large = tv_distance(neighborhood_histogram(gen_er_directed(20_000, 2.0, 1), 1), ref)
    assert large < small
    assert large < 0.05


def test_estimate_empty_offspring_is_zero():
    est = estimate_limit_ratio(OffspringDistribution.constant(0), True, 4, 3, 50, seed=1)
    assert est.point == 0 and est.hits == 0 and est.low == est.high == 0


def test_estimate_single_edge_is_one():
    # root has one child which then has none
    off = OffspringDistribution.constant(1)
    assert off.size_biased().pmf.tolist() == [1.0]
    est = estimate_limit_ratio(off, False, 4, 3, 50, seed=1)
    assert est.point == 1


def test_estimate_directed_single_edge_is_half():
    # the root is the tail of its only edge with probability 1/2
    est = estimate_limit_ratio(OffspringDistribution.constant(1), True, 4, 3, 4000, seed=2)
    assert est.low < 0.5 < est.high


def test_estimate_requires_depth_above_path_bound():
    off = OffspringDistribution.poisson(1.0)
    with pytest.raises(InputError):
        estimate_limit_ratio(off, False, 9, 9, 10, seed=0)
    with pytest.raises(InputError):
        estimate_limit_ratio(off, False, 10, 4, 10, seed=0)
    with pytest.raises(InputError):
        estimate_limit_ratio(off, False, 10, 3, 0, seed=0)


def test_estimate_is_seed_deterministic():
    off = OffspringDistribution.poisson(1.0)
    a = estimate_limit_ratio(off, False, 6, 3, 200, seed=9)
    assert a == estimate_limit_ratio(off, False, 6, 3, 200, seed=9)
    assert a.low <= a.point <= a.high
