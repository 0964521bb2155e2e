import itertools

import numpy as np
import pytest

from netcontrol import CapacityError, build_graph, canonical_code, extract_ball, rooted_code
from netcontrol.canon import ENV_BALL_CAP

from oracles import is_rooted_isomorphic


def _relabel(n, edges, root, rng):
    perm = rng.permutation(n)
    return [(int(perm[a]), int(perm[b])) for a, b in edges], int(perm[root])


def _code(n, edges, root):
    return rooted_code(build_graph(n, edges), root)


def test_relabelled_paths_share_code():
    assert _code(3, [(0, 1), (1, 2)], 0) == _code(3, [(2, 0), (0, 1)], 2)


def test_orientation_distinguishes_paths():
    assert _code(3, [(0, 1), (1, 2)], 1) != _code(3, [(0, 1), (2, 1)], 1)


def test_root_position_matters():
    assert _code(3, [(0, 1), (1, 2)], 0) != _code(3, [(0, 1), (1, 2)], 1)


def test_multiplicity_matters():
    assert _code(2, [(0, 1)], 0) != _code(2, [(0, 1), (0, 1)], 0)
    assert _code(2, [(0, 1), (1, 1)], 0) != _code(2, [(0, 1), (0, 0)], 0)


def test_two_vertex_multigraphs_match_brute_force():
    pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]
    graphs = [list(c) for k in range(3) for c in itertools.combinations_with_replacement(pairs, k)]
    codes = [_code(2, e, 0) for e in graphs]
    for (e1, c1), (e2, c2) in itertools.combinations(zip(graphs, codes), 2):
        assert (c1 == c2) == is_rooted_isomorphic(2, e1, 0, 2, e2, 0), (e1, e2)


def test_random_small_graphs_match_brute_force():
    rng = np.random.default_rng(11)
    corpus = []
    for _ in range(400):
        n = int(rng.integers(1, 6))
        m = int(rng.integers(0, 7))
        edges = [tuple(map(int, rng.integers(0, n, 2))) for _ in range(m)]
        corpus.append((n, edges, int(rng.integers(n))))
        # add an isomorphic copy so equal codes are exercised, not just distinct ones
        e2, r2 = _relabel(n, edges, corpus[-1][2], rng)
        corpus.append((n, e2, r2))
    codes = [_code(*g) for g in corpus]
    by_shape = {}
    for g, c in zip(corpus, codes):
        by_shape.setdefault((g[0], len(g[1])), []).append((g, c))
    checked = 0
    for bucket in by_shape.values():
        for (g1, c1), (g2, c2) in itertools.combinations(bucket[:40], 2):
            assert (c1 == c2) == is_rooted_isomorphic(g1[0], g1[1], g1[2], g2[0], g2[1], g2[2])
            checked += 1
    assert checked > 1000


@pytest.mark.parametrize(
    "n, edges",
    [
        # symmetric non-tree graphs that defeat colour refinement alone
        (6, [(i, (i + 1) % 6) for i in range(6)]),
        (6, [(0, 5), (0, 1), (2, 1), (2, 3), (4, 3), (4, 5)]),
        (8, [(a, b) for a in range(4) for b in range(4, 8)]),
        (8, [(i, (i + 1) % 8) for i in range(8)] + [(i, (i + 4) % 8) for i in range(4)]),
        (7, [(0, j) for j in range(1, 7)] + [(1, 2), (3, 4), (5, 6)]),
    ],
)
def test_relabelling_invariance_on_symmetric_graphs(n, edges):
    rng = np.random.default_rng(n)
    for root in range(n):
        base = _code(n, edges, root)
        for _ in range(5):
            e2, r2 = _relabel(n, edges, root, rng)
            assert _code(n, e2, r2) == base


def test_eight_vertex_regular_pair_matches_brute_force():
    # two 2-in 2-out digraphs on 8 vertices: a single circulant vs two disjoint copies
    circ = [(i, (i + 1) % 8) for i in range(8)] + [(i, (i + 3) % 8) for i in range(8)]
    split = [(i, (i + 1) % 4) for i in range(4)] + [(i, (i + 2) % 4) for i in range(4)]
    split += [(4 + a, 4 + b) for a, b in split]
    assert not is_rooted_isomorphic(8, circ, 0, 8, split, 0)
    assert _code(8, circ, 0) != _code(8, split, 0)


def test_directed_tree_codes_ignore_child_order():
    a = _code(5, [(0, 1), (0, 2), (3, 1), (2, 4)], 0)
    b = _code(5, [(0, 2), (0, 1), (3, 2), (1, 4)], 0)
    c = _code(5, [(0, 1), (0, 2), (1, 3), (2, 4)], 0)
    assert a == b
    assert a != c


def test_capacity_error_and_env_override(monkeypatch):
    g = build_graph(10, [(i, i + 1) for i in range(9)])
    ball = extract_ball(g, 0, 9)
    with pytest.raises(CapacityError):
        canonical_code(ball, cap=5)
    monkeypatch.setenv(ENV_BALL_CAP, "4")
    with pytest.raises(CapacityError):
        canonical_code(ball)
    monkeypatch.setenv(ENV_BALL_CAP, "10")
    assert canonical_code(ball).startswith(b"T")


def test_codes_are_deterministic_bytes():
    g = build_graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    ball = extract_ball(g, 0, 2)
    assert isinstance(canonical_code(ball), bytes)
    assert canonical_code(ball) == canonical_code(extract_ball(g, 0, 2))
