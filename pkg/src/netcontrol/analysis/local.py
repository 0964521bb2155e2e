"""Neighbourhood statistics and Monte-Carlo estimates on unimodular trees."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..canon import canonical_code
from ..errors import CapacityError, InputError
from ..generators import OffspringDistribution, gen_ugw_truncated
from ..graph import MINUS, DirectedMultigraph, extract_ball
from ..matching import augment_short_paths, bounded_matching
from ..seeds import trial_seed

OVERFLOW = b"overflow"


@dataclass
class NeighborhoodHistogram:
    """Empirical law of rooted-ball classes; overflowing balls share one bucket."""

    radius: int
    mode: str
    counts: dict[bytes, int]
    samples: int
    overflow_roots: list[int] = field(default_factory=list)

    @property
    def probabilities(self) -> dict[bytes, float]:
        return {code: k / self.samples for code, k in self.counts.items()}

    @property
    def overflow(self) -> int:
        return self.counts.get(OVERFLOW, 0)

    def as_dict(self) -> dict:
        return {
            "radius": self.radius,
            "mode": self.mode,
            "samples": self.samples,
            "overflow": self.overflow,
            "classes": [
                {"code": code.hex(), "count": k, "probability": k / self.samples}
                for code, k in sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))
            ],
        }


def neighborhood_histogram(
    graph: DirectedMultigraph,
    r: int,
    sample_size: int | None = None,
    seed=None,
    mode: str = MINUS,
    cap: int | None = None,
) -> NeighborhoodHistogram:
    """Histogram of ball classes around uniform roots.

    With ``sample_size`` None or at least ``n`` every vertex is used once;
    otherwise ``sample_size`` roots are drawn uniformly with replacement.
    """
    if r < 0:
        raise InputError(f"radius must be nonnegative, got {r}")
    if graph.n == 0:
        raise InputError("cannot sample roots of an empty graph")
    if sample_size is not None and sample_size < 1:
        raise InputError(f"sample size must be positive, got {sample_size}")
    if sample_size is None or sample_size >= graph.n:
        roots = range(graph.n)
    else:
        roots = np.random.default_rng(seed).integers(0, graph.n, size=sample_size).tolist()
    counts: dict[bytes, int] = {}
    overflow_roots = []
    total = 0
    for v in roots:
        ball = extract_ball(graph, v, r, mode)
        try:
            code = canonical_code(ball, cap)
        except CapacityError:
            code = OVERFLOW
            overflow_roots.append(v)
        counts[code] = counts.get(code, 0) + 1
        total += 1
    return NeighborhoodHistogram(r, mode, counts, total, overflow_roots)


def reference_histogram(
    off: OffspringDistribution, r: int, samples: int, seed=None, directed: bool = True, mode: str = MINUS
) -> NeighborhoodHistogram:
    """Histogram of depth-``r`` truncated UGW trees, the limit-side counterpart.

    A tree cut at depth ``r`` has no edge between two depth-``r`` vertices, so
    it serves for both ball modes.
    """
    rng = np.random.default_rng(seed)
    counts: dict[bytes, int] = {}
    for _ in range(samples):
        code = canonical_code(gen_ugw_truncated(off, r, directed, rng))
        counts[code] = counts.get(code, 0) + 1
    return NeighborhoodHistogram(r, mode, counts, samples)


def tv_distance(h1: NeighborhoodHistogram, h2: NeighborhoodHistogram) -> float:
    if h1.radius != h2.radius or h1.mode != h2.mode:
        raise InputError(
            f"histograms differ in radius/mode: ({h1.radius}, {h1.mode}) vs ({h2.radius}, {h2.mode})"
        )
    p, q = h1.probabilities, h2.probabilities
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in p.keys() | q.keys())


@dataclass(frozen=True)
class LimitEstimate:
    """Share of samples whose root is covered by the bounded matching, with a 95% CI.

    This is a biased estimate of the limit matching ratio; the bias vanishes
    only as both the truncation depth and the path bound grow.
    """

    point: float
    low: float
    high: float
    hits: int
    samples: int
    max_length: int
    depth: int
    directed: bool

    def as_dict(self) -> dict:
        return {
            "point": self.point,
            "ci_low": self.low,
            "ci_high": self.high,
            "hits": self.hits,
            "samples": self.samples,
            "T": self.max_length,
            "depth": self.depth,
            "directed": self.directed,
        }


def _root_covered_undirected(tree: DirectedMultigraph, distance, max_length: int, rng) -> bool:
    # trees are bipartite by depth parity; the root sits on the even side
    even = [v for v in range(tree.n) if distance[v] % 2 == 0]
    odd = [v for v in range(tree.n) if distance[v] % 2 == 1]
    left_index = {v: i for i, v in enumerate(even)}
    right_index = {v: i for i, v in enumerate(odd)}
    left_adj: list[list[tuple[int, int]]] = [[] for _ in even]
    for e, (a, b) in enumerate(zip(tree.tails, tree.heads)):
        if a in left_index:
            left_adj[left_index[a]].append((right_index[b], e))
        else:
            left_adj[left_index[b]].append((right_index[a], e))
    labels = rng.random(len(even))
    order = np.argsort(labels, kind="stable").tolist()
    match = augment_short_paths(left_adj, len(odd), max_length, order)
    return match[left_index[0]] != -1


def estimate_limit_ratio(
    off: OffspringDistribution,
    directed: bool,
    depth: int,
    max_length: int,
    samples: int,
    seed=None,
) -> LimitEstimate:
    """Estimate the root-coverage probability of short-augmentation matchings on UGW trees.

    Directed trees count the root when it is the tail of a matched edge;
    undirected trees count it when it is matched at all.
    """
    if depth <= max_length:
        raise InputError(f"depth {depth} must exceed the path bound {max_length}")
    if max_length < 1 or max_length % 2 == 0:
        raise InputError(f"path bound must be a positive odd integer, got {max_length}")
    if samples < 1:
        raise InputError(f"need at least one sample, got {samples}")
    master = seed if isinstance(seed, int) else int(np.random.default_rng(seed).integers(2**63))
    hits = 0
    for i in range(samples):
        rng = np.random.default_rng(trial_seed(master, i))
        ball = gen_ugw_truncated(off, depth, directed, rng)
        if ball.graph.num_edges == 0:
            continue
        if directed:
            matching = bounded_matching(ball.graph, max_length, rng)
            hits += 0 in matching.matched_tails()
        else:
            hits += _root_covered_undirected(ball.graph, ball.distance, max_length, rng)
    p = hits / samples
    half = 1.959963984540054 * math.sqrt(p * (1 - p) / samples)
    return LimitEstimate(
        point=p,
        low=max(0.0, p - half),
        high=min(1.0, p + half),
        hits=hits,
        samples=samples,
        max_length=max_length,
        depth=depth,
        directed=directed,
    )
