"""Directed matchings: exact, brute force, bounded augmentation and Karp-Sipser.

Everything runs on the bipartite representation: a directed matching of
``G`` is exactly a matching between tail copies and head copies, so edge ids
are shared between the two views.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CapacityError, InputError
from .graph import DirectedMultigraph

BRUTE_FORCE_MAX_EDGES = 24
METHODS = ("exact", "karp-sipser", "bounded")

_INF = float("inf")


@dataclass(frozen=True)
class Matching:
    """A set of edge ids of ``graph`` forming a directed matching."""

    graph: DirectedMultigraph = field(repr=False)
    edge_ids: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edge_ids)

    @property
    def size(self) -> int:
        return len(self.edge_ids)

    def matched_tails(self) -> set[int]:
        return {self.graph.tails[e] for e in self.edge_ids}

    def matched_heads(self) -> set[int]:
        return {self.graph.heads[e] for e in self.edge_ids}

    def drivers(self) -> list[int]:
        """Vertices with in-degree 0 in the matching."""
        covered = self.matched_heads()
        return [v for v in range(self.graph.n) if v not in covered]

    def is_valid(self) -> bool:
        if len(set(self.edge_ids)) != len(self.edge_ids):
            return False
        if any(not 0 <= e < self.graph.num_edges for e in self.edge_ids):
            return False
        tails = [self.graph.tails[e] for e in self.edge_ids]
        heads = [self.graph.heads[e] for e in self.edge_ids]
        return len(set(tails)) == len(tails) and len(set(heads)) == len(heads)


@dataclass(frozen=True)
class RatioReport:
    n: int
    matching_size: int
    method: str
    drivers: tuple[int, ...] = field(repr=False)

    @property
    def m_exact(self) -> Fraction:
        return Fraction(self.matching_size, self.n)

    @property
    def n_d_exact(self) -> Fraction:
        return 1 - self.m_exact

    @property
    def m(self) -> float:
        return self.matching_size / self.n

    @property
    def n_d(self) -> float:
        return (self.n - self.matching_size) / self.n


def _from_left_matches(graph: DirectedMultigraph, match_l: list[int]) -> Matching:
    return Matching(graph, tuple(sorted(e for e in match_l if e >= 0)))


def max_matching(graph: DirectedMultigraph) -> Matching:
    """Maximum directed matching via Hopcroft-Karp phases.

    Deterministic: adjacency is scanned in edge-id order, so the lowest edge
    id wins every tie.
    """
    n = graph.n
    tails, heads, out_edges = graph.tails, graph.heads, graph.out_edges
    match_l = [-1] * n  # tail vertex -> edge id
    match_r = [-1] * n  # head vertex -> edge id

    for u in range(n):
        for e in out_edges[u]:
            if match_r[heads[e]] == -1:
                match_l[u] = e
                match_r[heads[e]] = e
                break

    while True:
        dist = [_INF] * n
        queue = [u for u in range(n) if match_l[u] == -1 and out_edges[u]]
        for u in queue:
            dist[u] = 0
        limit = _INF
        i = 0
        while i < len(queue):
            u = queue[i]
            i += 1
            du = dist[u]
            if du >= limit:
                continue
            for e in out_edges[u]:
                f = match_r[heads[e]]
                if f == -1:
                    if limit == _INF:
                        limit = du + 1
                else:
                    u2 = tails[f]
                    if dist[u2] == _INF:
                        dist[u2] = du + 1
                        queue.append(u2)
        if limit == _INF:
            break

        ptr = [0] * n
        for s in range(n):
            if match_l[s] != -1 or dist[s] != 0:
                continue
            stack = [s]
            while stack:
                u = stack[-1]
                adj = out_edges[u]
                pushed = False
                while ptr[u] < len(adj):
                    e = adj[ptr[u]]
                    f = match_r[heads[e]]
                    if f == -1:
                        if dist[u] + 1 == limit:
                            for x in stack:
                                ex = out_edges[x][ptr[x]]
                                match_l[x] = ex
                                match_r[heads[ex]] = ex
                                dist[x] = _INF
                            stack.clear()
                            pushed = True
                            break
                    else:
                        u2 = tails[f]
                        if dist[u2] == dist[u] + 1:
                            stack.append(u2)
                            pushed = True
                            break
                    ptr[u] += 1
                if not pushed:
                    dist[u] = _INF
                    stack.pop()
                    if stack:
                        ptr[stack[-1]] += 1

    return _from_left_matches(graph, match_l)


def max_matching_size(graph: DirectedMultigraph) -> int:
    return len(max_matching(graph))


def brute_force_max_matching(graph: DirectedMultigraph) -> int:
    """Maximum directed matching size by exhaustive search over edge subsets.

    Branch and bound over edges in id order; only feasible partial subsets
    are extended. Intended as a test oracle for at most 24 edges.
    """
    m = graph.num_edges
    if m > BRUTE_FORCE_MAX_EDGES:
        raise CapacityError(f"brute force limited to {BRUTE_FORCE_MAX_EDGES} edges, got {m}")
    tails, heads = graph.tails, graph.heads
    n = graph.n
    best = 0

    def extend(i: int, size: int, used_t: int, used_h: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if i == m:
            return
        free = min(m - i, n - bin(used_t).count("1"), n - bin(used_h).count("1"))
        if size + free <= best:
            return
        bt, bh = 1 << tails[i], 1 << heads[i]
        if not used_t & bt and not used_h & bh:
            extend(i + 1, size + 1, used_t | bt, used_h | bh)
        extend(i + 1, size, used_t, used_h)

    extend(0, 0, 0, 0)
    return best


def augment_short_paths(
    left_adj: list[list[tuple[int, int]]], n_right: int, max_length: int, order: list[int]
) -> list[int]:
    """Matching of a bipartite graph with no augmenting path of <= ``max_length`` edges.

    ``left_adj[u]`` lists ``(right vertex, edge key)``. Free left vertices are
    swept in ``order``; from each, a breadth-first alternating search bounded
    by ``max_length`` edges finds a shortest augmenting path, which is applied.
    Sweeps repeat until one completes without an augmentation. Returns the
    edge key matched at each left vertex, or -1.
    """
    n_left = len(left_adj)
    match_l = [-1] * n_left  # edge key
    mate_l = [-1] * n_left  # right vertex
    mate_r = [-1] * n_right  # left vertex

    changed = True
    while changed:
        changed = False
        for s in order:
            if mate_l[s] != -1 or not left_adj[s]:
                continue
            # parent[w] = (left vertex we came from, edge key)
            parent: dict[int, tuple[int, int]] = {}
            frontier = [s]
            seen_left = {s}
            found = -1
            depth = 1
            while frontier and depth <= max_length and found == -1:
                nxt = []
                for u in frontier:
                    for w, key in left_adj[u]:
                        if w in parent or w == mate_l[u]:
                            continue
                        parent[w] = (u, key)
                        if mate_r[w] == -1:
                            found = w
                            break
                        u2 = mate_r[w]
                        if u2 not in seen_left:
                            seen_left.add(u2)
                            nxt.append(u2)
                    if found != -1:
                        break
                frontier = nxt
                depth += 2
            if found == -1:
                continue
            w = found
            while True:
                u, key = parent[w]
                prev = mate_l[u]
                mate_l[u] = w
                match_l[u] = key
                mate_r[w] = u
                if u == s:
                    break
                w = prev
            changed = True
    return match_l


def bounded_matching(graph: DirectedMultigraph, max_length: int, seed=None) -> Matching:
    """Matching with no augmenting path of at most ``max_length`` edges.

    Each vertex gets a seeded uniform label; free tail copies are processed
    in label order. ``max_length`` must be odd since augmenting paths have an
    odd number of edges.
    """
    if max_length < 1 or max_length % 2 == 0:
        raise InputError(f"augmenting path bound must be a positive odd integer, got {max_length}")
    rng = np.random.default_rng(seed)
    labels = rng.random(graph.n)
    order = np.argsort(labels, kind="stable").tolist()
    heads = graph.heads
    left_adj = [[(heads[e], e) for e in graph.out_edges[u]] for u in range(graph.n)]
    match_l = augment_short_paths(left_adj, graph.n, max_length, order)
    return _from_left_matches(graph, match_l)


def karp_sipser(graph: DirectedMultigraph, seed=None) -> Matching:
    """Karp-Sipser greedy matching on the bipartite representation.

    While a vertex of degree one exists it is matched to its only neighbour;
    otherwise a uniformly random remaining edge is matched. Matched vertices
    are removed together with their edges. Parallel edges are collapsed to the
    lowest id first, so a pendant vertex is one with a single neighbour.
    """
    rng = np.random.default_rng(seed)
    n = graph.n
    # bipartite vertex ids: tail copy v -> v, head copy w -> n + w
    seen: set[tuple[int, int]] = set()
    ends: list[tuple[int, int, int]] = []
    for e, (t, h) in enumerate(zip(graph.tails, graph.heads)):
        if (t, h) not in seen:
            seen.add((t, h))
            ends.append((t, n + h, e))
    adj: list[list[int]] = [[] for _ in range(2 * n)]
    for i, (a, b, _) in enumerate(ends):
        adj[a].append(i)
        adj[b].append(i)
    deg = [len(a) for a in adj]
    alive = [True] * (2 * n)
    pendant = deque(v for v in range(2 * n) if deg[v] == 1)
    shuffled = rng.permutation(len(ends)).tolist()
    cursor = 0
    matched: list[int] = []

    def remove(v: int) -> None:
        alive[v] = False
        for i in adj[v]:
            a, b, _ = ends[i]
            other = b if a == v else a
            if alive[other]:
                deg[other] -= 1
                if deg[other] == 1:
                    pendant.append(other)

    def take(i: int) -> None:
        a, b, e = ends[i]
        matched.append(e)
        remove(a)
        remove(b)

    while True:
        while pendant:
            v = pendant.popleft()
            if not alive[v] or deg[v] != 1:
                continue
            for i in adj[v]:
                a, b, _ = ends[i]
                if alive[a] and alive[b]:
                    take(i)
                    break
        while cursor < len(shuffled):
            a, b, _ = ends[shuffled[cursor]]
            if alive[a] and alive[b]:
                break
            cursor += 1
        if cursor == len(shuffled):
            break
        take(shuffled[cursor])
        cursor += 1

    return Matching(graph, tuple(sorted(matched)))


def ratio(graph: DirectedMultigraph, method: str = "exact", max_length: int = 3, seed=None) -> RatioReport:
    """Matching ratio ``|M| / n`` and controllability ``1 - |M| / n``."""
    if graph.n == 0:
        raise InputError("matching ratio is undefined for a graph with no vertices")
    if method == "exact":
        matching = max_matching(graph)
    elif method == "karp-sipser":
        matching = karp_sipser(graph, seed)
    elif method == "bounded":
        matching = bounded_matching(graph, max_length, seed)
    else:
        raise InputError(f"unknown matching method {method!r}; expected one of {METHODS}")
    return RatioReport(graph.n, len(matching), method, tuple(matching.drivers()))
