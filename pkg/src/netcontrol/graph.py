"""Directed multigraph storage, bipartite representation and rooted balls."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

FULL = "full"
MINUS = "minus"
BALL_MODES = (FULL, MINUS)


class DirectedMultigraph:
    """Immutable directed multigraph on vertices ``0..n-1``.

    Parallel edges and loops are allowed. The edge id is the position in the
    edge list, and ``out_edges[v]`` / ``in_edges[v]`` list incident edge ids in
    increasing order. A loop ``(v, v)`` appears in both lists of ``v``.
    """

    __slots__ = ("n", "tails", "heads", "out_edges", "in_edges")

    def __init__(self, n: int, tails: Sequence[int], heads: Sequence[int]):
        self.n = n
        self.tails: list[int] = list(tails)
        self.heads: list[int] = list(heads)
        out_edges: list[list[int]] = [[] for _ in range(n)]
        in_edges: list[list[int]] = [[] for _ in range(n)]
        for e, (t, h) in enumerate(zip(self.tails, self.heads)):
            out_edges[t].append(e)
            in_edges[h].append(e)
        self.out_edges = out_edges
        self.in_edges = in_edges

    @property
    def num_edges(self) -> int:
        return len(self.tails)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.tails, self.heads))

    def out_degree(self, v: int) -> int:
        return len(self.out_edges[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_edges[v])

    def degree(self, v: int) -> int:
        # a loop counts once in each direction, so twice in total
        return len(self.out_edges[v]) + len(self.in_edges[v])

    def out_degrees(self) -> np.ndarray:
        return np.bincount(np.asarray(self.tails, dtype=np.int64), minlength=self.n)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(np.asarray(self.heads, dtype=np.int64), minlength=self.n)

    def degrees(self) -> np.ndarray:
        return self.out_degrees() + self.in_degrees()

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedMultigraph):
            return NotImplemented
        return self.n == other.n and self.tails == other.tails and self.heads == other.heads

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.tails), tuple(self.heads)))

    def __repr__(self) -> str:
        return f"DirectedMultigraph(n={self.n}, num_edges={self.num_edges})"


def build_graph(n: int, edges: Iterable[tuple[int, int]] | np.ndarray) -> DirectedMultigraph:
    """Build a graph from ``n`` and a list of ``(tail, head)`` pairs.

    Raises :class:`InputError` if an id is negative or not smaller than ``n``.
    """
    if n < 0:
        raise InputError(f"vertex count must be nonnegative, got {n}")
    arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
    if arr.size == 0:
        return DirectedMultigraph(n, [], [])
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InputError("edges must be a sequence of (tail, head) pairs")
    if arr.min() < 0 or arr.max() >= n:
        bad = int(np.argmax((arr < 0).any(axis=1) | (arr >= n).any(axis=1)))
        raise InputError(f"edge {bad} = {tuple(arr[bad].tolist())} has an endpoint outside 0..{n - 1}")
    return DirectedMultigraph(n, arr[:, 0].tolist(), arr[:, 1].tolist())


@dataclass(frozen=True)
class BipartiteGraph:
    """Split graph: left vertex ``v`` is the tail copy, right vertex ``w`` the head copy.

    ``edges[e] = (v, w)`` stands for the undirected edge between the left
    copy of ``v`` and the right copy of ``w``; ids match the source graph.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def left_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for e, (v, _) in enumerate(self.edges):
            adj[v].append(e)
        return adj

    def right_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for e, (_, w) in enumerate(self.edges):
            adj[w].append(e)
        return adj


def bipartite_representation(graph: DirectedMultigraph) -> BipartiteGraph:
    return BipartiteGraph(graph.n, tuple(zip(graph.tails, graph.heads)))


@dataclass(frozen=True)
class RootedBall:
    """A rooted neighbourhood, relabelled so that the root is vertex 0.

    ``vertices[i]`` is the host id of local vertex ``i`` (or ``i`` itself for
    sampled trees) and ``distance[i]`` its undirected distance to the root.
    """

    root: int
    radius: int
    graph: DirectedMultigraph
    mode: str
    vertices: tuple[int, ...]
    distance: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.graph.n


def extract_ball(graph: DirectedMultigraph, v: int, r: int, mode: str = FULL) -> RootedBall:
    """Radius-``r`` ball around ``v`` in the undirected metric.

    ``mode="full"`` keeps every edge between ball vertices. ``mode="minus"``
    additionally drops edges whose endpoints are both at distance exactly ``r``.
    """
    if not 0 <= v < graph.n:
        raise InputError(f"root {v} outside 0..{graph.n - 1}")
    if r < 0:
        raise InputError(f"radius must be nonnegative, got {r}")
    if mode not in BALL_MODES:
        raise InputError(f"unknown ball mode {mode!r}")

    tails, heads = graph.tails, graph.heads
    local = {v: 0}
    order = [v]
    dist = [0]
    queue = deque([v])
    while queue:
        u = queue.popleft()
        du = dist[local[u]]
        if du == r:
            continue
        for e in graph.out_edges[u]:
            w = heads[e]
            if w not in local:
                local[w] = len(order)
                order.append(w)
                dist.append(du + 1)
                queue.append(w)
        for e in graph.in_edges[u]:
            w = tails[e]
            if w not in local:
                local[w] = len(order)
                order.append(w)
                dist.append(du + 1)
                queue.append(w)

    edge_ids = set()
    for u in order:
        for e in graph.out_edges[u]:
            if heads[e] in local:
                edge_ids.add(e)
    sub_t: list[int] = []
    sub_h: list[int] = []
    for e in sorted(edge_ids):
        a, b = local[tails[e]], local[heads[e]]
        if mode == MINUS and dist[a] == r and dist[b] == r:
            continue
        sub_t.append(a)
        sub_h.append(b)
    return RootedBall(
        root=v,
        radius=r,
        graph=DirectedMultigraph(len(order), sub_t, sub_h),
        mode=mode,
        vertices=tuple(order),
        distance=tuple(dist),
    )
