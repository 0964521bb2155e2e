"""Exact canonical codes for rooted directed multigraphs.

Two rooted graphs get equal codes iff there is a bijection of the vertices
mapping root to root and preserving every directed edge with its
multiplicity (loops included). Tree-shaped inputs use an AHU-style string;
everything else goes through colour refinement plus a full individualisation
search, with twin vertices collapsed to a single branch.
"""

from __future__ import annotations

import os

from .errors import CapacityError
from .graph import DirectedMultigraph, RootedBall

DEFAULT_BALL_CAP = 4096
ENV_BALL_CAP = "NETCONTROL_BALL_CAP"


def ball_cap() -> int:
    value = os.environ.get(ENV_BALL_CAP)
    return int(value) if value else DEFAULT_BALL_CAP


def canonical_code(ball: RootedBall, cap: int | None = None) -> bytes:
    return rooted_code(ball.graph, 0, cap)


def rooted_code(graph: DirectedMultigraph, root: int, cap: int | None = None) -> bytes:
    """Canonical byte string of ``graph`` rooted at ``root``.

    The graph is assumed connected in the undirected sense (balls always are);
    disconnected inputs still get sound and complete codes via the general path.
    """
    limit = ball_cap() if cap is None else cap
    if graph.n > limit:
        raise CapacityError(f"ball has {graph.n} vertices, cap is {limit}")
    if graph.num_edges == graph.n - 1 and _is_simple_tree(graph):
        return b"T" + _tree_code(graph, root).encode("ascii")
    return b"G" + repr(_general_code(graph, root)).encode("ascii")


def _is_simple_tree(graph: DirectedMultigraph) -> bool:
    # |E| = n - 1 already holds; connected and loop-free then means tree
    n = graph.n
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    for t, h in zip(graph.tails, graph.heads):
        if t == h:
            return False
    while stack:
        u = stack.pop()
        for e in graph.out_edges[u]:
            w = graph.heads[e]
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
        for e in graph.in_edges[u]:
            w = graph.tails[e]
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n


def _tree_code(graph: DirectedMultigraph, root: int) -> str:
    n = graph.n
    parent = [-1] * n
    # direction of the edge to the parent: "d" parent->child, "u" child->parent
    kind = [""] * n
    order = [root]
    parent[root] = root
    for u in order:
        for e in graph.out_edges[u]:
            w = graph.heads[e]
            if parent[w] == -1:
                parent[w] = u
                kind[w] = "d"
                order.append(w)
        for e in graph.in_edges[u]:
            w = graph.tails[e]
            if parent[w] == -1:
                parent[w] = u
                kind[w] = "u"
                order.append(w)
    children: list[list[str]] = [[] for _ in range(n)]
    code = [""] * n
    for u in reversed(order):
        parts = children[u]
        parts.sort()
        code[u] = "(" + "".join(parts) + ")"
        if u != root:
            children[parent[u]].append(kind[u] + code[u])
    return code[root]


def _general_code(graph: DirectedMultigraph, root: int) -> tuple:
    n = graph.n
    out_mult: list[dict[int, int]] = [{} for _ in range(n)]
    in_mult: list[dict[int, int]] = [{} for _ in range(n)]
    for t, h in zip(graph.tails, graph.heads):
        out_mult[t][h] = out_mult[t].get(h, 0) + 1
        in_mult[h][t] = in_mult[h].get(t, 0) + 1

    initial = [
        (0 if v == root else 1, out_mult[v].get(v, 0), len(graph.out_edges[v]), len(graph.in_edges[v]))
        for v in range(n)
    ]
    colors = _refine(_rank(initial), out_mult, in_mult)

    best: list[tuple | None] = [None]

    def search(colors: list[int]) -> None:
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            code = _encode(colors, out_mult)
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        # smallest non-singleton cell, lowest colour first: an invariant choice
        target = min((len(vs), c) for c, vs in cells.items() if len(vs) > 1)[1]
        tried: list[int] = []
        for v in cells[target]:
            if any(_twins(u, v, out_mult, in_mult) for u in tried):
                continue
            tried.append(v)
            split = [2 * c + (0 if u == v else 1) for u, c in enumerate(colors)]
            search(_refine(_rank(split), out_mult, in_mult))

    search(colors)
    return best[0]


def _rank(signatures: list) -> list[int]:
    table = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [table[sig] for sig in signatures]


def _refine(colors: list[int], out_mult, in_mult) -> list[int]:
    count = len(set(colors))
    while True:
        sigs = [
            (
                colors[v],
                tuple(sorted((colors[w], k) for w, k in out_mult[v].items())),
                tuple(sorted((colors[w], k) for w, k in in_mult[v].items())),
            )
            for v in range(len(colors))
        ]
        new = _rank(sigs)
        new_count = len(set(new))
        if new_count == count:
            return new
        colors, count = new, new_count


def _twins(u: int, v: int, out_mult, in_mult) -> bool:
    """True if swapping ``u`` and ``v`` is an automorphism."""
    if out_mult[u].get(u, 0) != out_mult[v].get(v, 0):
        return False
    if out_mult[u].get(v, 0) != out_mult[v].get(u, 0):
        return False
    for a, b in ((out_mult[u], out_mult[v]), (in_mult[u], in_mult[v])):
        ka = {w: k for w, k in a.items() if w != u and w != v}
        kb = {w: k for w, k in b.items() if w != u and w != v}
        if ka != kb:
            return False
    return True


def _encode(labels: list[int], out_mult) -> tuple:
    arcs = sorted(
        (labels[t], labels[h], k) for t in range(len(labels)) for h, k in out_mult[t].items()
    )
    return (len(labels), tuple(arcs))
