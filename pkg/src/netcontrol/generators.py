"""Seeded samplers for random directed multigraphs and truncated UGW trees.

Every sampler takes ``seed`` (an int, a ``numpy.random.SeedSequence`` or a
``numpy.random.Generator``) and is a pure function of its arguments and seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import InputError
from .graph import FULL, DirectedMultigraph, RootedBall

POISSON_TAIL = 1e-12
DENSE_PAIR_LIMIT = 2_000_000


def _int_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.size == 0:
        return np.zeros(0, dtype=np.int64)
    if arr.ndim != 1:
        raise InputError(f"{name} must be a one-dimensional sequence")
    if not np.issubdtype(arr.dtype, np.integer) and not np.all(arr == np.round(arr)):
        raise InputError(f"{name} must contain integers")
    arr = arr.astype(np.int64)
    if arr.min() < 0:
        raise InputError(f"{name} must be nonnegative")
    return arr


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    """Per-vertex degrees, either as out/in pairs or as total degrees."""

    variant: str
    degrees: np.ndarray
    out_degrees: np.ndarray | None = None
    in_degrees: np.ndarray | None = None

    @classmethod
    def inout(cls, out_degrees, in_degrees) -> DegreeSequence:
        out_arr = _int_array(out_degrees, "out-degrees")
        in_arr = _int_array(in_degrees, "in-degrees")
        if out_arr.shape != in_arr.shape:
            raise InputError("out- and in-degree sequences must have the same length")
        if out_arr.sum() != in_arr.sum():
            raise InputError(f"out-degrees sum to {out_arr.sum()} but in-degrees sum to {in_arr.sum()}")
        return cls("inout", out_arr + in_arr, out_arr, in_arr)

    @classmethod
    def total(cls, degrees) -> DegreeSequence:
        return cls("total", _int_array(degrees, "degrees"))

    @classmethod
    def from_graph(cls, graph: DirectedMultigraph, variant: str) -> DegreeSequence:
        if variant == "inout":
            return cls.inout(graph.out_degrees(), graph.in_degrees())
        if variant == "total":
            return cls.total(graph.degrees())
        raise InputError(f"unknown degree variant {variant!r}")

    @property
    def n(self) -> int:
        return len(self.degrees)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DegreeSequence):
            return NotImplemented
        same = lambda a, b: (a is None and b is None) or (a is not None and b is not None and np.array_equal(a, b))
        return (
            self.variant == other.variant
            and np.array_equal(self.degrees, other.degrees)
            and same(self.out_degrees, other.out_degrees)
            and same(self.in_degrees, other.in_degrees)
        )


@dataclass(frozen=True, eq=False)
class OffspringDistribution:
    """Probability mass function on ``0, 1, 2, ...`` with finite support."""

    pmf: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        pmf = np.asarray(self.pmf, dtype=float)
        if pmf.ndim != 1 or pmf.size == 0 or np.any(pmf < 0) or not np.isfinite(pmf).all():
            raise InputError("offspring pmf must be a nonempty vector of nonnegative masses")
        if abs(pmf.sum() - 1.0) > 1e-12:
            raise InputError(f"offspring pmf sums to {pmf.sum()!r}, not 1")
        object.__setattr__(self, "pmf", pmf)

    @classmethod
    def from_pmf(cls, masses, name: str = "custom") -> OffspringDistribution:
        return cls(np.asarray(masses, dtype=float), name)

    @classmethod
    def constant(cls, k: int) -> OffspringDistribution:
        pmf = np.zeros(k + 1)
        pmf[k] = 1.0
        return cls(pmf, f"constant({k})")

    @classmethod
    def poisson(cls, lam: float) -> OffspringDistribution:
        """Poisson law cut where the tail mass drops below 1e-12, then renormalised."""
        if lam < 0:
            raise InputError(f"Poisson mean must be nonnegative, got {lam}")
        if lam == 0:
            return cls.constant(0)
        top = int(stats.poisson.isf(POISSON_TAIL, lam)) + 1
        while stats.poisson.sf(top, lam) >= POISSON_TAIL:
            top += 1
        pmf = stats.poisson.pmf(np.arange(top + 1), lam)
        return cls(pmf / pmf.sum(), f"poisson({lam:g})")

    @property
    def mean(self) -> float:
        return float(np.dot(np.arange(len(self.pmf)), self.pmf))

    def size_biased(self) -> OffspringDistribution:
        """Law of ``k`` with mass ``(k+1) P(xi = k+1) / E xi``."""
        mu = self.mean
        if mu <= 0:
            raise InputError("size-biased law needs a positive mean")
        k = np.arange(1, len(self.pmf))
        pmf = k * self.pmf[1:] / mu
        if pmf.size == 0:
            pmf = np.array([1.0])
        pmf = pmf / pmf.sum()
        return OffspringDistribution(pmf, f"size-biased {self.name}")

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.choice(len(self.pmf), size=size, p=self.pmf)


def _unrank_pairs(k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map pair indices ``k = j(j-1)/2 + i`` (``i < j``) back to ``(i, j)``."""
    j = ((1 + np.sqrt(1 + 8 * k.astype(np.float64))) // 2).astype(np.int64)
    j = np.where(j * (j - 1) // 2 > k, j - 1, j)
    j = np.where((j + 1) * j // 2 <= k, j + 1, j)
    return k - j * (j - 1) // 2, j


def gen_er_directed(n: int, mean_degree: float, seed=None) -> DirectedMultigraph:
    """Directed Erdos-Renyi graph with expected total degree ``mean_degree`` (= 2c).

    Each unordered pair is present independently with probability
    ``mean_degree / n`` and then oriented by a fair coin.
    """
    if n < 1:
        raise InputError(f"need at least one vertex, got n={n}")
    p = mean_degree / n
    if not 0 <= p <= 1:
        raise InputError(f"edge probability {p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    pairs = n * (n - 1) // 2
    if pairs <= DENSE_PAIR_LIMIT:
        keys = np.flatnonzero(rng.random(pairs) < p).astype(np.int64)
    else:
        count = int(rng.binomial(pairs, p))
        chosen = np.zeros(0, dtype=np.int64)
        while len(chosen) < count:
            need = count - len(chosen)
            draw = rng.integers(0, pairs, size=need + need // 8 + 16, dtype=np.int64)
            pool = np.concatenate([chosen, draw])
            _, first = np.unique(pool, return_index=True)
            first.sort()
            # first appearances in draw order: same law as sequential rejection
            chosen = pool[first[:count]]
        keys = np.sort(chosen)
    i, j = _unrank_pairs(keys)
    flip = rng.random(len(keys)) < 0.5
    tails = np.where(flip, j, i)
    heads = np.where(flip, i, j)
    return DirectedMultigraph(n, tails.tolist(), heads.tolist())


def gen_config_inout(ds: DegreeSequence, seed=None) -> DirectedMultigraph:
    """Uniform pairing of tail half-edges with head half-edges."""
    if ds.variant != "inout":
        raise InputError("gen_config_inout needs an in/out degree sequence")
    rng = np.random.default_rng(seed)
    n = ds.n
    tails = np.repeat(np.arange(n), ds.out_degrees)
    heads = np.repeat(np.arange(n), ds.in_degrees)
    heads = heads[rng.permutation(len(heads))]
    return DirectedMultigraph(n, tails.tolist(), heads.tolist())


def gen_config_total(ds: DegreeSequence, seed=None) -> DirectedMultigraph:
    """Configuration model for total degrees with uniform tail/head split.

    With an odd number of half-edges one uniformly chosen half-edge is
    dropped. A single uniform permutation then both selects the tail half
    (first half) and pairs it with the head half (second half).
    """
    if ds.variant != "total":
        raise InputError("gen_config_total needs a total degree sequence")
    rng = np.random.default_rng(seed)
    half = np.repeat(np.arange(ds.n), ds.degrees)
    if len(half) % 2:
        half = np.delete(half, rng.integers(len(half)))
    half = half[rng.permutation(len(half))]
    m = len(half) // 2
    return DirectedMultigraph(ds.n, half[:m].tolist(), half[m:].tolist())


def gen_regular_directed(n: int, d: int, variant: str = "exact_inout", seed=None) -> DirectedMultigraph:
    """Random ``d``-regular directed multigraph.

    ``exact_inout``: every in- and out-degree is ``d``. ``oriented``: an
    undirected ``d``-regular configuration multigraph with each edge oriented
    by a fair coin, so every total degree is ``d``.
    """
    if n < 1 or d < 0:
        raise InputError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    if variant == "exact_inout":
        const = np.full(n, d)
        return gen_config_inout(DegreeSequence.inout(const, const), seed)
    if variant != "oriented":
        raise InputError(f"unknown regular variant {variant!r}")
    if (n * d) % 2:
        raise InputError(f"n*d = {n * d} must be even for the oriented variant")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    stubs = stubs[rng.permutation(len(stubs))]
    a, b = stubs[0::2], stubs[1::2]
    flip = rng.random(len(a)) < 0.5
    return DirectedMultigraph(n, np.where(flip, b, a).tolist(), np.where(flip, a, b).tolist())


def gen_pa(n: int, r: int, alpha: float, seed=None) -> DirectedMultigraph:
    """Preferential attachment graph, edges pointing from newer to older vertices.

    Vertex ``t >= 1`` sends ``r`` edges; each head is uniform on ``0..t-1``
    with probability ``alpha`` and otherwise proportional to the total degree
    in the graph before ``t`` arrived. If all those degrees are zero the
    choice is uniform.
    """
    if n < 1 or r < 1:
        raise InputError(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    if not 0 <= alpha < 1:
        raise InputError(f"alpha must lie in [0, 1), got {alpha}")
    rng = np.random.default_rng(seed)
    m = r * (n - 1)
    uniform = (rng.random(m) < alpha).tolist()
    u = rng.random(m).tolist()
    # every edge contributes its tail and head, so a uniform entry is degree-biased
    ends = [0] * (2 * m)
    tails = [0] * m
    heads = [0] * m
    for t in range(1, n):
        base = r * (t - 1)
        total = 2 * base
        for k in range(base, base + r):
            if uniform[k] or total == 0:
                w = min(int(u[k] * t), t - 1)
            else:
                w = ends[min(int(u[k] * total), total - 1)]
            tails[k] = t
            heads[k] = w
        for k in range(base, base + r):
            ends[2 * k] = t
            ends[2 * k + 1] = heads[k]
    return DirectedMultigraph(n, tails, heads)


def gen_ugw_truncated(off: OffspringDistribution, depth: int, directed: bool = True, seed=None) -> RootedBall:
    """Unimodular Galton-Watson tree cut at ``depth``.

    The root has ``off`` children, every other vertex the size-biased number.
    Undirected trees are returned with edges oriented parent to child; with
    ``directed=True`` each edge is oriented by a fair coin instead.
    """
    if depth < 0:
        raise InputError(f"depth must be nonnegative, got {depth}")
    rng = np.random.default_rng(seed)
    parents: list[int] = []
    children: list[int] = []
    dist = [0]
    level = [0]
    biased = None
    for d in range(depth):
        if not level:
            break
        if d == 0:
            counts = off.sample(rng, 1)
        else:
            if biased is None:
                biased = off.size_biased()
            counts = biased.sample(rng, len(level))
        nxt = []
        for v, c in zip(level, counts.tolist()):
            for _ in range(c):
                w = len(dist)
                dist.append(d + 1)
                parents.append(v)
                children.append(w)
                nxt.append(w)
        level = nxt
    if directed:
        flip = (rng.random(len(parents)) < 0.5).tolist()
        tails = [c if f else p for p, c, f in zip(parents, children, flip)]
        heads = [p if f else c for p, c, f in zip(parents, children, flip)]
    else:
        tails, heads = parents, children
    size = len(dist)
    return RootedBall(
        root=0,
        radius=depth,
        graph=DirectedMultigraph(size, tails, heads),
        mode=FULL,
        vertices=tuple(range(size)),
        distance=tuple(dist),
    )

