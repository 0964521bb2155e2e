"""Closed-form Erdos-Renyi limit and Azuma-Hoeffding tail bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InputError
from ..generators import DegreeSequence

SCAN_STEP = 1e-3
ROOT_TOL = 1e-12


@dataclass(frozen=True)
class LimitSolution:
    """Solution of ``t = exp(-c exp(-c t))`` and the matching limit built from it.

    ``m_limit = 1 - (t_c + e^{-c t_c} + c t_c e^{-c t_c}) / 2``. This is the
    limit of ``|M_max| / |V|`` for the undirected ``G(n, c/n)``. The directed
    graph with mean total degree ``2c`` has a bipartite representation on
    ``2n`` vertices with mean degree ``c``, so its ratio ``|M_max| / n`` tends
    to ``2 * m_limit``, exposed as ``directed_ratio_limit``.
    """

    c: float
    t_c: float
    m_limit: float
    residual: float
    roots: tuple[float, ...]

    @property
    def multiple_roots(self) -> bool:
        return len(self.roots) > 1

    @property
    def directed_ratio_limit(self) -> float:
        return 2.0 * self.m_limit

    def as_dict(self) -> dict:
        return {
            "c": self.c,
            "t_c": self.t_c,
            "m_limit": self.m_limit,
            "directed_ratio_limit": self.directed_ratio_limit,
            "residual": self.residual,
            "roots": list(self.roots),
            "multiple_roots": self.multiple_roots,
        }


def _fixed_point_gap(t: float, c: float) -> float:
    return t - math.exp(-c * math.exp(-c * t))


def _bisect(c: float, lo: float, hi: float) -> float:
    f_lo = _fixed_point_gap(lo, c)
    if f_lo == 0:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = _fixed_point_gap(mid, c)
        if f_mid == 0 or (hi - lo) < 1e-17:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def er_limit(c: float) -> LimitSolution:
    """Smallest root in (0, 1) by a 1e-3 sign scan followed by bisection.

    All bracketed roots are kept in ``roots``; ``t_c`` is the smallest.
    """
    if not c > 0:
        raise InputError(f"c must be positive, got {c}")
    grid = np.linspace(0.0, 1.0, int(round(1 / SCAN_STEP)) + 1)
    gaps = grid - np.exp(-c * np.exp(-c * grid))
    roots = []
    for i in range(len(grid) - 1):
        if gaps[i] == 0:
            roots.append(float(grid[i]))
        elif gaps[i] * gaps[i + 1] < 0:
            roots.append(_bisect(c, float(grid[i]), float(grid[i + 1])))
    if not roots:
        raise InputError(f"no root of t = exp(-c exp(-c t)) bracketed in (0, 1) for c={c}")
    t = roots[0]
    residual = abs(_fixed_point_gap(t, c))
    if residual > ROOT_TOL:
        raise ArithmeticError(f"bisection stalled at residual {residual:g}")
    e = math.exp(-c * t)
    m = 1 - (t + e + c * t * e) / 2
    return LimitSolution(c=c, t_c=t, m_limit=m, residual=residual, roots=tuple(roots))


def azuma_bound(epsilon: float, ds: DegreeSequence, variant: str | None = None) -> float:
    """``min(1, 2 exp(-eps^2 n^2 / (K sum d_k^2)))`` with ``K = 8`` (inout) or 32 (total).

    ``d_k`` is the total degree of vertex ``k``.
    """
    variant = variant or ds.variant
    if variant not in ("inout", "total"):
        raise InputError(f"unknown variant {variant!r}")
    if not epsilon > 0:
        raise InputError(f"epsilon must be positive, got {epsilon}")
    square_sum = float(np.sum(ds.degrees.astype(np.float64) ** 2))
    if square_sum == 0:
        raise InputError("Azuma bound is undefined when every degree is zero")
    divisor = 8.0 if variant == "inout" else 32.0
    n = ds.n
    return min(1.0, 2.0 * math.exp(-(epsilon**2) * n * n / (divisor * square_sum)))
