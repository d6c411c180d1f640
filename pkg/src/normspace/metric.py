"""Finite metrics on [n] = {0, ..., n-1} and the log-distortion between them.

Points are 0-indexed. Unordered pairs {i, j} with i < j are enumerated
lexicographically, so for n = 4 the pair order is
(0,1), (0,2), (0,3), (1,2), (1,3), (2,3). Every pair-indexed vector in the
package (edge numbers, log-coordinates) uses this order.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    NonPositiveOffDiagonal,
    NonSymmetric,
    ParameterOutOfRange,
    TooLarge,
    TriangleViolation,
)

REL_TOL = 1e-12
MAX_ISOMETRY_N = 9


def pair_list(n: int) -> list[tuple[int, int]]:
    """Lexicographic list of pairs (i, j), i < j, of range(n)."""
    return list(itertools.combinations(range(n), 2))


def pair_index(n: int, i: int, j: int) -> int:
    """Position of the unordered pair {i, j} in ``pair_list(n)``."""
    if i == j:
        raise ValueError("a pair needs two distinct points")
    i, j = min(i, j), max(i, j)
    return i * n - i * (i + 1) // 2 + (j - i - 1)


@dataclass(frozen=True, eq=False)
class FiniteMetric:
    """A validated metric on ``n`` points, stored as a read-only matrix."""

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix.setflags(write=False)

    def __eq__(self, other):
        if not isinstance(other, FiniteMetric):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.n, self.matrix.tobytes()))

    def __call__(self, i: int, j: int) -> float:
        return float(self.matrix[i, j])

    def pairs(self) -> list[tuple[int, int]]:
        return pair_list(self.n)

    def vector(self) -> np.ndarray:
        """Pairwise distances in lexicographic pair order."""
        iu = np.triu_indices(self.n, k=1)
        return self.matrix[iu].copy()

    @property
    def diameter(self) -> float:
        return float(self.vector().max())

    def scaled(self, alpha: float) -> "FiniteMetric":
        if not alpha > 0:
            raise ParameterOutOfRange(f"scale must be positive, got {alpha!r}")
        return FiniteMetric(self.n, self.matrix * alpha)

    def canonical(self) -> "MetricClass":
        return MetricClass(self.scaled(1.0 / self.vector().min()))

    @classmethod
    def from_vector(cls, n: int, values: Sequence[float]) -> "FiniteMetric":
        """Build and validate from distances in lexicographic pair order."""
        values = np.asarray(values, dtype=float)
        if values.shape != (n * (n - 1) // 2,):
            raise DimensionMismatch(
                f"expected {n * (n - 1) // 2} pair values for n={n}, got shape {values.shape}"
            )
        table = np.zeros((n, n))
        iu = np.triu_indices(n, k=1)
        table[iu] = values
        table = table + table.T
        return validate_metric(table)


@dataclass(frozen=True)
class MetricClass:
    """Dilation class of a metric, represented with minimum distance 1."""

    rep: FiniteMetric

    def __eq__(self, other):
        if not isinstance(other, MetricClass):
            return NotImplemented
        return self.rep.n == other.rep.n and np.allclose(
            self.rep.matrix, other.rep.matrix, rtol=REL_TOL, atol=0.0
        )

    __hash__ = None


def validate_metric(raw) -> FiniteMetric:
    """Check a square table for the metric axioms and wrap it.

    Raises the first violation found: asymmetry, a non-positive
    off-diagonal entry, or a triangle violation d(i,k) > d(i,j) + d(j,k)
    beyond relative tolerance 1e-12 (reported as the triple (i, j, k)).
    """
    table = np.array(raw, dtype=float)
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise DimensionMismatch(f"expected a square table, got shape {table.shape}")
    n = table.shape[0]
    if n < 2:
        raise DimensionMismatch("a finite metric needs at least 2 points")
    if not np.all(np.isfinite(table)):
        raise NonPositiveOffDiagonal(*np.argwhere(~np.isfinite(table))[0], math.nan)
    if np.any(np.diag(table) != 0):
        i = int(np.flatnonzero(np.diag(table) != 0)[0])
        raise DimensionMismatch(f"diagonal entry ({i}, {i}) must be zero, got {table[i, i]!r}")
    for i, j in pair_list(n):
        if table[i, j] != table[j, i]:
            raise NonSymmetric(i, j, table[i, j], table[j, i])
        if not table[i, j] > 0:
            raise NonPositiveOffDiagonal(i, j, table[i, j])
    # detour[i, j, k] = d(i, j) + d(j, k), compared against d(i, k)
    detour = table[:, :, None] + table[None, :, :]
    excess = table[:, None, :] - detour * (1.0 + REL_TOL)
    distinct = np.ones((n, n, n), dtype=bool)
    idx = np.arange(n)
    distinct[idx, idx, :] = False
    distinct[:, idx, idx] = False
    distinct[idx, :, idx] = False
    bad = np.argwhere((excess > 0) & distinct)
    if len(bad):
        i, j, k = (int(v) for v in bad[0])
        raise TriangleViolation(i, j, k, float(table[i, k] - table[i, j] - table[j, k]))
    return FiniteMetric(n, table)


def _check_same_n(r1: FiniteMetric, r2: FiniteMetric):
    if r1.n != r2.n:
        raise DimensionMismatch(f"metrics live on different point counts: {r1.n} vs {r2.n}")


def log_distortion(r1: FiniteMetric, r2: FiniteMetric) -> float:
    """max log(r2/r1) - min log(r2/r1) over all pairs.

    Both ratio directions are evaluated and the smaller spread returned, so
    the result is exactly symmetric in floating point.
    """
    _check_same_n(r1, r2)
    v1, v2 = r1.vector(), r2.vector()
    fwd = np.log(v2 / v1)
    bwd = np.log(v1 / v2)
    return float(min(fwd.max() - fwd.min(), bwd.max() - bwd.min()))


def are_proportional(r1: FiniteMetric, r2: FiniteMetric) -> Optional[float]:
    """Return alpha with r2 = alpha * r1 (relative 1e-12), else None."""
    _check_same_n(r1, r2)
    ratios = r2.vector() / r1.vector()
    lo, hi = ratios.min(), ratios.max()
    if hi - lo <= REL_TOL * hi:
        return float(ratios[0])
    return None


def brute_force_isometry(r1: FiniteMetric, r2: FiniteMetric) -> Optional[tuple[int, ...]]:
    """Search all permutations for sigma with r2[sigma i, sigma j] == r1[i, j].

    Returns sigma as a tuple (sigma[i] is the image of i) or None. Limited to
    n <= 9.
    """
    _check_same_n(r1, r2)
    n = r1.n
    if n > MAX_ISOMETRY_N:
        raise TooLarge(f"isometry search is capped at n={MAX_ISOMETRY_N}, got n={n}")
    a, b = r1.matrix, r2.matrix
    # cheap invariant: sorted distance multisets must agree
    if not np.allclose(np.sort(r1.vector()), np.sort(r2.vector()), rtol=REL_TOL, atol=0.0):
        return None
    for sigma in itertools.permutations(range(n)):
        perm = np.array(sigma)
        if np.allclose(b[np.ix_(perm, perm)], a, rtol=REL_TOL, atol=0.0):
            return tuple(int(s) for s in sigma)
    return None


def apex_extend(r: FiniteMetric) -> FiniteMetric:
    """Add a point at distance diam(r) from every existing point."""
    n = r.n
    table = np.zeros((n + 1, n + 1))
    table[:n, :n] = r.matrix
    table[n, :n] = table[:n, n] = r.diameter
    return FiniteMetric(n + 1, table)


def packing_count(points: Sequence, dist: Callable, r: float) -> int:
    """Size of a greedy r-separated subset, taking points in the given order.

    A point joins when its distance to every kept point is at least ``r``.
    The result is a lower bound on the r-packing number.
    """
    kept: list = []
    for p in points:
        if all(dist(p, q) >= r for q in kept):
            kept.append(p)
    return len(kept)


# ---------------------------------------------------------------- families


def discrete(n: int) -> FiniteMetric:
    if n < 2:
        raise ParameterOutOfRange(f"n must be >= 2, got {n}")
    return FiniteMetric(n, np.ones((n, n)) - np.eye(n))


def rho_table(n: int, edge: int, a: float) -> np.ndarray:
    """Raw table: all distances 1 except ``a`` on pair number ``edge``.

    No validation; this is a metric exactly when 0 < a <= 2.
    """
    pairs = pair_list(n)
    if not 0 <= edge < len(pairs):
        raise ParameterOutOfRange(f"edge must be in [0, {len(pairs)}), got {edge}")
    table = np.ones((n, n)) - np.eye(n)
    i, j = pairs[edge]
    table[i, j] = table[j, i] = a
    return table


def rho_family(n: int, edge: int, a: float) -> FiniteMetric:
    if n < 3:
        raise ParameterOutOfRange(f"rho family needs n >= 3, got {n}")
    if not 0 < a <= 2:
        raise ParameterOutOfRange(f"a must lie in (0, 2], got {a!r}")
    return validate_metric(rho_table(n, edge, a))


def line_witness(n: int, m: int) -> FiniteMetric:
    """Metric of the subset {1, ..., n-1, n+m+1} of the real line."""
    if n < 3 or m < 1:
        raise ParameterOutOfRange(f"line witness needs n >= 3 and m >= 1, got n={n}, m={m}")
    coords = np.array([*range(1, n), n + m + 1], dtype=float)
    return FiniteMetric(n, np.abs(coords[:, None] - coords[None, :]))


def gh_pair(n: int, e1: tuple[int, int], e2: tuple[int, int]) -> tuple[FiniteMetric, FiniteMetric]:
    """Two isometric, non-proportional metrics: 1/2 on one pair, 1 elsewhere."""
    e1 = tuple(sorted(e1))
    e2 = tuple(sorted(e2))
    if n < 3:
        raise ParameterOutOfRange(f"need n >= 3, got {n}")
    for e in (e1, e2):
        if len(set(e)) != 2 or not all(0 <= v < n for v in e):
            raise ParameterOutOfRange(f"bad pair {e} for n={n}")
    if e1 == e2:
        raise ParameterOutOfRange("the two pairs must differ")
    return (
        validate_metric(rho_table(n, pair_index(n, *e1), 0.5)),
        validate_metric(rho_table(n, pair_index(n, *e2), 0.5)),
    )


def rho_distance_closed_form(edge: int, a: float, edge2: int, a2: float) -> float:
    """Distance between rho(edge, a) and rho(edge2, a2) for a, a2 in (0, 2]."""
    for v in (a, a2):
        if not 0 < v <= 2:
            raise ParameterOutOfRange(f"a must lie in (0, 2], got {v!r}")
    la, lb = math.log(a), math.log(a2)
    if edge == edge2:
        return abs(la - lb)
    if (a - 1) * (a2 - 1) >= 0:
        return abs(la) + abs(lb)
    return max(abs(la), abs(lb))
