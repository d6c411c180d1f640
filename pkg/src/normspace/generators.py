"""Seeded random instances for property checks."""
from __future__ import annotations

import numpy as np

from .metric import FiniteMetric, validate_metric
from .norms import Mixture, NormSpec, Perturbed, PNorm, Precomposed, Scaled, Sum, WeightedAbs

P_CHOICES = (1.0, 1.5, 2.0, 3.0, np.inf)


def random_metric(n: int, rng: np.random.Generator) -> FiniteMetric:
    """Either a shortest-path closure of random weights or a metric with
    all distances in [1, 2] (which always satisfies the triangle inequality)."""
    if rng.random() < 0.5:
        w = rng.uniform(0.1, 10.0, (n, n))
        w = np.triu(w, 1)
        d = w + w.T
        for j in range(n):
            d = np.minimum(d, d[:, j:j + 1] + d[j:j + 1, :])
        np.fill_diagonal(d, 0.0)
    else:
        w = np.triu(rng.uniform(1.0, 2.0, (n, n)), 1)
        d = w + w.T
    return validate_metric(d)


def random_integer_metric(n: int, rng: np.random.Generator) -> FiniteMetric:
    """Shortest-path closure of integer weights: exact in floating point."""
    w = np.triu(rng.integers(1, 50, (n, n)).astype(float), 1)
    d = w + w.T
    for j in range(n):
        d = np.minimum(d, d[:, j:j + 1] + d[j:j + 1, :])
    np.fill_diagonal(d, 0.0)
    return validate_metric(d)


def random_euclidean_metric(n: int, dim: int, rng: np.random.Generator) -> FiniteMetric:
    pts = rng.standard_normal((n, dim))
    d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1))
    np.fill_diagonal(d, 0.0)
    return validate_metric(d)


def random_spec(k: int, rng: np.random.Generator, depth: int = 2) -> NormSpec:
    """A random constructible norm on R^k."""
    leaves = ["pnorm", "perturbed", "weighted", "mixture"]
    kinds = leaves + (["precomposed", "scaled", "sum"] if depth > 0 else [])
    kind = kinds[rng.integers(len(kinds))]
    if kind == "pnorm":
        return PNorm(float(P_CHOICES[rng.integers(len(P_CHOICES))]))
    if kind == "perturbed":
        return Perturbed(float(P_CHOICES[rng.integers(len(P_CHOICES))]), float(rng.uniform(0, 5)), int(rng.integers(k)))
    if kind == "weighted":
        m = k + int(rng.integers(3))
        while True:
            f = rng.standard_normal((m, k))
            if np.linalg.matrix_rank(f) == k:
                return WeightedAbs(rng.uniform(0.1, 3.0, m), f)
    if kind == "mixture":
        m = 1 + int(rng.integers(3))
        return Mixture(rng.uniform(1.0, 6.0, m), rng.uniform(0.1, 2.0, m))
    if kind == "precomposed":
        while True:
            a = rng.standard_normal((k, k))
            if abs(np.linalg.det(a)) > 0.1:
                return Precomposed(a, random_spec(k, rng, depth - 1))
    if kind == "scaled":
        return Scaled(float(rng.uniform(0.1, 10.0)), random_spec(k, rng, depth - 1))
    return Sum(random_spec(k, rng, depth - 1), random_spec(k, rng, depth - 1))


def signed_permutation(perm, signs) -> np.ndarray:
    """Matrix sending e_i to signs[i] * e_{perm[i]}."""
    k = len(perm)
    a = np.zeros((k, k))
    a[list(perm), range(k)] = signs
    return a
