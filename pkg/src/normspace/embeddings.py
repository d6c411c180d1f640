"""Embeddings of finite metric spaces.

* Frechet coordinates: distance profiles, isometric into sup-norm space.
* Log-coordinates of metrics on [n] (``PsiPoint``) and the padding map into
  R^N modulo constants with the diameter norm.
* The rescale / Frechet / pad / exp pipeline into the space of metrics on
  [n], reported with its distortion ratios.
* Schoenberg's Euclidean embeddability test with coordinate realization.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    BadBaseIndex,
    BadDimensions,
    DegenerateInput,
    MembershipViolation,
    TooManyPoints,
)
from .metric import FiniteMetric, log_distortion, pair_list, validate_metric

MEMBERSHIP_ATOL = 1e-12
LOG2 = math.log(2.0)


def frechet_embed(r: FiniteMetric) -> np.ndarray:
    """Row j is (d(x_1, x_j), ..., d(x_{n-1}, x_j)): point 0 is not a coordinate."""
    return r.matrix[:, 1:].copy()


def sup_distances(coords: np.ndarray) -> np.ndarray:
    """Matrix of pairwise sup-norm distances between rows."""
    return np.abs(coords[:, None, :] - coords[None, :, :]).max(axis=-1)


def diam(v) -> float:
    v = np.asarray(v, dtype=float)
    return float(v.max() - v.min())


def pad_to_quotient(v, q: int) -> np.ndarray:
    """Append q - p zeros to a length-p vector (p < q)."""
    v = np.asarray(v, dtype=float).reshape(-1)
    p = v.shape[0]
    if not 1 <= p < q:
        raise BadDimensions(f"need 1 <= p < q, got p={p}, q={q}")
    return np.concatenate([v, np.zeros(q - p)])


def padding_bounds(delta, q: int) -> tuple[float, float]:
    """(sup norm of delta, diameter of padded delta); always sup <= diam <= 2 sup."""
    delta = np.asarray(delta, dtype=float).reshape(-1)
    return float(np.abs(delta).max()), diam(pad_to_quotient(delta, q))


# ----------------------------------------------------------- log-coordinates


@dataclass(frozen=True, eq=False)
class PsiPoint:
    """Log pairwise distances of a (candidate) metric on [n], lexicographic pairs."""

    n: int
    psi: np.ndarray

    def __post_init__(self):
        psi = np.array(self.psi, dtype=float).reshape(-1)
        if psi.shape[0] != self.n * (self.n - 1) // 2:
            raise BadDimensions(f"n={self.n} needs {self.n * (self.n - 1) // 2} coordinates, got {psi.shape[0]}")
        psi.setflags(write=False)
        object.__setattr__(self, "psi", psi)

    def table(self) -> np.ndarray:
        t = np.zeros((self.n, self.n))
        iu = np.triu_indices(self.n, k=1)
        t[iu] = np.exp(self.psi)
        return t + t.T

    def membership_violation(self) -> Optional[tuple[int, int, int, float]]:
        """First (i, j, k, excess) with exp(psi_ij) + exp(psi_jk) < exp(psi_ik)
        beyond 1e-12, over all orderings of distinct triples; None if a member."""
        t = self.table()
        n = self.n
        excess = t[:, None, :] - (t[:, :, None] + t[None, :, :])
        idx = np.arange(n)
        excess[idx, idx, :] = -np.inf
        excess[:, idx, idx] = -np.inf
        excess[idx, :, idx] = -np.inf
        bad = np.argwhere(excess > MEMBERSHIP_ATOL)
        if len(bad) == 0:
            return None
        i, j, k = (int(v) for v in bad[0])
        return i, j, k, float(excess[i, j, k])

    def is_member(self) -> bool:
        return self.membership_violation() is None

    def to_json(self) -> dict:
        return {"n": self.n, "psi": self.psi.tolist()}


def metric_to_psi(r: FiniteMetric) -> PsiPoint:
    return PsiPoint(r.n, np.log(r.vector()))


def psi_to_metric(point: PsiPoint) -> FiniteMetric:
    bad = point.membership_violation()
    if bad is not None:
        raise MembershipViolation(*bad)
    return validate_metric(point.table())


def n_pairs(n: int) -> int:
    return n * (n - 1) // 2


@dataclass
class EmbeddingReport:
    n: int
    scale: float
    psi: list
    images: list
    pair_table: list
    min_ratio: float
    max_ratio: float
    membership_ok: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "scale": self.scale,
            "membership_ok": self.membership_ok,
            "min_ratio": self.min_ratio,
            "max_ratio": self.max_ratio,
            "psi": [p.psi.tolist() for p in self.psi],
            "images": [{"n": im.n, "d": [[i, j, float(im.matrix[i, j])] for i, j in im.pairs()]} for im in self.images],
            "pair_table": self.pair_table,
        }


def embed_into_Sn(x: FiniteMetric, n: int, rescale: bool = True) -> EmbeddingReport:
    """Send each point of ``x`` to a metric on [n].

    With ``rescale`` the metric is first scaled to diameter log 2. Each point
    then gets its Frechet coordinates, padded with zeros to C(n, 2) entries
    and read as log pairwise distances. The pair table compares the source
    distance with the log-distortion between image metrics (the diameter of
    the padded coordinate difference). Those ratios always lie in [1, 2];
    they are not all 1 in general.
    """
    m = x.n
    if n < 3:
        raise BadDimensions(f"target needs n >= 3, got {n}")
    if m < 2:
        raise DegenerateInput("need at least two points")
    big_n = n_pairs(n)
    if m > big_n:
        raise TooManyPoints(f"{m} points do not fit: C({n}, 2) = {big_n}")
    scale = LOG2 / x.diameter if rescale else 1.0
    src = x.matrix * scale
    coords = src[:, 1:]
    psi = [PsiPoint(n, pad_to_quotient(row, big_n)) for row in coords]
    membership_ok = all(p.is_member() for p in psi)
    images = [psi_to_metric(p) for p in psi] if membership_ok else []
    table = []
    ratios = []
    for i, j in pair_list(m):
        image_d = diam(psi[i].psi - psi[j].psi)
        if images:
            # same quantity computed on the metrics themselves
            image_d = log_distortion(images[i], images[j])
        ratio = image_d / src[i, j]
        ratios.append(ratio)
        table.append({"pair": [i, j], "source": float(src[i, j]), "image": float(image_d), "ratio": float(ratio)})
    return EmbeddingReport(
        n=n,
        scale=scale,
        psi=psi,
        images=images,
        pair_table=table,
        min_ratio=float(min(ratios)),
        max_ratio=float(max(ratios)),
        membership_ok=membership_ok,
    )


def isometry_counterexample() -> dict:
    """Equilateral triangle with side log 2 pushed through the pipeline with n = 3.

    The images of the second and third points differ by (-d, d, 0), whose
    diameter is 2d although the points are at distance d.
    """
    tri = validate_metric(LOG2 * (np.ones((3, 3)) - np.eye(3)))
    report = embed_into_Sn(tri, 3, rescale=False)
    y, z = report.psi[1].psi, report.psi[2].psi
    row = next(r for r in report.pair_table if r["pair"] == [1, 2])
    return {
        "source_distance": row["source"],
        "image_distance": row["image"],
        "ratio": row["ratio"],
        "difference": (y - z).tolist(),
        "membership_ok": report.membership_ok,
        "isometric": abs(row["ratio"] - 1.0) <= 1e-12,
    }


# ----------------------------------------------------------- Schoenberg


def schoenberg_matrix(r: FiniteMetric, base: int = 0) -> np.ndarray:
    """A[j, k] = d(b, x_j)^2 + d(b, x_k)^2 - d(x_j, x_k)^2 over the non-base points."""
    if not 0 <= base < r.n:
        raise BadBaseIndex(f"base must be in [0, {r.n}), got {base}")
    others = [i for i in range(r.n) if i != base]
    sq = r.matrix ** 2
    d0 = sq[base, others]
    return d0[:, None] + d0[None, :] - sq[np.ix_(others, others)]


@dataclass
class SchoenbergReport:
    A: np.ndarray
    eigenvalues: np.ndarray
    embeddable: bool
    rank: int
    coords: np.ndarray
    residual: float
    base: int = 0
    witness: Optional[np.ndarray] = field(default=None)

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "A": self.A.tolist(),
            "eigenvalues": self.eigenvalues.tolist(),
            "embeddable": self.embeddable,
            "rank": self.rank,
            "coords": self.coords.tolist(),
            "residual": self.residual,
            "witness": None if self.witness is None else self.witness.tolist(),
        }


def euclidean_embed(r: FiniteMetric, base: int = 0, tol: float = 1e-9) -> SchoenbergReport:
    """Schoenberg test: r embeds in R^rank iff its matrix A is PSD of that rank.

    ``tol`` is relative to the largest eigenvalue magnitude. Coordinates are
    rows of a square-root factor of A / 2 (the Gram matrix of the points
    seen from the base), with the base point at the origin. When A has a
    negative eigenvalue beyond tolerance, its eigenvector is kept as
    ``witness`` and the coordinates use the positive part only.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    a = schoenberg_matrix(r, base)
    evals, evecs = np.linalg.eigh(a)
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]
    thresh = tol * max(float(np.abs(evals).max()), np.finfo(float).tiny)
    embeddable = bool(evals[-1] >= -thresh)
    keep = evals > thresh
    rank = int(keep.sum())
    factor = evecs[:, keep] * np.sqrt(evals[keep] / 2.0)
    coords = np.zeros((r.n, rank))
    others = [i for i in range(r.n) if i != base]
    coords[others] = factor
    realized = np.sqrt(((coords[:, None, :] - coords[None, :, :]) ** 2).sum(axis=-1))
    residual = float(np.abs(realized - r.matrix).max())
    witness = None if embeddable else evecs[:, -1].copy()
    return SchoenbergReport(a, evals, embeddable, rank, coords, residual, base, witness)
