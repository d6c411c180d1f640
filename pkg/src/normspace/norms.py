"""Norms on R^k, their distances modulo dilation, and sampled estimates.

The distance between the classes of two norms a, b is

    log(M / m),   m * a(x) <= b(x) <= M * a(x) for all x != 0,

i.e. the spread of log(b/a) over nonzero vectors. Since log(b/a) is
constant along rays, it is enough to look at one point per ray, which is
what a :class:`SampleDomain` provides.

Norms are described by small immutable spec objects that can be composed
(sums, positive multiples, precomposition with an invertible matrix) and
serialized to JSON.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
import scipy.linalg

from .diamnorm import QuotientFunction, real_function, kuratowski_section
from .errors import (
    DimensionMismatch,
    EmptyDomain,
    ParameterOutOfRange,
    SingularMatrix,
    ZeroCenter,
)

INF = math.inf
SINGULAR_RTOL = 1e-12
SPHERE_RTOL = 1e-12
DEFAULT_REFINE_ITERS = 64
STEP_FLOOR = 1e-10


def _inv(p: float) -> float:
    return 0.0 if p == INF else 1.0 / p


def _as_points(x, dim: Optional[int]) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        raise DimensionMismatch("expected a vector, got a scalar")
    if dim is not None and x.shape[-1] != dim:
        raise DimensionMismatch(f"norm acts on R^{dim}, got vectors of length {x.shape[-1]}")
    return x


class NormSpec:
    """Base class for norm descriptions.

    ``dim`` is the dimension the spec is tied to, or None when it works in
    every dimension (p-norms, mixtures, ...).
    """

    dim: Optional[int] = None

    def evaluate(self, x) -> np.ndarray:
        """Norm of each row of ``x`` (shape (..., k))."""
        x = _as_points(x, self.dim)
        return self._evaluate(x)

    def __call__(self, x):
        out = self.evaluate(x)
        return float(out) if np.ndim(out) == 0 else out

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


def _p_json(p: float):
    return "inf" if p == INF else p


def _p_from_json(p) -> float:
    if isinstance(p, str):
        if p.lower() in ("inf", "infinity"):
            return INF
        raise ParameterOutOfRange(f"p must be a number or 'inf', got {p!r}")
    return float(p)


@dataclass(frozen=True)
class PNorm(NormSpec):
    p: float

    def __post_init__(self):
        if not (self.p >= 1):
            raise ParameterOutOfRange(f"p must lie in [1, inf], got {self.p!r}")

    def _evaluate(self, x):
        if self.p == 1:
            return np.abs(x).sum(axis=-1)
        if self.p == 2:
            return np.sqrt((x * x).sum(axis=-1))
        if self.p == INF:
            return np.abs(x).max(axis=-1)
        return np.linalg.norm(x, ord=self.p, axis=-1)

    def to_json(self):
        return {"kind": "pnorm", "p": _p_json(self.p)}


@dataclass(frozen=True)
class Perturbed(NormSpec):
    """||x||_p + q |x_axis|."""

    p: float
    q: float
    axis: int

    def __post_init__(self):
        if not (self.p >= 1):
            raise ParameterOutOfRange(f"p must lie in [1, inf], got {self.p!r}")
        if not (self.q >= 0) or self.q == INF:
            raise ParameterOutOfRange(f"q must be finite and >= 0, got {self.q!r}")
        if self.axis < 0:
            raise ParameterOutOfRange(f"axis must be >= 0, got {self.axis}")

    def _evaluate(self, x):
        if self.axis >= x.shape[-1]:
            raise DimensionMismatch(f"axis {self.axis} out of range for R^{x.shape[-1]}")
        return PNorm(self.p)._evaluate(x) + self.q * np.abs(x[..., self.axis])

    def to_json(self):
        return {"kind": "perturbed", "p": _p_json(self.p), "q": self.q, "axis": self.axis}


@dataclass(frozen=True, eq=False)
class WeightedAbs(NormSpec):
    """sum_i w_i |<a_i, x>| for functionals a_i spanning R^k."""

    weights: np.ndarray
    functionals: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        a = np.array(self.functionals, dtype=float)
        if a.ndim != 2 or a.shape[0] != w.shape[0]:
            raise DimensionMismatch("need one functional vector per weight")
        if not np.all(w > 0):
            raise ParameterOutOfRange("weights must be positive")
        if np.linalg.matrix_rank(a) != a.shape[1]:
            raise ParameterOutOfRange("functionals must span R^k")
        w.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "functionals", a)

    @property
    def dim(self):
        return self.functionals.shape[1]

    def _evaluate(self, x):
        return np.abs(x @ self.functionals.T) @ self.weights

    def to_json(self):
        return {
            "kind": "weighted_abs",
            "terms": [{"w": float(w), "a": a.tolist()} for w, a in zip(self.weights, self.functionals)],
        }


@dataclass(frozen=True, eq=False)
class Mixture(NormSpec):
    """sum_i mass_i ||x||_{p_i}: a finitely supported measure over p."""

    ps: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        ps = np.array(self.ps, dtype=float).reshape(-1)
        ms = np.array(self.masses, dtype=float).reshape(-1)
        if ps.shape != ms.shape or ps.size == 0:
            raise ParameterOutOfRange("mixture needs matching, nonempty atoms and masses")
        if not np.all((ps >= 1) & np.isfinite(ps)):
            raise ParameterOutOfRange("mixture atoms must lie in [1, inf)")
        if not np.all(ms > 0):
            raise ParameterOutOfRange("mixture masses must be positive")
        ps.setflags(write=False)
        ms.setflags(write=False)
        object.__setattr__(self, "ps", ps)
        object.__setattr__(self, "masses", ms)

    def _evaluate(self, x):
        total = np.zeros(x.shape[:-1])
        for p, m in zip(self.ps, self.masses):
            total = total + m * PNorm(float(p))._evaluate(x)
        return total

    def to_json(self):
        return {"kind": "mixture", "atoms": [{"p": float(p), "m": float(m)} for p, m in zip(self.ps, self.masses)]}


def _check_invertible(a: np.ndarray) -> None:
    """Pivoted-LU determinant guard with relative threshold 1e-12."""
    scale = np.abs(a).max() if a.size else 0.0
    if scale == 0:
        raise SingularMatrix("matrix is zero")
    with warnings.catch_warnings():
        # exact zero pivots are reported below as SingularMatrix
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, _ = scipy.linalg.lu_factor(a, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if pivots.min() <= SINGULAR_RTOL * scale:
        raise SingularMatrix(f"matrix is numerically singular (smallest pivot {pivots.min():.3g})")


@dataclass(frozen=True, eq=False)
class Precomposed(NormSpec):
    """x -> inner(A x) for invertible A."""

    matrix: np.ndarray
    inner: NormSpec

    def __post_init__(self):
        a = np.array(self.matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch(f"matrix must be square, got shape {a.shape}")
        if self.inner.dim is not None and self.inner.dim != a.shape[0]:
            raise DimensionMismatch("matrix size does not match the inner norm")
        _check_invertible(a)
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def _evaluate(self, x):
        return self.inner.evaluate(x @ self.matrix.T)

    def to_json(self):
        return {"kind": "precomposed", "A": self.matrix.tolist(), "inner": self.inner.to_json()}


@dataclass(frozen=True)
class Scaled(NormSpec):
    c: float
    inner: NormSpec

    def __post_init__(self):
        if not (0 < self.c < INF):
            raise ParameterOutOfRange(f"scale must be positive and finite, got {self.c!r}")

    @property
    def dim(self):
        return self.inner.dim

    def _evaluate(self, x):
        return self.c * self.inner.evaluate(x)

    def to_json(self):
        return {"kind": "scaled", "c": self.c, "inner": self.inner.to_json()}


@dataclass(frozen=True)
class Sum(NormSpec):
    left: NormSpec
    right: NormSpec

    def __post_init__(self):
        dl, dr = self.left.dim, self.right.dim
        if dl is not None and dr is not None and dl != dr:
            raise DimensionMismatch(f"summands act on R^{dl} and R^{dr}")

    @property
    def dim(self):
        return self.left.dim if self.left.dim is not None else self.right.dim

    def _evaluate(self, x):
        return self.left.evaluate(x) + self.right.evaluate(x)

    def to_json(self):
        return {"kind": "sum", "left": self.left.to_json(), "right": self.right.to_json()}


def spec_from_json(obj: dict) -> NormSpec:
    kind = obj.get("kind")
    if kind == "pnorm":
        return PNorm(_p_from_json(obj["p"]))
    if kind == "perturbed":
        return Perturbed(_p_from_json(obj["p"]), float(obj["q"]), int(obj["axis"]))
    if kind == "weighted_abs":
        terms = obj["terms"]
        return WeightedAbs([t["w"] for t in terms], [t["a"] for t in terms])
    if kind == "mixture":
        atoms = obj["atoms"]
        return Mixture([_p_from_json(a["p"]) for a in atoms], [a["m"] for a in atoms])
    if kind == "precomposed":
        return Precomposed(obj["A"], spec_from_json(obj["inner"]))
    if kind == "scaled":
        return Scaled(float(obj["c"]), spec_from_json(obj["inner"]))
    if kind == "sum":
        return Sum(spec_from_json(obj["left"]), spec_from_json(obj["right"]))
    raise ParameterOutOfRange(f"unknown norm kind {kind!r}")


def evaluate(spec: NormSpec, x):
    """Norm value at a vector (float) or at each row of a 2-D array."""
    return spec(x)


def strip_scale(spec: NormSpec) -> tuple[float, NormSpec]:
    c = 1.0
    while isinstance(spec, Scaled):
        c *= spec.c
        spec = spec.inner
    return c, spec


# ------------------------------------------------------------- axioms


@dataclass
class AxiomReport:
    trials: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_norm_axioms(spec: NormSpec, trials: int = 10_000, seed: int = 0, k: Optional[int] = None) -> AxiomReport:
    """Randomized positivity, homogeneity and sub-additivity check."""
    k = spec.dim if spec.dim is not None else (k or 3)
    rng = np.random.Generator(np.random.MT19937(seed))
    x = rng.standard_normal((trials, k)) * rng.lognormal(0, 2, (trials, 1))
    y = rng.standard_normal((trials, k)) * rng.lognormal(0, 2, (trials, 1))
    t = rng.lognormal(0, 2, trials)
    report = AxiomReport(trials)

    nx, ny, nxy = spec.evaluate(x), spec.evaluate(y), spec.evaluate(x + y)
    ntx = spec.evaluate(x * t[:, None])
    zero = float(spec.evaluate(np.zeros(k)))
    if zero != 0.0:
        report.failures.append({"axiom": "positivity", "x": [0.0] * k, "value": zero})
    for i in np.flatnonzero(~(nx > 0))[:5]:
        report.failures.append({"axiom": "positivity", "x": x[i].tolist(), "value": float(nx[i])})
    bad = np.abs(ntx - t * nx) > 1e-10 * t * nx
    for i in np.flatnonzero(bad)[:5]:
        report.failures.append(
            {"axiom": "homogeneity", "x": x[i].tolist(), "t": float(t[i]), "lhs": float(ntx[i]), "rhs": float(t[i] * nx[i])}
        )
    bad = nxy > (nx + ny) * (1 + 1e-12)
    for i in np.flatnonzero(bad)[:5]:
        report.failures.append(
            {"axiom": "subadditivity", "x": x[i].tolist(), "y": y[i].tolist(), "lhs": float(nxy[i]), "rhs": float(nx[i] + ny[i])}
        )
    return report


# ------------------------------------------------------------- closed forms


def distance_closed_form(a: NormSpec, b: NormSpec, k: int) -> Optional[float]:
    """Exact class distance for the pairs where one is known, else None.

    Covered: two p-norms; two perturbed norms with a shared p; a mixture of
    p-norms against a q-norm with every atom below q. Positive multiples are
    ignored. Every pair of norms on R^1 is proportional.
    """
    _, a = strip_scale(a)
    _, b = strip_scale(b)
    if k == 1:
        return 0.0
    logk = math.log(k)
    if isinstance(a, PNorm) and isinstance(b, PNorm):
        return abs(_inv(a.p) - _inv(b.p)) * logk
    if isinstance(a, Perturbed) and isinstance(b, Perturbed) and a.p == b.p:
        if a.axis >= k or b.axis >= k:
            return None
        if a.axis == b.axis:
            return abs(math.log1p(b.q) - math.log1p(a.q))
        return math.log1p(a.q) + math.log1p(b.q)
    if isinstance(a, PNorm) and isinstance(b, Mixture):
        a, b = b, a
    if isinstance(a, Mixture) and isinstance(b, PNorm):
        if a.ps.max() >= b.p:
            return None
        numer = float(np.sum(a.masses * np.power(float(k), 1.0 / a.ps)))
        return math.log(numer) - math.log(k ** _inv(b.p) * float(a.masses.sum()))
    return None


# ------------------------------------------------------------- sample domains


@dataclass(frozen=True)
class NormSphere:
    reference: NormSpec
    radius: float = 1.0

    def __post_init__(self):
        if not (self.radius > 0):
            raise ParameterOutOfRange(f"radius must be positive, got {self.radius!r}")

    def project(self, y: np.ndarray) -> np.ndarray:
        return self.radius * y / self.reference.evaluate(y)[..., None]

    def residual(self, x: np.ndarray) -> np.ndarray:
        return np.abs(self.reference.evaluate(x) - self.radius) / self.radius

    def to_json(self):
        return {"type": "norm_sphere", "reference": self.reference.to_json(), "radius": self.radius}


def _offcenter_alpha(t: np.ndarray) -> np.ndarray:
    # positive root of a^2 - 2 t a - 1 = 0, written to avoid cancellation
    s = np.sqrt(1.0 + t * t)
    return np.where(t >= 0, s + t, 1.0 / (s - t))


@dataclass(frozen=True, eq=False)
class OffCenterSphere:
    """{x : ||x - y||_2^2 = 1 + ||y||_2^2} for a nonzero center y."""

    center: np.ndarray

    def __post_init__(self):
        c = np.array(self.center, dtype=float).reshape(-1)
        if not np.any(c != 0):
            raise ZeroCenter("the off-center sphere needs a nonzero center")
        c.setflags(write=False)
        object.__setattr__(self, "center", c)

    def project(self, y: np.ndarray) -> np.ndarray:
        v = y / np.sqrt((y * y).sum(axis=-1))[..., None]
        return _offcenter_alpha(v @ self.center)[..., None] * v

    def residual(self, x: np.ndarray) -> np.ndarray:
        target = 1.0 + self.center @ self.center
        d = x - self.center
        return np.abs((d * d).sum(axis=-1) - target) / target

    def to_json(self):
        return {"type": "off_center_sphere", "center": self.center.tolist()}


@dataclass(frozen=True, eq=False)
class Pullback:
    """Image of another sphere under x -> A^{-1} x."""

    matrix: np.ndarray
    base: Union[NormSphere, OffCenterSphere, "Pullback"]

    def project(self, y):
        return np.linalg.solve(self.matrix, self.base.project(y @ self.matrix.T).T).T

    def residual(self, x):
        return self.base.residual(x @ self.matrix.T)

    def to_json(self):
        return {"type": "pullback", "A": np.asarray(self.matrix).tolist(), "base": self.base.to_json()}


SphereKind = Union[NormSphere, OffCenterSphere, Pullback]


def kind_from_json(obj: dict) -> SphereKind:
    t = obj["type"]
    if t == "norm_sphere":
        return NormSphere(spec_from_json(obj["reference"]), float(obj["radius"]))
    if t == "off_center_sphere":
        return OffCenterSphere(obj["center"])
    if t == "pullback":
        return Pullback(np.array(obj["A"], dtype=float), kind_from_json(obj["base"]))
    raise ParameterOutOfRange(f"unknown domain type {t!r}")


def canonical_directions(k: int) -> np.ndarray:
    """+e_i, -e_i for every axis, then the all-ones direction."""
    eye = np.eye(k)
    rows = [v for i in range(k) for v in (eye[i], -eye[i])]
    rows.append(np.ones(k))
    return np.array(rows)


def _unique_rays(directions: np.ndarray) -> np.ndarray:
    unit = directions / np.linalg.norm(directions, axis=1, keepdims=True)
    seen = set()
    keep = []
    for i, u in enumerate(np.round(unit, 12)):
        key = tuple((u + 0.0).tolist())  # +0.0 folds -0.0 into 0.0
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return directions[keep]


@dataclass(frozen=True, eq=False)
class SampleDomain:
    """Finite set of nonzero points, one per ray, on a sphere around 0."""

    k: int
    kind: SphereKind
    points: np.ndarray
    seed: int = 0
    count: int = 0

    def __post_init__(self):
        self.points.setflags(write=False)

    def __len__(self):
        return len(self.points)

    def project(self, y) -> np.ndarray:
        return self.kind.project(np.asarray(y, dtype=float))

    def sphere_residual(self) -> float:
        return float(self.kind.residual(self.points).max())

    def with_points(self, directions) -> "SampleDomain":
        """A larger domain: the given directions are moved onto the sphere
        and appended (rays already present are skipped)."""
        extra = np.atleast_2d(np.asarray(directions, dtype=float))
        merged = _unique_rays(np.vstack([self.points, extra]))
        new = merged[len(self.points):]
        pts = np.vstack([self.points, self.project(new)]) if len(new) else self.points.copy()
        return SampleDomain(self.k, self.kind, pts, self.seed, self.count)

    def pullback(self, matrix) -> "SampleDomain":
        a = np.asarray(matrix, dtype=float)
        _check_invertible(a)
        pts = np.linalg.solve(a, self.points.T).T
        return SampleDomain(self.k, Pullback(a, self.kind), pts, self.seed, self.count)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "kind": self.kind.to_json(),
            "points": self.points.tolist(),
            "seed": self.seed,
            "count": self.count,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SampleDomain":
        pts = np.array(obj["points"], dtype=float).reshape(-1, int(obj["k"]))
        return cls(int(obj["k"]), kind_from_json(obj["kind"]), pts, int(obj.get("seed", 0)), int(obj.get("count", 0)))


def make_rng(seed: int) -> np.random.Generator:
    """Mersenne Twister (MT19937) generator; the only RNG the package uses."""
    return np.random.Generator(np.random.MT19937(int(seed)))


def sample_domain(kind: SphereKind, count: int, seed: int, k: int, canonical: bool = True) -> SampleDomain:
    """Draw ``count`` spherically symmetric directions and put them on the sphere.

    Directions are normalized standard Gaussian draws from MT19937(seed);
    the draws for a larger ``count`` extend those for a smaller one.
    With ``canonical`` the +-basis and all-ones directions come first.
    """
    if count < 0:
        raise ParameterOutOfRange(f"count must be >= 0, got {count}")
    if k < 1:
        raise ParameterOutOfRange(f"k must be >= 1, got {k}")
    if isinstance(kind, OffCenterSphere) and kind.center.shape != (k,):
        raise DimensionMismatch(f"center has length {kind.center.shape[0]}, expected {k}")
    if isinstance(kind, NormSphere) and kind.reference.dim not in (None, k):
        raise DimensionMismatch(f"reference norm acts on R^{kind.reference.dim}, expected {k}")
    rng = make_rng(seed)
    random_dirs = rng.standard_normal((count, k))
    parts = [canonical_directions(k)] if canonical else []
    parts.append(random_dirs)
    dirs = _unique_rays(np.vstack(parts))
    return SampleDomain(k, kind, kind.project(dirs), int(seed), int(count))


# ------------------------------------------------------------- estimation


@dataclass
class NormDistanceEstimate:
    lower_bound: float
    refined: float
    arg_max: np.ndarray
    arg_min: np.ndarray
    samples_used: int
    seed: int

    def to_json(self) -> dict:
        return {
            "lower_bound": self.lower_bound,
            "refined": self.refined,
            "arg_max": self.arg_max.tolist(),
            "arg_min": self.arg_min.tolist(),
            "samples_used": self.samples_used,
            "seed": self.seed,
        }


def _evaluate_chunked(norm, points: np.ndarray, threads: int) -> np.ndarray:
    if threads <= 1 or len(points) < 2 * threads:
        return norm.evaluate(points)
    chunks = np.array_split(points, threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return np.concatenate(list(pool.map(norm.evaluate, chunks)))


def _log_ratio(a, b, points: np.ndarray, threads: int = 1) -> np.ndarray:
    return np.log(_evaluate_chunked(b, points, threads)) - np.log(_evaluate_chunked(a, points, threads))


def _climb(objective, project, start: np.ndarray, value: float, iters: int, seed: int):
    """Maximize ``objective`` by coordinate moves, staying on the sphere.

    Each iteration tries +-step along every axis (in a seeded random order,
    which fixes tie-breaking) and takes the best strict improvement; when
    nothing improves the step is halved. Stops at ``iters`` iterations or
    once the step drops below 1e-10.
    """
    rng = make_rng(seed)
    x = start
    k = x.shape[0]
    step = 0.25 * float(np.abs(x).max())
    eye = np.eye(k)
    for _ in range(iters):
        if step < STEP_FLOOR:
            break
        order = rng.permutation(k)
        moves = np.concatenate([eye[order], -eye[order]]) * step
        cand = x[None, :] + moves
        cand = cand[np.any(cand != 0, axis=1)]
        cand = project(cand)
        vals = objective(cand)
        best = int(np.argmax(vals))
        if vals[best] > value:
            x, value = cand[best], float(vals[best])
        else:
            step *= 0.5
    return x, value


def estimate_distance(
    a: NormSpec,
    b: NormSpec,
    domain: SampleDomain,
    refine_iters: int = DEFAULT_REFINE_ITERS,
    threads: int = 1,
) -> NormDistanceEstimate:
    """Lower bounds for the class distance of ``a`` and ``b``.

    ``lower_bound`` is the spread of log(b/a) over the domain points;
    ``refined`` additionally hill-climbs from the extreme points. Both are
    values of log(b/a) at genuine points, so neither exceeds the true
    distance. Positive multiples are stripped first since they do not
    change the class.
    """
    if len(domain) == 0:
        raise EmptyDomain("sample domain has no points")
    for n in (a, b):
        if n.dim is not None and n.dim != domain.k:
            raise DimensionMismatch(f"norm acts on R^{n.dim}, domain lives in R^{domain.k}")
    if isinstance(a, NormSpec):
        a = strip_scale(a)[1]
    if isinstance(b, NormSpec):
        b = strip_scale(b)[1]
    pts = domain.points
    f = _log_ratio(a, b, pts, threads)
    i_max, i_min = int(np.argmax(f)), int(np.argmin(f))
    hi, lo = float(f[i_max]), float(f[i_min])

    def up(x):
        return _log_ratio(a, b, x)

    def down(x):
        return _log_ratio(b, a, x)

    x_hi, v_hi = _climb(up, domain.project, pts[i_max].copy(), hi, refine_iters, domain.seed)
    x_lo, v_lo = _climb(down, domain.project, pts[i_min].copy(), -lo, refine_iters, domain.seed)
    return NormDistanceEstimate(
        lower_bound=hi - lo,
        refined=v_hi + v_lo,
        arg_max=x_hi,
        arg_min=x_lo,
        samples_used=len(pts),
        seed=domain.seed,
    )


def log_restriction(spec: NormSpec, domain: SampleDomain) -> QuotientFunction:
    """The class of x -> log spec(x) on the domain points, anchored at point 0."""
    if spec.dim is not None and spec.dim != domain.k:
        raise DimensionMismatch(f"norm acts on R^{spec.dim}, domain lives in R^{domain.k}")
    values = np.log(spec.evaluate(domain.points))
    return kuratowski_section(real_function(values), 0)


@dataclass
class PrecomposeReport:
    original: float
    precomposed: float

    @property
    def difference(self) -> float:
        return abs(self.original - self.precomposed)

    @property
    def ok(self) -> bool:
        return self.difference <= 1e-12 * max(1.0, abs(self.original))


def precompose_invariance_check(a: NormSpec, b: NormSpec, matrix, domain: SampleDomain) -> PrecomposeReport:
    """Compare d(a, b) on the domain with d(a o A, b o A) on A^{-1}(domain)."""
    m = np.asarray(matrix, dtype=float)
    pulled = domain.pullback(m)
    original = estimate_distance(a, b, domain, refine_iters=0).lower_bound
    moved = estimate_distance(Precomposed(m, a), Precomposed(m, b), pulled, refine_iters=0).lower_bound
    return PrecomposeReport(original, moved)


class SampledDual:
    """Dual norm y -> max_x <x, y> / N(x), the max taken over a sample domain.

    Always a lower bound of the true dual norm.
    """

    def __init__(self, inner: NormSpec, domain: SampleDomain, chunk: int = 512):
        if inner.dim is not None and inner.dim != domain.k:
            raise DimensionMismatch(f"norm acts on R^{inner.dim}, domain lives in R^{domain.k}")
        self.inner = inner
        self.dim = domain.k
        self._x = domain.points / inner.evaluate(domain.points)[:, None]
        self._chunk = chunk

    def evaluate(self, y) -> np.ndarray:
        y = _as_points(y, self.dim)
        flat = y.reshape(-1, self.dim)
        out = np.empty(len(flat))
        for s in range(0, len(flat), self._chunk):
            out[s:s + self._chunk] = (flat[s:s + self._chunk] @ self._x.T).max(axis=1)
        return out.reshape(y.shape[:-1])

    def __call__(self, y):
        out = self.evaluate(y)
        return float(out) if np.ndim(out) == 0 else out


def dual_norm_eval(spec: NormSpec, y, domain: SampleDomain) -> float:
    return float(SampledDual(spec, domain).evaluate(np.asarray(y, dtype=float)))
