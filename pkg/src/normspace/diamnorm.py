"""Function spaces over a finite domain with the diameter pseudometric.

A function is a list of labels plus one carrier value per label. The carrier
is an abelian semigroup with a translation-invariant metric. Two carriers
ship built in: the reals and the lattice Z^3 with the l1 distance.

The pseudometric between f and g is

    d(f, g) = max over label pairs (x, x') of dist(f(x) + g(x'), f(x') + g(x)),

and for real values it equals the diameter of the image of f - g.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Optional, Sequence

import numpy as np

from .errors import (
    AnchorNotInDomain,
    CarrierMismatch,
    DegenerateSample,
    DimensionMismatch,
    DomainMismatch,
)


@dataclass(frozen=True)
class Carrier:
    """An abelian metric semigroup.

    ``sample(rng)`` draws a random element and is used by property checks.
    ``sub`` is set only for groups.
    """

    name: str
    add: Callable[[Any, Any], Any]
    dist: Callable[[Any, Any], float]
    sample: Callable[[np.random.Generator], Any]
    sub: Optional[Callable[[Any, Any], Any]] = None

    @property
    def is_group(self) -> bool:
        return self.sub is not None


REALS = Carrier(
    name="reals",
    add=lambda a, b: a + b,
    dist=lambda a, b: abs(a - b),
    sample=lambda rng: float(rng.uniform(-10.0, 10.0)),
    sub=lambda a, b: a - b,
)

Z3_L1 = Carrier(
    name="Z3_l1",
    add=lambda a, b: tuple(x + y for x, y in zip(a, b)),
    dist=lambda a, b: float(sum(abs(x - y) for x, y in zip(a, b))),
    sample=lambda rng: tuple(int(v) for v in rng.integers(-20, 21, size=3)),
    sub=lambda a, b: tuple(x - y for x, y in zip(a, b)),
)

CARRIERS = {c.name: c for c in (REALS, Z3_L1)}


def register_carrier(carrier: Carrier) -> None:
    CARRIERS[carrier.name] = carrier


def translation_defect(carrier: Carrier, x, y, z) -> float:
    """|dist(x+z, y+z) - dist(x, y)|; zero for a valid carrier."""
    return abs(carrier.dist(carrier.add(x, z), carrier.add(y, z)) - carrier.dist(x, y))


@dataclass(frozen=True)
class BoundedFunction:
    labels: tuple
    values: tuple
    carrier: Carrier = field(default=REALS, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.labels) < 2:
            raise DomainMismatch("a domain needs at least two labels")
        if len(set(self.labels)) != len(self.labels):
            raise DomainMismatch("labels must be distinct")
        if len(self.values) != len(self.labels):
            raise DimensionMismatch(
                f"{len(self.labels)} labels but {len(self.values)} values"
            )

    def __call__(self, label: Hashable):
        return self.values[self.labels.index(label)]

    def __add__(self, other: "BoundedFunction") -> "BoundedFunction":
        _check_compatible(self, other)
        add = self.carrier.add
        return BoundedFunction(
            self.labels, [add(a, b) for a, b in zip(self.values, other.values)], self.carrier
        )

    def __sub__(self, other: "BoundedFunction") -> "BoundedFunction":
        _check_compatible(self, other)
        if not self.carrier.is_group:
            raise CarrierMismatch(f"carrier {self.carrier.name} has no subtraction")
        sub = self.carrier.sub
        return BoundedFunction(
            self.labels, [sub(a, b) for a, b in zip(self.values, other.values)], self.carrier
        )

    def shift(self, m) -> "BoundedFunction":
        """Pointwise m + f."""
        add = self.carrier.add
        return BoundedFunction(self.labels, [add(m, v) for v in self.values], self.carrier)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


def real_function(values: Sequence[float], labels: Optional[Sequence] = None) -> BoundedFunction:
    if labels is None:
        labels = range(len(values))
    return BoundedFunction(tuple(labels), tuple(float(v) for v in values), REALS)


def _check_compatible(f: BoundedFunction, g: BoundedFunction):
    if f.labels != g.labels:
        raise DomainMismatch("functions are defined on different domains")
    if f.carrier.name != g.carrier.name:
        raise CarrierMismatch(f"carriers differ: {f.carrier.name} vs {g.carrier.name}")


def pair_pseudometric(f: BoundedFunction, g: BoundedFunction) -> float:
    _check_compatible(f, g)
    if f.carrier is REALS:
        a, b = f.as_array(), g.as_array()
        return float(np.abs((a[:, None] + b[None, :]) - (a[None, :] + b[:, None])).max())
    add, dist = f.carrier.add, f.carrier.dist
    best = 0.0
    for i, (fx, gx) in enumerate(zip(f.values, g.values)):
        for fy, gy in zip(f.values[i + 1:], g.values[i + 1:]):
            best = max(best, dist(add(fx, gy), add(fy, gx)))
    return best


def diameter_seminorm(f: BoundedFunction) -> float:
    if f.carrier is REALS:
        v = f.as_array()
        return float(v.max() - v.min())
    dist = f.carrier.dist
    return max(dist(a, b) for i, a in enumerate(f.values) for b in f.values[i + 1:])


def sup_distance(f: BoundedFunction, g: BoundedFunction) -> float:
    _check_compatible(f, g)
    dist = f.carrier.dist
    return max(dist(a, b) for a, b in zip(f.values, g.values))


@dataclass(frozen=True)
class QuotientFunction:
    """A real function modulo additive constants, stored as the representative
    vanishing at ``anchor``."""

    base: BoundedFunction
    anchor: Hashable

    @property
    def labels(self) -> tuple:
        return self.base.labels

    @property
    def values(self) -> np.ndarray:
        return self.base.as_array()

    @property
    def diameter(self) -> float:
        return diameter_seminorm(self.base)

    def distance(self, other: "QuotientFunction") -> float:
        return diameter_seminorm(self.base - other.base)

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "values": [float(v) for v in self.values],
            "anchor": self.anchor,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuotientFunction":
        f = real_function(obj["values"], obj["labels"])
        return kuratowski_section(f, obj["anchor"])


def kuratowski_section(f: BoundedFunction, anchor: Hashable) -> QuotientFunction:
    """Representative of [f] obtained by subtracting f(anchor) everywhere."""
    if anchor not in f.labels:
        raise AnchorNotInDomain(f"anchor {anchor!r} is not a label")
    if not f.carrier.is_group:
        raise CarrierMismatch(f"carrier {f.carrier.name} has no subtraction")
    m = f(anchor)
    sub = f.carrier.sub
    shifted = BoundedFunction(f.labels, [sub(v, m) for v in f.values], f.carrier)
    return QuotientFunction(shifted, anchor)


def hom_distance_lower_bound(
    eta: Callable,
    phi: Callable,
    samples: Sequence[tuple],
    source: Carrier = REALS,
    target: Carrier = REALS,
) -> float:
    """Sampled lower bound of the Hom-space distance between two morphisms.

    Takes the max over (m, m') in ``samples`` of

        dist(eta(m) + phi(m'), phi(m) + eta(m')) / dist(m, m').

    The true distance is a supremum over the whole carrier, so this never
    overestimates it.
    """
    best = 0.0
    for m, m2 in samples:
        denom = source.dist(m, m2)
        if not denom > 0:
            raise DegenerateSample(f"sample pair ({m!r}, {m2!r}) has zero distance")
        num = target.dist(target.add(eta(m), phi(m2)), target.add(phi(m), eta(m2)))
        best = max(best, num / denom)
    return best
