"""Reproducible verification suites.

Each suite takes a :class:`RunConfig`, runs seeded randomized cases and
returns a :class:`SuiteResult` listing every failing case with a witness.
"""
from __future__ import annotations

import itertools
import math
import time
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import diamnorm as dn
from .embeddings import (
    embed_into_Sn,
    euclidean_embed,
    frechet_embed,
    isometry_counterexample,
    n_pairs,
    sup_distances,
)
from .generators import (
    P_CHOICES,
    random_euclidean_metric,
    random_integer_metric,
    random_metric,
    random_spec,
    signed_permutation,
)
from .metric import (
    apex_extend,
    are_proportional,
    brute_force_isometry,
    discrete,
    gh_pair,
    line_witness,
    log_distortion,
    rho_distance_closed_form,
    rho_family,
    rho_table,
    validate_metric,
)
from .errors import TriangleViolation
from .norms import (
    Mixture,
    NormSphere,
    Perturbed,
    PNorm,
    Precomposed,
    WeightedAbs,
    distance_closed_form,
    estimate_distance,
    precompose_invariance_check,
    sample_domain,
)

EXACT = 1e-12
CLOSED_FORM_TOL = 1e-9


@dataclass
class RunConfig:
    seed: int = 0
    samples: int = 10_000
    refine_iters: int = 64
    tol: float = 1e-9
    threads: int = 1

    def __post_init__(self):
        if self.samples < 0:
            raise ValueError("samples must be >= 0")
        if self.refine_iters < 0:
            raise ValueError("refine-iters must be >= 0")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, **witness) -> bool:
        self.cases += 1
        if not ok:
            self.failures.append(witness)
        return ok

    def to_json(self) -> dict:
        # wall time is left out so reports are byte-identical across runs
        return {
            "suite": self.name,
            "cases": self.cases,
            "passed": self.passed,
            "failures": self.failures,
            "notes": self.notes,
        }


def suite_rng(seed: int, name: str) -> np.random.Generator:
    ss = np.random.SeedSequence([int(seed), zlib.crc32(name.encode())])
    return np.random.Generator(np.random.MT19937(ss))


def _p(p):
    return "inf" if p == math.inf else p


def _domain(k, cfg, count=None):
    n = cfg.samples if count is None else min(count, cfg.samples)
    return sample_domain(NormSphere(PNorm(2.0)), n, cfg.seed, k)


def suite_plp(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("plp")
    for k in (2, 3, 4, 8):
        dom = _domain(k, cfg)
        for p, q in itertools.product(P_CHOICES, repeat=2):
            est = estimate_distance(PNorm(p), PNorm(q), dom, cfg.refine_iters, cfg.threads)
            exact = abs((1 / p if p != math.inf else 0) - (1 / q if q != math.inf else 0)) * math.log(k)
            cf = distance_closed_form(PNorm(p), PNorm(q), k)
            res.check(
                abs(est.refined - exact) <= CLOSED_FORM_TOL
                and abs(cf - exact) <= EXACT
                and est.lower_bound <= est.refined + EXACT,
                p=_p(p), q=_p(q), k=k, refined=est.refined, lower_bound=est.lower_bound, expected=exact,
            )
    return res


def suite_pskp(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("pskp")
    rng = suite_rng(cfg.seed, "pskp")
    domains = {k: _domain(k, cfg, 500) for k in range(2, 6)}
    for _ in range(100):
        k = int(rng.integers(2, 6))
        p = float(P_CHOICES[rng.integers(len(P_CHOICES))])
        q, q2 = (float(v) for v in rng.uniform(0, 5, 2))
        j, j2 = (int(v) for v in rng.integers(0, k, 2))
        a, b = Perturbed(p, q, j), Perturbed(p, q2, j2)
        est = estimate_distance(a, b, domains[k], cfg.refine_iters, cfg.threads)
        if j == j2:
            exact = abs(math.log(1 + q2) - math.log(1 + q))
        else:
            exact = math.log(1 + q) + math.log(1 + q2)
        res.check(
            abs(est.refined - exact) <= CLOSED_FORM_TOL,
            p=_p(p), q=q, axis=j, q2=q2, axis2=j2, k=k, refined=est.refined, expected=exact,
        )
    return res


def suite_mixture(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("mixture")
    rng = suite_rng(cfg.seed, "mixture")
    domains = {k: _domain(k, cfg, 500) for k in range(2, 7)}
    for _ in range(50):
        k = int(rng.integers(2, 7))
        q = math.inf if rng.random() < 0.2 else float(rng.uniform(1.5, 8.0))
        hi = min(q, 10.0)
        atoms = rng.uniform(1.0, hi, int(rng.integers(1, 5)))
        atoms = atoms[atoms < q]
        if atoms.size == 0:
            atoms = np.array([1.0])
        masses = rng.uniform(0.1, 3.0, atoms.size)
        mu = Mixture(atoms, masses)
        est = estimate_distance(mu, PNorm(q), domains[k], cfg.refine_iters, cfg.threads)
        numer = float(np.sum(masses * float(k) ** (1.0 / atoms)))
        denom = (k ** (0.0 if q == math.inf else 1.0 / q)) * float(masses.sum())
        exact = math.log(numer / denom)
        cf = distance_closed_form(mu, PNorm(q), k)
        res.check(
            abs(est.refined - exact) <= CLOSED_FORM_TOL and abs(cf - exact) <= 1e-12,
            atoms=atoms.tolist(), masses=masses.tolist(), q=_p(q), k=k, refined=est.refined, expected=exact,
        )
    return res


def suite_rs1n(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("rs1n")
    rng = suite_rng(cfg.seed, "rs1n")
    specials = (1.0, 2.0, 0.5)
    for t in range(200):
        n = int(rng.integers(3, 7))
        npairs = n_pairs(n)
        e1, e2 = (int(v) for v in rng.integers(0, npairs, 2))
        if t % 10 == 0:
            e2 = e1
        a, a2 = (float(v) for v in rng.uniform(0, 2, 2))
        a, a2 = 2.0 - a, 2.0 - a2  # uniform on (0, 2]
        if t % 7 == 0:
            a = specials[t % 3]
        cf = rho_distance_closed_form(e1, a, e2, a2)
        ld = log_distortion(rho_family(n, e1, a), rho_family(n, e2, a2))
        res.check(abs(cf - ld) <= EXACT, n=n, edge=e1, a=a, edge2=e2, a2=a2, closed_form=cf, log_distortion=ld)
    for n in (3, 4, 5):
        for m in range(1, 21):
            ld = log_distortion(discrete(n), line_witness(n, m))
            res.check(abs(ld - math.log(n + m)) <= EXACT, n=n, m=m, log_distortion=ld)
    try:
        validate_metric(rho_table(3, 0, 3.0))
        res.check(False, case="a=3 accepted as a metric")
    except TriangleViolation:
        res.check(True)
    return res


def suite_apex(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("apex")
    rng = suite_rng(cfg.seed, "apex")
    for _ in range(200):
        n = int(rng.integers(3, 8))
        r1, r2 = random_metric(n, rng), random_metric(n, rng)
        before = log_distortion(r1, r2)
        after = log_distortion(apex_extend(r1), apex_extend(r2))
        res.check(abs(before - after) <= EXACT, n=n, before=before, after=after)
    return res


def _carrier_cases(carrier: dn.Carrier, rng, trials: int, res: SuiteResult):
    def func(size):
        return dn.BoundedFunction(tuple(range(size)), [carrier.sample(rng) for _ in range(size)], carrier)

    for _ in range(trials):
        size = int(rng.integers(2, 8))
        f, g, h = func(size), func(size), func(size)
        dfg, dgh, dfh = dn.pair_pseudometric(f, g), dn.pair_pseudometric(g, h), dn.pair_pseudometric(f, h)
        slack = 1e-12 * max(1.0, dfg + dgh)
        res.check(dfh <= dfg + dgh + slack, law="triangle", carrier=carrier.name, d_fh=dfh, d_fg=dfg, d_gh=dgh)
        x, y, z = (carrier.sample(rng) for _ in range(3))
        defect = dn.translation_defect(carrier, x, y, z)
        res.check(defect <= 1e-12 * max(1.0, carrier.dist(x, y)), law="translation", carrier=carrier.name, defect=defect)
        sup = dn.sup_distance(f, g)
        res.check(dfg <= 2 * sup + slack, law="quotient_lipschitz", carrier=carrier.name, d=dfg, sup=sup)
        anchor = f.labels[int(rng.integers(size))]
        sf, sg = dn.kuratowski_section(f, anchor), dn.kuratowski_section(g, anchor)
        sd = dn.sup_distance(sf.base, sg.base)
        res.check(sd <= dfg + slack, law="kuratowski", carrier=carrier.name, sup_sections=sd, d=dfg)
        m0 = carrier.sample(rng)
        shifted = dn.pair_pseudometric(f, f.shift(m0))
        res.check(shifted <= 1e-9, law="shift_zero", carrier=carrier.name, d=shifted)
        m1 = carrier.sample(rng)
        wd = dn.pair_pseudometric(f + g, f.shift(m0) + g.shift(m1))
        res.check(wd <= 1e-9, law="well_defined_sum", carrier=carrier.name, d=wd)


def suite_diamnorm(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("diamnorm")
    rng = suite_rng(cfg.seed, "diamnorm")
    for carrier in (dn.REALS, dn.Z3_L1):
        _carrier_cases(carrier, rng, 500, res)
    for _ in range(500):
        size = int(rng.integers(2, 8))
        f = dn.real_function(rng.uniform(-10, 10, size))
        g = dn.real_function(rng.uniform(-10, 10, size))
        d, nd = dn.pair_pseudometric(f, g), dn.diameter_seminorm(f - g)
        res.check(abs(d - nd) <= 1e-12 * max(1.0, d), law="diameter_identity", d=d, diam=nd)
    return res


def suite_schoenberg(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("schoenberg")
    rng = suite_rng(cfg.seed, "schoenberg")
    tri = euclidean_embed(discrete(3), tol=cfg.tol)
    res.check(
        tri.embeddable and tri.rank == 2 and np.allclose(tri.eigenvalues, [3, 1], atol=EXACT, rtol=0),
        case="equilateral", eigenvalues=tri.eigenvalues.tolist(), rank=tri.rank,
    )
    line = euclidean_embed(validate_metric([[0, 1, 2], [1, 0, 1], [2, 1, 0]]), tol=cfg.tol)
    res.check(line.embeddable and line.rank == 1, case="line", rank=line.rank)
    star = np.array([[0, 1, 1, 1], [1, 0, 2, 2], [1, 2, 0, 2], [1, 2, 2, 0]], dtype=float)
    st = euclidean_embed(validate_metric(star), tol=cfg.tol)
    res.check(
        (not st.embeddable) and abs(st.eigenvalues[-1] + 2) <= EXACT,
        case="star", eigenvalues=st.eigenvalues.tolist(),
    )
    for _ in range(50):
        n, dim = int(rng.integers(2, 8)), int(rng.integers(1, 4))
        r = random_euclidean_metric(n, dim, rng)
        rep = euclidean_embed(r, base=int(rng.integers(n)), tol=cfg.tol)
        res.check(
            rep.embeddable and rep.residual <= 1e-9 * r.diameter and rep.rank <= min(dim, n - 1),
            case="roundtrip", n=n, dim=dim, residual=rep.residual, rank=rep.rank,
        )
    for _ in range(50):
        n = int(rng.integers(2, 7))
        r = random_metric(n, rng) if rng.random() < 0.7 else random_euclidean_metric(n, 2, rng)
        verdicts = [euclidean_embed(r, base=b, tol=cfg.tol).embeddable for b in range(n)]
        res.check(len(set(verdicts)) == 1, case="base_independence", n=n, verdicts=verdicts)
    return res


def suite_isometries(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("isometries")
    rng = suite_rng(cfg.seed, "isometries")
    for k in (2, 3, 4):
        dom = _domain(k, cfg, 300)
        for _ in range(10):
            perm = rng.permutation(k)
            signs = rng.choice([-1.0, 1.0], k)
            a = signed_permutation(perm, signs)
            for p in P_CHOICES:
                d = estimate_distance(Precomposed(a, PNorm(p)), PNorm(p), dom, 0).lower_bound
                res.check(d <= EXACT, case="signed_permutation", k=k, perm=perm.tolist(), signs=signs.tolist(), p=_p(p), d=d)
    dom2 = _domain(2, cfg, 300)
    d = estimate_distance(Precomposed(np.diag([1.0, 2.0]), PNorm(math.inf)), PNorm(math.inf), dom2, cfg.refine_iters).refined
    res.check(abs(d - math.log(2)) <= CLOSED_FORM_TOL, case="diag12_linf", d=d)
    rot = np.array([[1.0, -1.0], [1.0, 1.0]]) / math.sqrt(2)
    d = estimate_distance(Precomposed(rot, PNorm(2.0)), PNorm(2.0), dom2, 0).lower_bound
    res.check(d <= EXACT, case="rotation_l2", d=d)
    for _ in range(20):
        k = int(rng.integers(2, 5))
        dom = _domain(k, cfg, 300)
        a, b = random_spec(k, rng), random_spec(k, rng)
        while True:
            m = rng.standard_normal((k, k))
            if abs(np.linalg.det(m)) > 0.1:
                break
        rep = precompose_invariance_check(a, b, m, dom)
        res.check(rep.ok, case="gl_invariance", k=k, original=rep.original, precomposed=rep.precomposed)
    for k in (2, 3, 4):
        dom = _domain(k, cfg, 300)
        weighted = WeightedAbs(np.arange(1.0, k + 1), np.eye(k))
        perm = np.roll(np.arange(k), 1)
        a = 1.7 * signed_permutation(perm, np.ones(k))
        d = estimate_distance(Precomposed(a, weighted), weighted, dom, cfg.refine_iters).refined
        res.check(d > 0.01, case="separating_weighted", k=k, d=d)
        # ||x||_1 + |x_1 + x_2|
        sep = WeightedAbs(np.ones(k + 1), np.vstack([np.eye(k)[0] + np.eye(k)[1], np.eye(k)]))
        signs = np.ones(k)
        signs[1] = -1.0
        a = 0.6 * signed_permutation(np.arange(k), signs)
        d = estimate_distance(Precomposed(a, sep), sep, dom, cfg.refine_iters).refined
        res.check(d > 0.01, case="separating_sign", k=k, d=d)
    r1, r2 = gh_pair(4, (0, 1), (2, 3))
    sigma = brute_force_isometry(r1, r2)
    ld = log_distortion(r1, r2)
    res.check(
        sigma is not None and abs(ld - math.log(4)) <= EXACT and are_proportional(r1, r2) is None,
        case="gh_pair", sigma=sigma, log_distortion=ld,
    )
    return res


def suite_pipeline(cfg: RunConfig) -> SuiteResult:
    res = SuiteResult("pipeline")
    rng = suite_rng(cfg.seed, "pipeline")
    for _ in range(100):
        n = int(rng.integers(3, 7))
        m = int(rng.integers(2, min(n_pairs(n), 9) + 1))
        x = random_metric(m, rng)
        rep = embed_into_Sn(x, n)
        res.check(
            rep.membership_ok and rep.min_ratio >= 1 - EXACT and rep.max_ratio <= 2 + EXACT,
            n=n, m=m, membership_ok=rep.membership_ok, min_ratio=rep.min_ratio, max_ratio=rep.max_ratio,
        )
        coords = frechet_embed(x)
        err = float(np.abs(sup_distances(coords) - x.matrix).max())
        res.check(err <= EXACT * x.diameter, case="frechet_isometry", m=m, error=err)
    for _ in range(20):
        x = random_integer_metric(int(rng.integers(2, 9)), rng)
        res.check(np.array_equal(sup_distances(frechet_embed(x)), x.matrix), case="frechet_exact_integer")
    ce = isometry_counterexample()
    reproduced = ce["membership_ok"] and not ce["isometric"] and abs(ce["ratio"] - 2.0) <= EXACT
    res.check(reproduced, case="isometry_counterexample", **ce)
    res.notes.append({"expected": "exact isometry of the padded Frechet map fails", **ce})
    return res


SUITES: dict[str, Callable[[RunConfig], SuiteResult]] = {
    "plp": suite_plp,
    "pskp": suite_pskp,
    "mixture": suite_mixture,
    "rs1n": suite_rs1n,
    "apex": suite_apex,
    "diamnorm": suite_diamnorm,
    "schoenberg": suite_schoenberg,
    "isometries": suite_isometries,
    "pipeline": suite_pipeline,
}


def run_suite(name: str, cfg: RunConfig) -> list[SuiteResult]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for nm in names:
        if nm not in SUITES:
            raise KeyError(f"unknown suite {nm!r}")
        t0 = time.perf_counter()
        res = SUITES[nm](cfg)
        res.wall_time = time.perf_counter() - t0
        out.append(res)
    return out
