import json
import math

import numpy as np
import pytest

from normspace import (
    Mixture,
    NormSphere,
    OffCenterSphere,
    Perturbed,
    PNorm,
    Precomposed,
    SampledDual,
    Scaled,
    Sum,
    WeightedAbs,
    check_norm_axioms,
    diameter_seminorm,
    distance_closed_form,
    dual_norm_eval,
    estimate_distance,
    evaluate,
    log_restriction,
    precompose_invariance_check,
    sample_domain,
    spec_from_json,
)
from normspace.errors import (
    DimensionMismatch,
    EmptyDomain,
    ParameterOutOfRange,
    SingularMatrix,
    ZeroCenter,
)
from normspace.generators import P_CHOICES, random_spec, signed_permutation
from normspace.norms import NormSpec, SampleDomain

INF = math.inf
L2_SPHERE = NormSphere(PNorm(2.0))


def circle_oracle(a, b, n=1 << 20):
    """Brute-force class distance in R^2: spread of log(b/a) over a dense
    angle grid (multiples of pi/4 are on the grid)."""
    t = 2 * np.pi * np.arange(n) / n
    x = np.stack([np.cos(t), np.sin(t)], axis=1)
    f = np.log(b.evaluate(x)) - np.log(a.evaluate(x))
    return float(f.max() - f.min())


def dom(k, count=200, seed=0, kind=L2_SPHERE):
    return sample_domain(kind, count, seed, k)


class TestEvaluate:
    def test_examples(self):
        assert evaluate(PNorm(2), [3, 4]) == 5
        assert evaluate(Perturbed(1, 2, 0), [1, 1]) == 4
        assert evaluate(Mixture([1, 2], [0.5, 0.5]), [1, 1]) == pytest.approx((2 + math.sqrt(2)) / 2, rel=1e-15)

    def test_batch_and_zero(self):
        x = np.array([[1.0, -2.0, 2.0], [0.0, 0.0, 0.0]])
        assert PNorm(2).evaluate(x).tolist() == [3.0, 0.0]
        assert PNorm(INF)(x[0]) == 2.0

    def test_general_p_matches_formula(self, rng):
        x = rng.standard_normal((50, 4))
        for p in (1.5, 3.0, 7.25):
            expected = (np.abs(x) ** p).sum(axis=1) ** (1 / p)
            np.testing.assert_allclose(PNorm(p).evaluate(x), expected, rtol=1e-13)

    def test_dimension_mismatch(self):
        w = WeightedAbs([1, 1], np.eye(2))
        with pytest.raises(DimensionMismatch):
            w([1, 2, 3])
        with pytest.raises(DimensionMismatch):
            Perturbed(2, 1, 5)([1, 2])
        with pytest.raises(DimensionMismatch):
            Sum(w, WeightedAbs([1, 1, 1], np.eye(3)))

    def test_rejections(self):
        with pytest.raises(ParameterOutOfRange):
            PNorm(0.5)
        with pytest.raises(SingularMatrix):
            Precomposed([[1, 2], [2, 4]], PNorm(2))
        with pytest.raises(SingularMatrix):
            Precomposed([[1, 0], [0, 1e-14]], PNorm(2))
        with pytest.raises(ParameterOutOfRange):
            WeightedAbs([1, 1], [[1, 0], [2, 0]])
        with pytest.raises(ParameterOutOfRange):
            Mixture([1, INF], [1, 1])
        with pytest.raises(ParameterOutOfRange):
            Perturbed(2, -1, 0)
        with pytest.raises(ParameterOutOfRange):
            Scaled(0, PNorm(1))


class TestAxioms:
    def test_sum_passes(self):
        assert check_norm_axioms(Sum(PNorm(1), PNorm(2)), k=3).passed

    def test_random_specs_pass(self, rng):
        for k in (1, 2, 3, 5):
            for _ in range(10):
                rep = check_norm_axioms(random_spec(k, rng), trials=10_000, seed=int(rng.integers(1 << 30)), k=k)
                assert rep.passed, rep.failures

    def test_squared_norm_fails(self):
        class Squared(NormSpec):
            def _evaluate(self, x):
                return (x * x).sum(axis=-1)

        rep = check_norm_axioms(Squared(), trials=1000, k=2)
        assert not rep.passed
        assert {f["axiom"] for f in rep.failures} >= {"homogeneity", "subadditivity"}


class TestClosedForm:
    def test_examples(self):
        assert distance_closed_form(PNorm(1), PNorm(INF), 2) == pytest.approx(math.log(2), abs=1e-15)
        assert distance_closed_form(Perturbed(2, 1, 0), Perturbed(2, 3, 1), 3) == pytest.approx(math.log(2) + math.log(4))
        assert distance_closed_form(Mixture([1], [2.0]), PNorm(2), 4) == pytest.approx(math.log(2), abs=1e-15)

    def test_patterns(self):
        assert distance_closed_form(Scaled(3, PNorm(1)), PNorm(2), 3) == pytest.approx(0.5 * math.log(3))
        assert distance_closed_form(PNorm(3), Mixture([1.5], [1]), 3) is not None
        assert distance_closed_form(Mixture([3], [1]), PNorm(2), 3) is None
        assert distance_closed_form(Perturbed(1, 1, 0), Perturbed(2, 1, 0), 3) is None
        assert distance_closed_form(WeightedAbs([1, 2], np.eye(2)), PNorm(1), 2) is None
        assert distance_closed_form(Perturbed(1, 5, 0), PNorm(7), 1) == 0.0

    @pytest.mark.parametrize(
        "a,b",
        [
            (PNorm(1), PNorm(INF)),
            (PNorm(1.5), PNorm(3)),
            (Perturbed(2, 1.5, 0), Perturbed(2, 0.25, 1)),
            (Perturbed(3, 1.5, 1), Perturbed(3, 4.0, 1)),
            (Mixture([1, 1.7], [0.3, 2.0]), PNorm(2.5)),
            (Mixture([1.2, 2.2], [1.0, 1.0]), PNorm(INF)),
        ],
    )
    def test_against_circle_oracle(self, a, b):
        assert distance_closed_form(a, b, 2) == pytest.approx(circle_oracle(a, b), abs=1e-9)

    def test_diag_linf_oracle(self):
        a = Precomposed(np.diag([1.0, 2.0]), PNorm(INF))
        assert circle_oracle(a, PNorm(INF)) == pytest.approx(math.log(2), abs=1e-12)


class TestSampleDomain:
    def test_canonical_points(self):
        d = dom(2, 0)
        pts = {tuple(np.round(p, 15)) for p in d.points}
        assert (1.0, 0.0) in pts
        s = round(1 / math.sqrt(2), 15)
        assert any(np.allclose(p, [s, s], atol=1e-15) for p in d.points)
        assert len(d) == 5

    def test_norm_sphere_residual(self):
        d = dom(3, 500, kind=NormSphere(PNorm(1), 2.0))
        assert np.abs(PNorm(1).evaluate(d.points) - 2.0).max() <= 2e-12
        assert d.sphere_residual() <= 1e-12

    def test_off_center(self, rng):
        for _ in range(10):
            k = int(rng.integers(1, 5))
            y = rng.standard_normal(k) * 5
            d = sample_domain(OffCenterSphere(y), 500, int(rng.integers(100)), k)
            lhs = ((d.points - y) ** 2).sum(axis=1)
            np.testing.assert_allclose(lhs, 1 + y @ y, rtol=1e-12)
            assert np.all(np.any(d.points != 0, axis=1))

    def test_zero_center(self):
        with pytest.raises(ZeroCenter):
            OffCenterSphere([0.0, 0.0])

    def test_one_point_per_ray(self):
        d = dom(3, 2000)
        unit = d.points / np.linalg.norm(d.points, axis=1, keepdims=True)
        gram = unit @ unit.T
        np.fill_diagonal(gram, 0)
        assert gram.max() < 1 - 1e-12

    def test_larger_count_extends_smaller(self):
        small, big = dom(3, 100, seed=9), dom(3, 300, seed=9)
        np.testing.assert_array_equal(big.points[: len(small)], small.points)

    def test_reproducible(self):
        np.testing.assert_array_equal(dom(4, 50, seed=2**64 - 1).points, dom(4, 50, seed=2**64 - 1).points)

    def test_with_points_projects(self):
        d = dom(2, 0).with_points([[3.0, 4.0], [1.0, 0.0]])
        assert len(d) == 6
        np.testing.assert_allclose(d.points[-1], [0.6, 0.8], rtol=1e-15)

    def test_json_roundtrip(self):
        d = dom(3, 20, seed=5, kind=NormSphere(Perturbed(INF, 2, 1), 3.0))
        back = SampleDomain.from_json(json.loads(json.dumps(d.to_json())))
        np.testing.assert_array_equal(back.points, d.points)
        assert back.seed == 5 and back.count == 20
        assert back.sphere_residual() <= 1e-12


class TestEstimate:
    def test_l1_linf_canonical_only(self):
        est = estimate_distance(PNorm(1), PNorm(INF), dom(2, 0))
        assert est.lower_bound == pytest.approx(math.log(2), abs=1e-15)
        assert est.refined == pytest.approx(math.log(2), abs=1e-15)

    def test_scaled_is_zero(self):
        a = Sum(PNorm(1), Perturbed(3, 2, 1))
        est = estimate_distance(a, Scaled(2.5, a), dom(3))
        assert est.lower_bound == 0 and est.refined == 0

    def test_l1_l2_k3(self):
        est = estimate_distance(PNorm(1), PNorm(2), dom(3, 0))
        assert est.refined == pytest.approx(0.5 * math.log(3), abs=1e-9)

    def test_empty_and_mismatch(self):
        empty = SampleDomain(2, L2_SPHERE, np.zeros((0, 2)))
        with pytest.raises(EmptyDomain):
            estimate_distance(PNorm(1), PNorm(2), empty)
        with pytest.raises(DimensionMismatch):
            estimate_distance(WeightedAbs([1, 1, 1], np.eye(3)), PNorm(2), dom(2))

    def test_soundness_on_closed_forms(self, rng):
        d = {k: dom(k, 300, seed=k) for k in (2, 3, 5)}
        for _ in range(60):
            k = (2, 3, 5)[rng.integers(3)]
            p, q = rng.choice(P_CHOICES, 2)
            pairs = [(PNorm(p), PNorm(q)), (Perturbed(p, rng.uniform(0, 4), int(rng.integers(k))), Perturbed(p, rng.uniform(0, 4), int(rng.integers(k))))]
            for a, b in pairs:
                est = estimate_distance(a, b, d[k])
                cf = distance_closed_form(a, b, k)
                assert est.lower_bound <= est.refined <= cf + 1e-12
                assert est.refined == pytest.approx(cf, abs=1e-9)

    def test_refinement_stays_on_sphere(self, rng):
        for _ in range(10):
            a, b = random_spec(3, rng), random_spec(3, rng)
            d = dom(3, 30, seed=int(rng.integers(1000)), kind=OffCenterSphere([0.5, -1.0, 2.0]))
            est = estimate_distance(a, b, d)
            assert est.lower_bound <= est.refined
            for w in (est.arg_max, est.arg_min):
                assert d.kind.residual(w[None, :])[0] <= 1e-12
            # the refined value is realized at the witnesses
            realized = math.log(b(est.arg_max) / a(est.arg_max)) - math.log(b(est.arg_min) / a(est.arg_min))
            assert realized == pytest.approx(est.refined, abs=1e-12)

    def test_monotone_in_samples(self, rng):
        for _ in range(10):
            a, b = random_spec(3, rng), random_spec(3, rng)
            small, big = dom(3, 50, seed=4), dom(3, 400, seed=4)
            assert estimate_distance(a, b, small, 0).lower_bound <= estimate_distance(a, b, big, 0).lower_bound

    def test_scale_and_symmetry_exact(self, rng):
        for _ in range(20):
            k = int(rng.integers(2, 5))
            a, b = random_spec(k, rng), random_spec(k, rng)
            d = dom(k, 200, seed=int(rng.integers(1000)))
            e_ab = estimate_distance(a, b, d)
            e_ba = estimate_distance(b, a, d)
            e_sc = estimate_distance(a, Scaled(float(rng.uniform(0.01, 100)), b), d)
            assert e_ab.lower_bound == e_ba.lower_bound == e_sc.lower_bound
            assert e_ab.refined == e_ba.refined == e_sc.refined

    def test_triangle_on_shared_domain(self, rng):
        for _ in range(50):
            k = int(rng.integers(2, 5))
            a, b, c = (random_spec(k, rng) for _ in range(3))
            d = dom(k, 200, seed=int(rng.integers(1000)))
            lb = lambda x, y: estimate_distance(x, y, d, 0).lower_bound
            assert lb(a, c) <= lb(a, b) + lb(b, c) + 1e-12

    def test_triangle_refined_on_closed_form_family(self, rng):
        d = dom(4, 200)
        for _ in range(30):
            a, b, c = (PNorm(float(p)) for p in rng.choice(P_CHOICES, 3))
            r = lambda x, y: estimate_distance(x, y, d).refined
            assert r(a, c) <= r(a, b) + r(b, c) + 1e-9

    def test_mixture_consistency(self, rng):
        for _ in range(20):
            k = int(rng.integers(2, 6))
            q = float(rng.uniform(2, 6))
            atoms = rng.uniform(1, q, int(rng.integers(1, 4)))
            mu = Mixture(atoms, rng.uniform(0.1, 2, atoms.size))
            est = estimate_distance(mu, PNorm(q), dom(k, 100))
            assert est.refined == pytest.approx(distance_closed_form(mu, PNorm(q), k), abs=1e-9)

    def test_threads_do_not_change_result(self, rng):
        a, b = random_spec(3, rng), random_spec(3, rng)
        d = dom(3, 5000)
        e1, e4 = estimate_distance(a, b, d, threads=1), estimate_distance(a, b, d, threads=4)
        assert e1.to_json() == e4.to_json()


class TestLogRestriction:
    def test_reference_norm_is_origin(self):
        d = dom(3, 100, kind=NormSphere(Perturbed(1.5, 2, 0), 2.0))
        assert log_restriction(Perturbed(1.5, 2, 0), d).diameter <= 1e-14

    def test_l1_minus_l2_on_circle(self):
        d = dom(2, 0)
        diff = log_restriction(PNorm(1), d).distance(log_restriction(PNorm(2), d))
        assert diff == pytest.approx(0.5 * math.log(2), abs=1e-15)

    def test_off_center_is_not_origin(self):
        d = dom(2, 50, kind=OffCenterSphere([1.0, 0.5]))
        assert log_restriction(PNorm(2), d).diameter > 0.1

    def test_matches_lower_bound(self, rng):
        for _ in range(20):
            a, b = random_spec(3, rng), random_spec(3, rng)
            d = dom(3, 100, seed=int(rng.integers(100)))
            q = log_restriction(a, d).distance(log_restriction(b, d))
            assert q == pytest.approx(estimate_distance(a, b, d, 0).lower_bound, abs=1e-12)
            assert log_restriction(a, d).values[0] == 0


class TestPrecompose:
    def test_rotation(self):
        c = math.cos(math.pi / 4)
        rep = precompose_invariance_check(PNorm(2), PNorm(2), [[c, -c], [c, c]], dom(2))
        assert rep.original == 0 and rep.precomposed <= 1e-12 and rep.ok

    def test_signed_permutation_fixes_pnorm(self, rng):
        for p in P_CHOICES:
            a = signed_permutation([2, 0, 1], [1, -1, -1])
            est = estimate_distance(Precomposed(a, PNorm(p)), PNorm(p), dom(3), 0)
            assert est.lower_bound <= 1e-12

    def test_diag_linf(self):
        est = estimate_distance(Precomposed(np.diag([1.0, 2.0]), PNorm(INF)), PNorm(INF), dom(2))
        assert est.refined == pytest.approx(math.log(2), abs=1e-12)

    def test_invariance_random(self, rng):
        for _ in range(20):
            a, b = random_spec(3, rng), random_spec(3, rng)
            m = rng.standard_normal((3, 3)) + 2 * np.eye(3)
            rep = precompose_invariance_check(a, b, m, dom(3, 200, kind=OffCenterSphere([0.2, 0.3, -1.0])))
            assert rep.ok, (rep.original, rep.precomposed)

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            precompose_invariance_check(PNorm(1), PNorm(2), np.zeros((2, 2)), dom(2))

    def test_separating_norms(self):
        for k in (2, 3, 4):
            weighted = WeightedAbs(np.arange(1.0, k + 1), np.eye(k))
            a = 3.0 * signed_permutation(np.roll(np.arange(k), 1), np.ones(k))
            assert estimate_distance(Precomposed(a, weighted), weighted, dom(k)).refined > 0.01
            # sign flips do not move the weighted norm, but move ||x||_1 + |x_1 + x_2|
            flip = np.diag([1.0, -1.0] + [1.0] * (k - 2))
            assert estimate_distance(Precomposed(flip, weighted), weighted, dom(k)).refined <= 1e-12
            sep = WeightedAbs(np.ones(k + 1), np.vstack([np.eye(k)[0] + np.eye(k)[1], np.eye(k)]))
            assert estimate_distance(Precomposed(flip, sep), sep, dom(k)).refined > 0.01


class TestDual:
    def test_l1_dual(self):
        assert dual_norm_eval(PNorm(1), [1, 1], dom(2, 0)) == 1.0

    def test_l2_self_dual(self):
        d = dom(2, 0).with_points([[3.0, 4.0]])
        assert dual_norm_eval(PNorm(2), [3, 4], d) == pytest.approx(5.0, rel=1e-15)

    def test_lower_bound(self, rng):
        d = dom(3, 300)
        y = rng.standard_normal((50, 3))
        assert np.all(SampledDual(PNorm(1.5), d).evaluate(y) <= PNorm(3).evaluate(y) * (1 + 1e-12))

    def test_dual_distances(self):
        for k in (2, 3, 4):
            inner = dom(k, 10_000, seed=1)
            outer = dom(k, 2_000, seed=2)
            for p, q in [(1, 2), (1.5, 3), (1, INF), (2, 3)]:
                target = distance_closed_form(PNorm(p), PNorm(q), k)
                est = estimate_distance(SampledDual(PNorm(p), inner), SampledDual(PNorm(q), inner), outer, 0)
                assert est.lower_bound == pytest.approx(target, rel=0.05)


def test_spec_json_roundtrip(rng):
    for _ in range(30):
        s = random_spec(3, rng)
        back = spec_from_json(json.loads(json.dumps(s.to_json())))
        x = rng.standard_normal((20, 3))
        np.testing.assert_array_equal(back.evaluate(x), s.evaluate(x))
    assert spec_from_json({"kind": "pnorm", "p": "inf"}) == PNorm(INF)
    with pytest.raises(ParameterOutOfRange):
        spec_from_json({"kind": "pnorm", "p": 0.5})
    with pytest.raises(ParameterOutOfRange):
        spec_from_json({"kind": "cube"})
