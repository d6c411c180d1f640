import itertools
import math

import numpy as np
import pytest

from normspace import (
    PsiPoint,
    discrete,
    embed_into_Sn,
    euclidean_embed,
    frechet_embed,
    isometry_counterexample,
    log_distortion,
    metric_to_psi,
    pad_to_quotient,
    psi_to_metric,
    schoenberg_matrix,
    validate_metric,
)
from normspace.embeddings import diam, padding_bounds, sup_distances
from normspace.errors import (
    BadBaseIndex,
    BadDimensions,
    DegenerateInput,
    MembershipViolation,
    TooManyPoints,
)
from normspace.generators import random_euclidean_metric, random_integer_metric, random_metric

LOG2 = math.log(2)


def random_sizes(rng, count, lo=2, hi=8):
    return [int(v) for v in rng.integers(lo, hi + 1, count)]


class TestFrechet:
    def test_two_points(self):
        r = validate_metric([[0, 5], [5, 0]])
        assert frechet_embed(r).tolist() == [[5.0], [0.0]]
        assert sup_distances(frechet_embed(r))[0, 1] == 5

    def test_equilateral(self, equilateral):
        c = frechet_embed(equilateral)
        assert c.tolist() == [[1, 1], [0, 1], [1, 0]]
        assert np.array_equal(sup_distances(c), equilateral.matrix)

    def test_line(self, line3):
        c = frechet_embed(line3)
        assert c.tolist() == [[1, 2], [0, 1], [1, 0]]
        assert np.array_equal(sup_distances(c), line3.matrix)

    def test_exact_isometry_integer(self, rng):
        for n in random_sizes(rng, 200):
            r = random_integer_metric(n, rng)
            assert np.array_equal(sup_distances(frechet_embed(r)), r.matrix)

    def test_isometry_float(self, rng):
        # tight float triangles (shortest-path closures) can round by one ulp
        for n in random_sizes(rng, 200):
            r = random_metric(n, rng)
            err = np.abs(sup_distances(frechet_embed(r)) - r.matrix).max()
            assert err <= 1e-12 * r.diameter


class TestPadding:
    def test_one_dimensional_is_isometric(self):
        for x, y in [(3.0, -1.0), (0.25, 0.5)]:
            assert diam(pad_to_quotient([x], 2) - pad_to_quotient([y], 2)) == abs(x - y)

    def test_witnesses(self):
        assert padding_bounds([1.0, -1.0], 3) == (1.0, 2.0)
        assert padding_bounds([2.0, 0.0], 3) == (2.0, 2.0)

    def test_bounds_random(self, rng):
        for _ in range(1000):
            p = int(rng.integers(1, 10))
            q = p + int(rng.integers(1, 10))
            sup, d = padding_bounds(rng.standard_normal(p) * 3, q)
            assert sup <= d <= 2 * sup

    def test_bad_dimensions(self):
        with pytest.raises(BadDimensions):
            pad_to_quotient([1, 2, 3], 3)
        with pytest.raises(BadDimensions):
            pad_to_quotient([], 3)


class TestPsi:
    def test_discrete_is_zero(self):
        assert metric_to_psi(discrete(3)).psi.tolist() == [0, 0, 0]

    def test_roundtrip(self, rng):
        for n in random_sizes(rng, 50, 3):
            r = random_metric(n, rng)
            np.testing.assert_allclose(psi_to_metric(metric_to_psi(r)).matrix, r.matrix, rtol=1e-12)

    def test_diameter_matches_log_distortion(self, rng):
        for n in random_sizes(rng, 100, 3):
            r1, r2 = random_metric(n, rng), random_metric(n, rng)
            d = diam(metric_to_psi(r1).psi - metric_to_psi(r2).psi)
            assert d == pytest.approx(log_distortion(r1, r2), abs=1e-12)

    def test_membership_violation_names_triple(self):
        # exp: d01 = 1, d12 = 1, d02 = e^1.5 > 2
        point = PsiPoint(3, [0.0, 1.5, 0.0])
        bad = point.membership_violation()
        assert bad[:3] == (0, 1, 2)
        with pytest.raises(MembershipViolation) as exc:
            psi_to_metric(point)
        assert exc.value.triple == (0, 1, 2)

    def test_wrong_length(self):
        with pytest.raises(BadDimensions):
            PsiPoint(4, [0, 0, 0])

    def test_small_diameter_is_member(self, rng):
        for _ in range(200):
            n = int(rng.integers(3, 7))
            v = rng.uniform(-1, 1, n * (n - 1) // 2)
            v = (v - v.min()) / diam(v) * LOG2 * rng.uniform(0, 1) + rng.normal()
            assert PsiPoint(n, v).is_member()


class TestPipeline:
    def test_equilateral_images(self):
        tri = validate_metric(LOG2 * (np.ones((3, 3)) - np.eye(3)))
        rep = embed_into_Sn(tri, 3, rescale=False)
        d = LOG2
        assert [p.psi.tolist() for p in rep.psi] == [[d, d, 0], [0, d, 0], [d, 0, 0]]
        assert rep.membership_ok
        assert 1 <= rep.min_ratio and rep.max_ratio <= 2

    def test_random_members_within_bounds(self, rng):
        for _ in range(100):
            n = int(rng.integers(3, 7))
            m = int(rng.integers(2, min(n * (n - 1) // 2, 8) + 1))
            rep = embed_into_Sn(random_metric(m, rng), n)
            assert rep.membership_ok
            assert len(rep.images) == m
            assert rep.min_ratio >= 1 - 1e-12 and rep.max_ratio <= 2 + 1e-12

    def test_pair_table_matches_images(self, rng):
        x = random_metric(5, rng)
        rep = embed_into_Sn(x, 4)
        for row in rep.pair_table:
            i, j = row["pair"]
            assert row["source"] == pytest.approx(x(i, j) * rep.scale, rel=1e-15)
            assert row["image"] == log_distortion(rep.images[i], rep.images[j])

    def test_large_distance_breaks_membership(self):
        tri = validate_metric(2.0 * (np.ones((3, 3)) - np.eye(3)))
        rep = embed_into_Sn(tri, 3, rescale=False)
        assert not rep.membership_ok
        assert rep.images == []

    def test_counterexample(self):
        ce = isometry_counterexample()
        assert ce["membership_ok"]
        assert ce["ratio"] == 2.0
        assert ce["isometric"] is False
        d = ce["source_distance"]
        assert sorted(ce["difference"]) == [-d, 0.0, d]

    def test_errors(self, equilateral):
        with pytest.raises(BadDimensions):
            embed_into_Sn(equilateral, 2)
        with pytest.raises(TooManyPoints):
            embed_into_Sn(discrete(4), 3)
        embed_into_Sn(discrete(3), 3)
        with pytest.raises(DegenerateInput):
            embed_into_Sn(type(equilateral)(1, np.zeros((1, 1))), 3)


class TestSchoenberg:
    def test_matrices(self, equilateral, line3, star):
        assert schoenberg_matrix(equilateral).tolist() == [[2, 1], [1, 2]]
        assert schoenberg_matrix(line3).tolist() == [[2, 4], [4, 8]]
        assert schoenberg_matrix(star).tolist() == [[2, -2, -2], [-2, 2, -2], [-2, -2, 2]]

    def test_equilateral(self, equilateral):
        rep = euclidean_embed(equilateral)
        assert rep.embeddable and rep.rank == 2
        np.testing.assert_allclose(rep.eigenvalues, [3, 1], atol=1e-12)
        assert rep.residual <= 1e-9
        assert rep.coords.shape == (3, 2)
        assert np.all(rep.coords[0] == 0)

    def test_line(self, line3):
        rep = euclidean_embed(line3)
        assert rep.embeddable and rep.rank == 1 and rep.residual <= 1e-9 * 2

    def test_star(self, star):
        rep = euclidean_embed(star)
        assert not rep.embeddable
        assert rep.eigenvalues[-1] == pytest.approx(-2, abs=1e-12)
        w = rep.witness
        np.testing.assert_allclose(np.abs(w), np.full(3, 1 / math.sqrt(3)), atol=1e-12)
        np.testing.assert_allclose(rep.A @ w, -2 * w, atol=1e-12)

    def test_roundtrip_random(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 9))
            r = random_euclidean_metric(n, int(rng.integers(1, 5)), rng)
            rep = euclidean_embed(r)
            assert rep.embeddable
            assert rep.residual <= 1e-9 * r.diameter

    def test_rank_of_planar_points(self, rng):
        r = random_euclidean_metric(6, 2, rng)
        assert euclidean_embed(r).rank == 2

    def test_base_independent(self, rng, star):
        cases = [star] + [random_metric(int(rng.integers(2, 7)), rng) for _ in range(40)]
        cases += [random_euclidean_metric(int(rng.integers(2, 7)), 3, rng) for _ in range(20)]
        for r in cases:
            verdicts = {euclidean_embed(r, base=b).embeddable for b in range(r.n)}
            ranks = {euclidean_embed(r, base=b).rank for b in range(r.n)}
            assert len(verdicts) == 1 and len(ranks) == 1

    def test_errors(self, equilateral):
        with pytest.raises(BadBaseIndex):
            schoenberg_matrix(equilateral, base=3)
        with pytest.raises(ValueError):
            euclidean_embed(equilateral, tol=0)

    def test_against_classical_mds(self, rng):
        # independent check: double-centred squared distances give the same spectrum sign
        for _ in range(50):
            n = int(rng.integers(3, 7))
            r = random_metric(n, rng)
            j = np.eye(n) - 1.0 / n
            b = -0.5 * j @ (r.matrix ** 2) @ j
            mds_ok = np.linalg.eigvalsh(b).min() >= -1e-9 * np.abs(b).max()
            assert euclidean_embed(r).embeddable == mds_ok


def test_all_orderings_checked():
    # a violation visible only through one ordering of the triple
    for perm in itertools.permutations(range(3)):
        t = np.ones((3, 3)) - np.eye(3)
        i, k = perm[0], perm[2]
        t[i, k] = t[k, i] = 2.5
        iu = np.triu_indices(3, k=1)
        point = PsiPoint(3, np.log(t[iu]))
        assert not point.is_member()
