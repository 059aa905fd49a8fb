import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mindist_tomo.linalg import (
    random_density,
    random_hermitian,
    random_low_rank_density,
    random_unitary,
    schatten_norm,
)
from mindist_tomo.projection import (
    project_density,
    project_density_smoothed,
    project_simplex,
)
from oracles import density_qp_oracle, simplex_qp_oracle, smoothed_qp_oracle


class TestProjectSimplex:
    def test_fixed_point(self):
        np.testing.assert_allclose(project_simplex([0.5, 0.5]), [0.5, 0.5])

    def test_nearest_vertex(self):
        np.testing.assert_allclose(project_simplex([2.0, 0.0]), [1.0, 0.0])

    def test_three_entry_example(self):
        out = project_simplex([0.8, 0.6, -0.2])
        np.testing.assert_allclose(out, [0.6, 0.4, 0.0], atol=1e-15)
        np.testing.assert_allclose(out, simplex_qp_oracle([0.8, 0.6, -0.2]), atol=1e-12)

    def test_single_entry(self):
        np.testing.assert_allclose(project_simplex([-3.7]), [1.0])

    def test_rejects_nan_inf(self):
        with pytest.raises(ValueError):
            project_simplex([0.5, math.nan])
        with pytest.raises(ValueError):
            project_simplex([math.inf, 0.0])

    def test_output_on_simplex(self, rng):
        for _ in range(200):
            m = int(rng.integers(1, 9))
            out = project_simplex(rng.normal(0, 2, size=m))
            assert out.min() >= 0.0
            assert abs(out.sum() - 1.0) <= 1e-12

    def test_matches_oracle_bulk(self, rng):
        for _ in range(300):
            m = int(rng.integers(1, 9))
            z = rng.normal(0, 1.5, size=m)
            assert np.linalg.norm(project_simplex(z) - simplex_qp_oracle(z)) <= 1e-10

    @given(st.lists(st.floats(-5, 5), min_size=1, max_size=6))
    @settings(max_examples=200, deadline=None)
    def test_matches_oracle_hypothesis(self, values):
        z = np.asarray(values)
        assert np.linalg.norm(project_simplex(z) - simplex_qp_oracle(z)) <= 1e-10

    def test_ties_handled(self):
        out = project_simplex([1.0, 1.0, 1.0, -1.0])
        np.testing.assert_allclose(out, [1 / 3, 1 / 3, 1 / 3, 0.0], atol=1e-12)

    def test_normal_cone_certificate(self, rng):
        z = rng.normal(0, 2, size=6)
        lam = project_simplex(z)
        residual = z - lam
        for _ in range(1000):
            v = rng.dirichlet(np.ones(6))
            assert residual @ (v - lam) <= 1e-10

    def test_sup_norm_optimality(self, rng):
        for _ in range(20):
            z = rng.normal(0, 2, size=5)
            best = np.abs(z - project_simplex(z)).max()
            for _ in range(50):
                v = rng.dirichlet(np.ones(5))
                assert best <= np.abs(z - v).max() + 1e-10


class TestProjectDensity:
    def test_maximally_mixed_fixed_point(self):
        for m in (1, 2, 5):
            eye = np.eye(m) / m
            np.testing.assert_allclose(project_density(eye), eye, atol=1e-14)

    def test_diagonal_example(self):
        out = project_density(np.diag([2.0, 0.0]))
        np.testing.assert_allclose(out, np.diag([1.0, 0.0]), atol=1e-14)

    def test_matches_qp_oracle(self):
        for seed in range(50):
            z = random_hermitian(3, seed)
            ours = project_density(z)
            oracle = density_qp_oracle(z)
            d_ours = np.linalg.norm(z - ours)
            d_oracle = np.linalg.norm(z - oracle)
            assert abs(d_ours - d_oracle) < 1e-9
            assert np.linalg.norm(ours - oracle) < 1e-8

    def test_output_is_density(self):
        for seed in range(30):
            out = project_density(random_hermitian(6, seed, scale=3.0))
            evals = np.linalg.eigvalsh(out)
            assert evals.min() >= -1e-12
            assert abs(np.trace(out).real - 1.0) <= 1e-10

    def test_idempotent(self):
        for seed in range(20):
            once = project_density(random_hermitian(5, seed))
            twice = project_density(once)
            assert np.linalg.norm(once - twice) <= 1e-10

    def test_unitary_equivariance(self):
        for seed in range(20):
            z = random_hermitian(4, seed)
            u = random_unitary(4, seed + 500)
            left = project_density(u.conj().T @ z @ u)
            right = u.conj().T @ project_density(z) @ u
            assert np.linalg.norm(left - right) <= 1e-9

    def test_diagonal_input_stays_diagonal(self, rng):
        for _ in range(20):
            d = np.diag(rng.normal(0, 2, size=5))
            out = project_density(d)
            off = out - np.diag(np.diagonal(out))
            assert np.abs(off).max() < 1e-10

    def test_operator_norm_optimality(self, rng):
        for seed in range(10):
            z = random_hermitian(4, seed, scale=2.0)
            best = schatten_norm(z - project_density(z), math.inf)
            for i in range(100):
                s = random_density(4, 10_000 + 100 * seed + i)
                assert best <= schatten_norm(z - s, math.inf) + 1e-10

    def test_rank_bound_inequality(self):
        # for random Z, S of rank r and a grid of p:
        # |proj(Z) - S|_p <= min(2^(3/p+1) r^(1/p) |Z-S|_inf, 2 |Z-S|_inf^(1-1/p))
        p_grid = (1.0, 1.5, 2.0, 4.0, math.inf)
        for seed in range(60):
            m, r = 6, (seed % 3) + 1
            z = random_hermitian(m, seed, scale=1.5)
            s = random_low_rank_density(m, r, seed + 999)
            proj = project_density(z)
            gap = schatten_norm(z - s, math.inf)
            for p in p_grid:
                inv_p = 0.0 if math.isinf(p) else 1.0 / p
                bound = min(2 ** (3 * inv_p + 1) * r**inv_p * gap,
                            2 * gap ** (1 - inv_p))
                assert schatten_norm(proj - s, p) <= bound + 1e-9

    def test_low_rank_pair_inequality(self):
        # |S' - S|_p <= min((8r)^(1/p) |S'-S|_inf, 2^(1/p) |S'-S|_inf^(1-1/p))
        p_grid = (1.0, 1.5, 2.0, 4.0, math.inf)
        for seed in range(60):
            m, r = 6, (seed % 3) + 1
            s = random_low_rank_density(m, r, seed)
            s_prime = random_density(m, seed + 4321)
            gap = schatten_norm(s_prime - s, math.inf)
            for p in p_grid:
                inv_p = 0.0 if math.isinf(p) else 1.0 / p
                bound = min((8 * r) ** inv_p * gap, 2**inv_p * gap ** (1 - inv_p))
                assert schatten_norm(s_prime - s, p) <= bound + 1e-9


class TestProjectDensitySmoothed:
    def test_zero_delta_identical_bits(self):
        for seed in range(10):
            z = random_hermitian(4, seed)
            assert np.array_equal(project_density_smoothed(z, 0.0), project_density(z))

    def test_maximally_mixed_fixed_point(self):
        eye = np.eye(4) / 4
        for delta in (0.0, 0.3, 0.9):
            np.testing.assert_allclose(project_density_smoothed(eye, delta), eye,
                                       atol=1e-12)

    def test_two_by_two_example(self):
        out = project_density_smoothed(np.diag([2.0, 0.0]), 0.5)
        np.testing.assert_allclose(out, np.diag([0.75, 0.25]), atol=1e-12)
        oracle = smoothed_qp_oracle(np.diag([2.0, 0.0]), 0.5)
        assert np.abs(out - oracle).max() < 1e-6

    def test_eigenvalue_floor(self):
        for seed in range(20):
            z = random_hermitian(5, seed, scale=2.0)
            for delta in (0.05, 0.4, 0.99):
                out = project_density_smoothed(z, delta)
                assert np.linalg.eigvalsh(out).min() >= delta / 5 - 1e-12

    @pytest.mark.parametrize("delta", [-0.1, 1.0, 1.5])
    def test_rejects_bad_delta(self, delta):
        with pytest.raises(ValueError):
            project_density_smoothed(np.eye(2) / 2, delta)
