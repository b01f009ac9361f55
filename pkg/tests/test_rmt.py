"""Random-matrix module: GUE sampling, semicircle law, Wick moments, MCMC."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kpzlab.harness.stats import ks_distance, ks_two_sample
from kpzlab.rmt import (
    coulomb_log_density,
    edge_rescale,
    eigenvalues,
    esd,
    genus_moment_polynomial,
    invert_stieltjes,
    metropolis_sample,
    sample_gue,
    semicircle,
    semicircle_cdf,
    semicircle_moment,
    semicircle_stieltjes,
    stieltjes,
    trace_moment,
    trace_moment_exact,
)

CATALAN = [1, 1, 2, 5, 14, 42]


class TestGUE:
    def test_matrix_is_hermitian(self):
        mat = sample_gue(30, seed=0)
        assert np.allclose(mat.entries, mat.entries.conj().T)

    def test_entry_variances(self):
        rng = np.random.default_rng(1)
        draws = np.stack([sample_gue(8, rng=rng).entries for _ in range(4000)])
        offdiag = draws[:, 0, 1]
        assert np.var(offdiag.real) + np.var(offdiag.imag) == pytest.approx(
            1.0, abs=0.05)
        assert np.var(draws[:, 2, 2].real) == pytest.approx(1.0, abs=0.06)

    def test_eigenvalues_real_sorted(self):
        spec = eigenvalues(sample_gue(50, seed=3))
        assert np.all(np.diff(spec.eigenvalues) >= 0)

    def test_deterministic_for_seed(self):
        a = sample_gue(10, seed=5).entries
        b = sample_gue(10, seed=5).entries
        assert np.array_equal(a, b)

    def test_edge_rescale_formula(self):
        spec = eigenvalues(sample_gue(40, seed=2))
        y_max = spec.eigenvalues[-1]
        assert edge_rescale(spec) == pytest.approx(
            (y_max - 2.0 * math.sqrt(40)) * 40 ** (1.0 / 6.0))


class TestSemicircle:
    def test_density_support_and_normalization(self):
        assert semicircle(2.5) == 0.0
        assert semicircle(0.0) == pytest.approx(1.0 / math.pi)
        xs = np.linspace(-2, 2, 20001)
        assert np.trapezoid(semicircle(xs), xs) == pytest.approx(1.0, abs=1e-6)

    def test_cdf_endpoints_and_midpoint(self):
        assert semicircle_cdf(-2.0) == pytest.approx(0.0, abs=1e-14)
        assert semicircle_cdf(0.0) == pytest.approx(0.5, abs=1e-14)
        assert semicircle_cdf(2.0) == pytest.approx(1.0, abs=1e-14)

    def test_even_moments_are_catalan(self):
        for k, cat in enumerate(CATALAN):
            assert semicircle_moment(2 * k) == pytest.approx(cat, abs=1e-8)
            if k > 0:
                assert semicircle_moment(2 * k - 1) == pytest.approx(
                    0.0, abs=1e-10)

    def test_stieltjes_transform_closed_form(self):
        z = 3.0 + 0.5j
        s = semicircle_stieltjes(z)
        # m(z) = int d mu(x) / (x - z) solves m**2 + z*m + 1 = 0
        assert abs(s**2 + z * s + 1.0) < 1e-12
        assert s.imag > 0  # Herglotz: upper half plane to upper half plane

    def test_inversion_recovers_density(self):
        for x in (-1.5, 0.0, 0.7):
            assert invert_stieltjes(semicircle_stieltjes, x) == pytest.approx(
                float(semicircle(x)), abs=1e-4)

    def test_empirical_stieltjes_matches_exact_for_large_n(self):
        spec = eigenvalues(sample_gue(400, seed=4))
        mu = esd(spec)  # atoms already rescaled to the [-2, 2] support
        z = 1.0 + 0.8j
        assert abs(stieltjes(mu, z) - semicircle_stieltjes(z)) < 0.05

    def test_semicircle_ks_single_large_draw(self):
        spec = eigenvalues(sample_gue(500, seed=6))
        sample = np.sort(spec.eigenvalues / math.sqrt(500))
        assert ks_distance(sample, semicircle_cdf).d < 0.05


class TestWick:
    def test_exact_low_moments(self):
        # E[Tr M^j] for j = 0..4: (n, 0, n^2, 0, 2n^3 + n)
        for n in (2, 3, 5, 8):
            assert trace_moment_exact(n, 0) == n
            assert trace_moment_exact(n, 1) == 0
            assert trace_moment_exact(n, 2) == n * n
            assert trace_moment_exact(n, 3) == 0
            assert trace_moment_exact(n, 4) == 2 * n**3 + n

    def test_sixth_and_eighth_moments(self):
        for n in (2, 4):
            assert trace_moment_exact(n, 6) == 5 * n**4 + 10 * n**2
            assert trace_moment_exact(n, 8) == 14 * n**5 + 70 * n**3 + 21 * n

    def test_genus_moment_polynomial(self):
        assert genus_moment_polynomial(1) == {2: 1}
        assert genus_moment_polynomial(2) == {3: 2, 1: 1}
        assert genus_moment_polynomial(3) == {4: 5, 2: 10}
        assert genus_moment_polynomial(4) == {5: 14, 3: 70, 1: 21}

    def test_monte_carlo_agrees_with_exact(self):
        est, stderr = trace_moment(4, 4, 40000, seed=9)
        assert abs(est - trace_moment_exact(4, 4)) < 4.0 * stderr


class TestCoulomb:
    def test_log_density_single_point(self):
        assert coulomb_log_density(np.array([1.5])) == pytest.approx(
            -0.5 * 1.5**2)

    def test_log_density_pair_interaction(self):
        val = coulomb_log_density(np.array([-1.0, 2.0]))
        assert val == pytest.approx(-0.5 * (1.0 + 4.0) + 2.0 * math.log(3.0))

    def test_chain_matches_matrix_sampling(self):
        chain = metropolis_sample(8, 200_000, seed=2)
        assert 0.2 < chain.acceptance < 0.7
        rng = np.random.default_rng(3)
        pools = [eigenvalues(sample_gue(8, rng=rng)).eigenvalues
                 / math.sqrt(8) for _ in range(400)]
        d = ks_two_sample(chain.pooled_rescaled(), np.concatenate(pools)).d
        assert d < 0.08


@given(x=st.floats(-3.0, 3.0))
@settings(max_examples=40, deadline=None)
def test_property_cdf_monotone_bounded(x):
    v = float(semicircle_cdf(x))
    assert 0.0 <= v <= 1.0
    assert float(semicircle_cdf(x + 0.1)) >= v - 1e-15
