"""Exact solvers: generator, uniformization, contour formula, Bethe ansatz."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm
from scipy.stats import poisson, skellam

from kpzlab.asep import Rates
from kpzlab.errors import InvalidConfigError
from kpzlab.exact import (
    bethe_eigenpair,
    bethe_residual,
    bethe_solve,
    delta_distribution,
    eigenpair_residual,
    master_evolve,
    ring_generator,
    spectrum_coverage,
    transition_probabilities,
    transition_probability,
    window_generator,
    window_normalization,
    window_targets,
)


class TestGenerator:
    def test_row_sums_vanish(self):
        gen = ring_generator(2, 6, Rates(0.3, 0.7))
        rows = np.asarray(gen.dense().sum(axis=1)).ravel()
        assert np.max(np.abs(rows)) < 1e-14

    def test_off_diagonal_nonnegative(self):
        gen = window_generator(2, -3, 3, Rates(0.25, 0.75))
        dense = gen.dense().copy()
        np.fill_diagonal(dense, 0.0)
        assert np.min(dense) >= 0.0

    def test_state_count(self):
        from math import comb
        gen = ring_generator(3, 7, Rates(0.5, 0.5))
        assert len(gen.states) == comb(7, 3)

    def test_uniform_is_stationary_on_ring(self):
        for n_part, L in ((2, 5), (3, 7)):
            gen = ring_generator(n_part, L, Rates(0.3, 0.7))
            pi = np.full(len(gen.states), 1.0 / len(gen.states))
            assert np.max(np.abs(gen.matrix.T @ pi)) < 1e-12


class TestUniformization:
    def test_matches_dense_matrix_exponential(self):
        gen = ring_generator(2, 6, Rates(0.3, 0.7))
        pi0 = delta_distribution(gen, gen.states[4])
        pi_t = master_evolve(gen, pi0, 1.7)
        oracle = expm(gen.dense().T * 1.7) @ pi0
        assert np.max(np.abs(pi_t - oracle)) < 1e-11

    def test_distribution_stays_normalized(self):
        gen = window_generator(2, -5, 5, Rates(0.25, 0.75))
        pi0 = delta_distribution(gen, (-1, 1))
        pi_t = master_evolve(gen, pi0, 2.5)
        assert pi_t.sum() == pytest.approx(1.0, abs=1e-11)
        assert np.min(pi_t) >= -1e-15


class TestContourFormula:
    def test_single_particle_is_jump_difference_law(self):
        # one particle displaces by (right jumps) - (left jumps), two
        # independent Poisson streams: Skellam law
        t = 1.3
        for p in (0.0, 0.25, 0.5):
            rates = Rates(p, 1.0 - p)
            for k in (-2, -1, 0, 1, 3):
                prob = transition_probability((0,), (k,), t, rates)
                if p == 0.0:
                    oracle = poisson.pmf(k, (1.0 - p) * t)
                else:
                    oracle = skellam.pmf(k, (1.0 - p) * t, p * t)
                assert prob == pytest.approx(oracle, abs=1e-12)

    def test_two_particles_against_uniformization(self):
        t, rates = 1.0, Rates(0.25, 0.75)
        y = (-1, 2)
        gen = window_generator(2, -25, 25, rates)
        pi = master_evolve(gen, delta_distribution(gen, y), t)
        for x in ((-1, 2), (0, 2), (0, 3), (-2, 1), (1, 2)):
            oracle = float(pi[gen.index[x]])
            assert transition_probability(y, x, t, rates) == pytest.approx(
                oracle, abs=1e-10)

    def test_three_particles_against_uniformization(self):
        t, rates = 0.8, Rates(0.5, 0.5)
        y = (-2, 0, 1)
        gen = window_generator(3, -20, 20, rates)
        pi = master_evolve(gen, delta_distribution(gen, y), t)
        for x in ((-2, 0, 1), (-1, 0, 1), (-2, 0, 2), (-3, -1, 1)):
            oracle = float(pi[gen.index[x]])
            assert transition_probability(y, x, t, rates) == pytest.approx(
                oracle, abs=1e-10)

    def test_vectorized_matches_scalar(self):
        t, rates = 1.2, Rates(0.25, 0.75)
        y = (0, 3)
        xs = [(0, 3), (1, 3), (1, 4), (-1, 2)]
        batch = transition_probabilities(y, xs, t, rates)
        for x, prob in zip(xs, batch):
            assert prob == pytest.approx(
                transition_probability(y, x, t, rates), abs=1e-13)

    def test_window_normalization_near_one(self):
        norm = window_normalization((0,), 1.0, Rates(0.25, 0.75))
        assert norm == pytest.approx(1.0, abs=1e-9)
        norm2 = window_normalization((-1, 1), 1.0, Rates(0.0, 1.0))
        assert norm2 == pytest.approx(1.0, abs=1e-7)

    def test_window_targets_cover_mass(self):
        targets = window_targets((0, 2), 1.0)
        assert (0, 2) in targets
        assert len(targets) > 10

    def test_time_zero_is_delta(self):
        rates = Rates(0.25, 0.75)
        assert transition_probability((0, 1), (0, 1), 0.0, rates) == \
            pytest.approx(1.0, abs=1e-12)
        assert transition_probability((0, 1), (0, 2), 0.0, rates) == \
            pytest.approx(0.0, abs=1e-12)


class TestBethe:
    def test_single_particle_roots_of_unity(self):
        rates = Rates(0.3, 0.7)
        sols = bethe_solve(1, 5, rates)
        assert len(sols) == 5
        for sol in sols:
            assert abs(sol.roots[0] ** 5 - 1.0) < 1e-12
            assert sol.residual < 1e-12

    def test_two_particle_residuals(self):
        for L in (4, 5, 6):
            for p in (0.3, 0.5):
                rates = Rates(p, 1.0 - p)
                for sol in bethe_solve(2, L, rates):
                    assert bethe_residual(sol.roots, L, rates) < 1e-10

    def test_eigenpairs_against_generator(self):
        rates = Rates(0.3, 0.7)
        gen = ring_generator(2, 5, rates)
        dense_eigs = np.linalg.eigvals(gen.dense())
        for sol in bethe_solve(2, 5, rates):
            assert eigenpair_residual(sol, gen) < 1e-10
            assert np.min(np.abs(dense_eigs - sol.eigenvalue)) < 1e-10

    def test_eigenvector_is_nontrivial(self):
        rates = Rates(0.3, 0.7)
        sols = bethe_solve(2, 4, rates)
        energy, vec = bethe_eigenpair(sols[0])
        assert np.max(np.abs(vec)) > 1e-12

    def test_coverage_reported_between_zero_and_one(self):
        rates = Rates(0.3, 0.7)
        gen = ring_generator(2, 5, rates)
        cov = spectrum_coverage(bethe_solve(2, 5, rates), gen)
        assert 0.5 < cov <= 1.0

    def test_three_particle_solutions_verify(self):
        rates = Rates(0.3, 0.7)
        gen = ring_generator(3, 6, rates)
        sols = bethe_solve(3, 6, rates)
        assert len(sols) >= 5
        for sol in sols:
            assert eigenpair_residual(sol, gen) < 1e-9


class TestValidation:
    def test_rejects_unsorted_configuration(self):
        with pytest.raises(InvalidConfigError):
            transition_probability((2, 0), (0, 1), 1.0, Rates(0.25, 0.75))

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(InvalidConfigError):
            transition_probability((0,), (0, 1), 1.0, Rates(0.25, 0.75))


@given(
    k=st.integers(-4, 4),
    p=st.sampled_from([0.0, 0.25, 0.5]),
    t=st.floats(0.1, 2.0),
)
@settings(max_examples=15, deadline=None)
def test_property_single_particle_law(k, p, t):
    rates = Rates(p, 1.0 - p)
    prob = transition_probability((0,), (k,), t, rates)
    if p == 0.0:
        oracle = poisson.pmf(k, t)
    else:
        oracle = skellam.pmf(k, (1.0 - p) * t, p * t)
    assert prob == pytest.approx(oracle, abs=1e-10)
