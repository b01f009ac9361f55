"""Exclusion-process simulation: determinism, conservation, height algebra."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kpzlab.asep import (
    Bernoulli,
    Explicit,
    InfiniteWindow,
    Rates,
    Ring,
    Step,
    build_initial,
    height,
    occupation,
    one_point_statistic,
    replay,
    simulate,
    simulate_ensemble,
    spawn_seeds,
)
from kpzlab.errors import InvalidConfigError, WindowEscapeError


def _window_step(half=40):
    return build_initial(InfiniteWindow(-half, half), Step())


def _window_block(half=40, fill=20):
    # a block of particles away from both edges, safe for p > 0 runs
    return build_initial(InfiniteWindow(-half, half),
                         Explicit(tuple(range(-fill, 0))))


class TestSimulate:
    def test_deterministic_for_fixed_seed(self):
        cfg = _window_block()
        a = simulate(cfg, Rates(0.2, 0.8), 5.0, seed=42)
        b = simulate(cfg, Rates(0.2, 0.8), 5.0, seed=42)
        assert a.final_positions == b.final_positions
        assert a.h0_final == b.h0_final
        assert np.array_equal(a.times, b.times)

    def test_seeds_give_distinct_trajectories(self):
        cfg = _window_block()
        a = simulate(cfg, Rates(0.2, 0.8), 5.0, seed=1)
        b = simulate(cfg, Rates(0.2, 0.8), 5.0, seed=2)
        assert a.final_positions != b.final_positions

    def test_particle_count_conserved(self):
        cfg = _window_block()
        traj = simulate(cfg, Rates(0.3, 0.7), 8.0, seed=0)
        assert len(traj.final_positions) == len(cfg.positions)
        assert len(set(traj.final_positions)) == len(traj.final_positions)

    def test_replay_matches_final_state(self):
        cfg = _window_block()
        traj = simulate(cfg, Rates(0.3, 0.7), 6.0, seed=3)
        positions, h0 = replay(traj, 6.0)
        assert tuple(sorted(positions)) == tuple(sorted(traj.final_positions))
        assert h0 == traj.h0_final

    def test_replay_midway_is_between_states(self):
        cfg = _window_step()
        traj = simulate(cfg, Rates(0.0, 1.0), 6.0, seed=5)
        positions, h0 = replay(traj, 3.0)
        assert 0 <= h0 <= traj.h0_final  # TASEP current is nondecreasing
        assert len(positions) == len(cfg.positions)

    def test_window_escape_raises(self):
        cfg = build_initial(InfiniteWindow(-3, 3), Step())
        with pytest.raises(WindowEscapeError):
            simulate(cfg, Rates(0.0, 1.0), 50.0, seed=0)

    def test_tasep_moves_only_right(self):
        cfg = _window_step()
        traj = simulate(cfg, Rates(0.0, 1.0), 4.0, seed=7)
        assert np.all(traj.directions >= 0)

    def test_h0_is_even(self):
        cfg = _window_block()
        for seed in range(5):
            traj = simulate(cfg, Rates(0.25, 0.75), 6.0, seed=seed)
            assert traj.h0_final % 2 == 0


class TestRing:
    def test_ring_conserves_particles(self):
        cfg = build_initial(Ring(10), Explicit((0, 1, 2)))
        traj = simulate(cfg, Rates(0.4, 0.6), 20.0, seed=0)
        assert len(traj.final_positions) == 3
        assert all(0 <= x < 10 for x in traj.final_positions)

    def test_uniform_occupancy_long_run(self):
        # the uniform measure on ring configurations is invariant, so the
        # time-averaged occupancy of any site tends to N/L
        cfg = build_initial(Ring(6), Explicit((0, 1)))
        counts = np.zeros(6)
        n_runs = 400
        for seed in spawn_seeds(99, n_runs):
            traj = simulate(cfg, Rates(0.3, 0.7), 25.0, seed=int(seed))
            for x in traj.final_positions:
                counts[x] += 1
        density = counts / n_runs
        assert np.max(np.abs(density - 2.0 / 6.0)) < 0.08


class TestHeight:
    def test_height_increments_are_unit(self):
        cfg = _window_block()
        traj = simulate(cfg, Rates(0.3, 0.7), 5.0, seed=11)
        hf = height(traj, 5.0, -30, 30)
        assert set(np.unique(np.diff(hf.values))) <= {-1, 1}

    def test_initial_step_height_is_absolute_value(self):
        cfg = _window_step()
        traj = simulate(cfg, Rates(0.3, 0.7), 0.0, seed=0)
        hf = height(traj, 0.0, -20, 20)
        assert np.array_equal(hf.values, np.abs(np.arange(-20, 21)))

    def test_height_anchor_at_origin(self):
        cfg = _window_step()
        traj = simulate(cfg, Rates(0.0, 1.0), 4.0, seed=2)
        hf = height(traj, 4.0, 0, 0)
        assert hf.at(0) == traj.h0_final


class TestStatistics:
    def test_one_point_statistic_rejects_bad_time(self):
        with pytest.raises(InvalidConfigError):
            one_point_statistic(4, 0.0)

    def test_one_point_statistic_value(self):
        # (N_t - t/4) / (2^{-4/3} t^{1/3}) with N_t = h0/2
        t = 8.0
        assert one_point_statistic(4, t) == pytest.approx(
            (2.0 - 2.0) / (2 ** (-4 / 3) * 2.0))
        assert one_point_statistic(8, t) == pytest.approx(
            2.0 / (2 ** (-4 / 3) * 2.0))

    def test_ensemble_matches_individual_runs(self):
        cfg = _window_step()
        seeds = spawn_seeds(7, 4)
        h0s, finals = simulate_ensemble(cfg, Rates(0.0, 1.0), 5.0, seeds,
                                        keep_positions=True)
        for h0, fin, seed in zip(h0s, finals, seeds):
            traj = simulate(cfg, Rates(0.0, 1.0), 5.0, int(seed),
                            record_events=False)
            assert h0 == traj.h0_final
            assert tuple(fin) == tuple(traj.final_positions)


class TestInitialData:
    def test_step_fills_negative_sites(self):
        cfg = build_initial(InfiniteWindow(-5, 5), Step())
        assert cfg.positions == (-5, -4, -3, -2, -1)

    def test_bernoulli_density(self):
        cfg = build_initial(InfiniteWindow(-500, 500), Bernoulli(0.3, seed=1))
        frac = len(cfg.positions) / 1001
        assert abs(frac - 0.3) < 0.06

    def test_occupation_is_indicator(self):
        cfg = build_initial(InfiniteWindow(-5, 5), Step())
        occ = occupation(cfg)
        assert occ.values == tuple(1 if s < 0 else 0 for s in occ.sites)


@given(seed=st.integers(0, 2**31 - 1), p=st.sampled_from([0.0, 0.25, 0.5]))
@settings(max_examples=20, deadline=None)
def test_property_height_parity_and_conservation(seed, p):
    cfg = build_initial(InfiniteWindow(-25, 25),
                        Explicit(tuple(range(-15, 0))))
    traj = simulate(cfg, Rates(p, 1.0 - p), 3.0, seed=seed)
    assert len(traj.final_positions) == 15
    assert traj.h0_final % 2 == 0
    hf = height(traj, 3.0, -10, 10)
    assert set(np.unique(np.diff(hf.values))) <= {-1, 1}


@given(root=st.integers(0, 2**31 - 1))
@settings(max_examples=20, deadline=None)
def test_property_seed_substreams_distinct(root):
    seeds = spawn_seeds(root, 16)
    assert len(set(int(s) for s in seeds)) == 16
