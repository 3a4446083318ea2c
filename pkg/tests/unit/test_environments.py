"""Unit tests for weight environments."""

import math

import numpy as np
import pytest

from matroid_bandits.core.errors import InputError
from matroid_bandits.environments import (
    BernoulliEnvironment,
    ClippedShiftedExponentialEnvironment,
    EmpiricalRowsEnvironment,
    environment_from_dict,
)


def clipped_mean(mu, normalization):
    """E[max(0, 1 - (mu - 1 + X) / N)] for X ~ Exp(1) and mu >= 1."""
    a = normalization - mu + 1.0
    return (a - 1.0 + math.exp(-a)) / normalization


class TestBernoulliEnvironment:
    """Test BernoulliEnvironment."""

    def test_certain_items(self, rng):
        """Test p = 1 and p = 0 items."""
        env = BernoulliEnvironment([1.0, 0.0, 1.0])
        for _ in range(20):
            assert env.draw_full(rng).tolist() == [1.0, 0.0, 1.0]

    def test_mean_is_copy(self):
        """Test that mean_vector does not expose internal state."""
        env = BernoulliEnvironment([0.3, 0.6])
        w_bar = env.mean_vector()
        w_bar[0] = 1.0
        assert env.mean_vector().tolist() == [0.3, 0.6]

    def test_sample_mean(self, rng):
        """Test the empirical frequency of draws."""
        env = BernoulliEnvironment([0.2, 0.7])
        draws = np.array([env.draw_full(rng) for _ in range(5000)])
        assert np.all(np.abs(draws.mean(axis=0) - [0.2, 0.7]) < 0.03)

    @pytest.mark.parametrize("means", [[], [1.2], [-0.1, 0.5], [float("nan")]])
    def test_invalid_means(self, means):
        """Test rejected mean vectors."""
        with pytest.raises(InputError):
            BernoulliEnvironment(means)


class TestEmpiricalRowsEnvironment:
    """Test EmpiricalRowsEnvironment."""

    def test_single_row(self, rng):
        """Test that one row is always returned."""
        env = EmpiricalRowsEnvironment([[0.2, 1.0, 0.0]])
        assert env.draw_full(rng).tolist() == [0.2, 1.0, 0.0]
        assert env.mean_vector().tolist() == [0.2, 1.0, 0.0]

    def test_column_means(self):
        """Test the mean is the column average."""
        env = EmpiricalRowsEnvironment([[1.0, 0.0], [0.0, 0.0], [0.5, 1.0], [0.5, 1.0]])
        assert env.mean_vector().tolist() == [0.5, 0.5]

    def test_draws_are_rows(self, rng):
        """Test that every draw is a recorded row."""
        rows = [[1.0, 0.0], [0.0, 1.0]]
        env = EmpiricalRowsEnvironment(rows)
        for _ in range(10):
            assert env.draw_full(rng).tolist() in rows

    def test_invalid_rows(self):
        """Test empty and out-of-range rows."""
        with pytest.raises(InputError):
            EmpiricalRowsEnvironment([])
        with pytest.raises(InputError):
            EmpiricalRowsEnvironment([[0.5, 2.0]])


class TestLatencyEnvironment:
    """Test ClippedShiftedExponentialEnvironment."""

    def test_mean_matches_closed_form(self):
        """Test the Monte Carlo mean against the exact clipped expectation."""
        env = ClippedShiftedExponentialEnvironment([2.0, 4.0], normalization=4.0,
                                                   mean_samples=200_000, mean_seed=1)
        w_bar = env.mean_vector()
        assert w_bar[0] == pytest.approx(clipped_mean(2.0, 4.0), abs=5e-3)
        assert w_bar[1] == pytest.approx(clipped_mean(4.0, 4.0), abs=5e-3)

    def test_rewards_in_unit_interval(self, rng):
        """Test that draws stay in [0, 1]."""
        env = ClippedShiftedExponentialEnvironment([0.5, 3.0, 9.0], mean_samples=1000)
        for _ in range(50):
            w = env.draw_full(rng)
            assert np.all((w >= 0.0) & (w <= 1.0))

    def test_default_normalization(self):
        """Test normalization defaults to the largest latency."""
        env = ClippedShiftedExponentialEnvironment([1.0, 5.0], mean_samples=10)
        assert env.normalization == 5.0

    def test_frozen_means(self):
        """Test that supplied means skip estimation and survive to_dict."""
        env = ClippedShiftedExponentialEnvironment([1.0, 2.0], means=[0.6, 0.4])
        assert env.mean_vector().tolist() == [0.6, 0.4]
        rebuilt = environment_from_dict(env.to_dict())
        assert rebuilt.mean_vector().tolist() == [0.6, 0.4]

    def test_same_seed_same_mean(self):
        """Test the estimate is reproducible."""
        first = ClippedShiftedExponentialEnvironment([1.0, 3.0], mean_samples=5000, mean_seed=4)
        second = ClippedShiftedExponentialEnvironment([1.0, 3.0], mean_samples=5000, mean_seed=4)
        assert first.mean_vector().tolist() == second.mean_vector().tolist()

    def test_expected_cost(self):
        """Test the cost of a basis in latency units."""
        env = ClippedShiftedExponentialEnvironment([1.0, 2.0, 3.0], normalization=10.0,
                                                   means=[0.9, 0.8, 0.5])
        assert env.expected_cost([0, 2]) == pytest.approx(1.0 + 5.0)
        assert env.expected_cost([]) == 0.0

    def test_negative_latency(self):
        """Test that negative latencies are rejected."""
        with pytest.raises(InputError):
            ClippedShiftedExponentialEnvironment([-1.0, 2.0])


class TestEnvironmentInterface:
    """Test behaviour shared by all environments."""

    def test_feedback_restricts_to_basis(self):
        """Test semi-bandit feedback."""
        env = BernoulliEnvironment([0.5, 0.5, 0.5])
        w = np.array([1.0, 0.0, 1.0])
        assert env.feedback(w, (2, 0)) == {2: 1.0, 0: 1.0}
        assert env.feedback(w, ()) == {}

    def test_expected_cost_absent_for_rewards(self):
        """Test that reward-only environments report no cost."""
        assert BernoulliEnvironment([0.5]).expected_cost([0]) is None

    def test_from_dict(self):
        """Test building environments from descriptions."""
        env = environment_from_dict({"kind": "bernoulli", "means": [0.1, 0.9]}, 2)
        assert isinstance(env, BernoulliEnvironment)
        env = environment_from_dict({"kind": "empirical_rows", "rows": [[0.0, 1.0]]})
        assert isinstance(env, EmpiricalRowsEnvironment)

    def test_size_mismatch(self):
        """Test an environment that does not cover the ground set."""
        with pytest.raises(InputError, match="covers 2 items"):
            environment_from_dict({"kind": "bernoulli", "means": [0.1, 0.9]}, 3)

    @pytest.mark.parametrize("means", ["abc", ["x", 0.1], [[0.1], 0.2], None])
    def test_malformed_means(self, means):
        """Test that non-numeric means raise InputError naming the field."""
        with pytest.raises(InputError, match="'means'"):
            environment_from_dict({"kind": "bernoulli", "means": means})

    def test_malformed_scalar(self):
        """Test that conversion errors on scalar fields become InputError."""
        spec = {"kind": "clipped_shifted_exponential", "latencies": [2.0], "normalization": "wide"}
        with pytest.raises(InputError, match=r"environment \(clipped_shifted_exponential\)"):
            environment_from_dict(spec)

    def test_unknown_kind(self):
        """Test an unknown environment kind."""
        with pytest.raises(InputError, match="Unknown environment kind"):
            environment_from_dict({"kind": "gaussian"})
