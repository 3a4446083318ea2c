"""Unit tests for policy state, OMM, epsilon-greedy and the optimal policy."""

import math

import numpy as np
import pytest

from matroid_bandits.core.errors import ContractViolation, FeedbackMismatch, InputError
from matroid_bandits.core.greedy import greedy_max_basis
from matroid_bandits.environments import BernoulliEnvironment
from matroid_bandits.matroids import PartitionMatroid, UniformMatroid
from matroid_bandits.policies import (
    BanditState,
    EpsilonGreedyPolicy,
    OMMPolicy,
    OptimalPolicy,
    confidence_radius,
    create_policy,
    epsilon_greedy_select,
    initialize_state,
    omm_initialize,
    omm_select,
    omm_update,
    optimal_policy_select,
    parse_policy_spec,
    ucb_values,
)


class TestConfidenceRadius:
    """Test confidence_radius."""

    def test_first_episode(self):
        """Test that ln 1 = 0 gives a zero radius."""
        assert confidence_radius(1, 5) == 0.0

    def test_clamped_at_zero_episodes(self):
        """Test that t = 0 is clamped instead of failing."""
        assert confidence_radius(0, 1) == 0.0

    def test_unit_log(self):
        """Test t = e, s = 2."""
        assert confidence_radius(math.e, 2) == pytest.approx(1.0)

    def test_t_100(self):
        """Test t = 100, s = 4."""
        assert confidence_radius(100, 4) == pytest.approx(1.51743, abs=1e-5)

    def test_zero_count(self):
        """Test that s = 0 is a contract violation."""
        with pytest.raises(ContractViolation):
            confidence_radius(10, 0)


class TestBanditState:
    """Test BanditState and initialization."""

    def test_initialize_zero_draw(self):
        """Test all-zero initial draw."""
        st = initialize_state(UniformMatroid(3, 1), np.zeros(3))
        assert st.means.tolist() == [0.0, 0.0, 0.0]
        assert st.counts.tolist() == [1, 1, 1]
        assert st.episode == 0

    def test_initialize_copies(self):
        """Test that the state does not alias the draw."""
        w0 = np.array([0.2, 0.8])
        st = omm_initialize(UniformMatroid(2, 1), w0)
        w0[0] = 1.0
        assert st.means.tolist() == [0.2, 0.8]

    def test_initialize_wrong_size(self):
        """Test an initial draw of the wrong size."""
        with pytest.raises(ContractViolation):
            initialize_state(UniformMatroid(3, 1), np.zeros(2))

    def test_two_sample_average(self):
        """Test count 1, mean 0.4, observe 0.8."""
        st = BanditState(counts=np.array([1, 1]), means=np.array([0.4, 0.1]))
        omm_update(st, (0,), {0: 0.8})
        assert st.means[0] == pytest.approx(0.6)
        assert st.counts.tolist() == [2, 1]
        assert st.means[1] == 0.1
        assert st.episode == 1

    def test_running_mean(self, rng):
        """Test that sequential updates reproduce the batch mean."""
        observations = rng.random(11)
        st = BanditState(counts=np.array([1]), means=np.array([observations[0]]))
        for x in observations[1:]:
            st.update((0,), {0: float(x)})
        assert abs(st.means[0] - observations.mean()) < 1e-12
        assert st.counts[0] == 11

    def test_empty_basis(self):
        """Test that an empty basis only advances the episode."""
        st = BanditState(counts=np.array([1, 1]), means=np.array([0.3, 0.4]))
        st.update((), {})
        assert st.episode == 1
        assert st.means.tolist() == [0.3, 0.4]

    def test_feedback_mismatch(self):
        """Test feedback that does not cover the basis."""
        st = BanditState(counts=np.array([1, 1, 1]), means=np.zeros(3))
        with pytest.raises(FeedbackMismatch):
            st.update((0, 1), {0: 1.0})
        with pytest.raises(FeedbackMismatch):
            st.update((0,), {0: 1.0, 2: 0.0})

    @pytest.mark.parametrize("make_policy", [
        lambda m, rng: OMMPolicy(m),
        lambda m, rng: EpsilonGreedyPolicy(m, rng, 0.3),
    ])
    def test_counts_grow_by_rank(self, all_families, rng, make_policy):
        """Test that t episodes add exactly t * K pulls beyond the initial draw."""
        for m in all_families:
            env = BernoulliEnvironment(rng.random(m.ground_set_size))
            policy = make_policy(m, rng)
            policy.initialize(env.draw_full(rng))
            K = m.rank()
            for t in range(1, 51):
                basis = policy.select().basis
                policy.update(basis, env.feedback(env.draw_full(rng), basis))
                assert int((policy.state.counts - 1).sum()) == t * K
            assert policy.state.episode == 50


class TestOMM:
    """Test OMM selection."""

    def test_exploration_wins(self):
        """Test the two-item example with a rarely pulled item."""
        m = UniformMatroid(2, 1)
        st = BanditState(counts=np.array([100, 1]), means=np.array([0.9, 0.1]), episode=100)
        u = ucb_values(st)
        assert u[0] == pytest.approx(0.9 + math.sqrt(2 * math.log(100) / 100))
        assert u[1] == pytest.approx(0.1 + math.sqrt(2 * math.log(100)))
        assert u[0] == pytest.approx(1.2035, abs=1e-4)
        decision = omm_select(m, st)
        assert decision.basis == (1,)
        assert decision.ucb_values is not None

    def test_first_episode_is_greedy_on_initial_draw(self):
        """Test that zero radii reduce OMM to greedy on w0."""
        m = UniformMatroid(4, 2)
        w0 = np.array([0.1, 0.7, 0.3, 0.9])
        st = omm_initialize(m, w0)
        assert omm_select(m, st).basis == greedy_max_basis(m, w0) == (3, 1)

    def test_exact_means_select_optimum(self):
        """Test that equal large counts and exact means give the optimum."""
        m = PartitionMatroid([0, 0, 1, 1])
        st = BanditState(counts=np.full(4, 10_000), means=np.array([0.5, 0.4, 0.5, 0.4]),
                         episode=40_000)
        assert sorted(omm_select(m, st).basis) == [0, 2]

    @pytest.mark.parametrize("shift", [-3.0, 0.5, 10.0])
    def test_constant_shift_keeps_selection(self, all_families, rng, shift):
        """Test that adding a constant to every mean leaves the chosen basis unchanged."""
        for m in all_families:
            L = m.ground_set_size
            st = BanditState(counts=rng.integers(1, 50, L), means=rng.random(L), episode=200)
            shifted = BanditState(counts=st.counts.copy(), means=st.means + shift, episode=200)
            assert omm_select(m, shifted).basis == omm_select(m, st).basis

    def test_uninitialized(self):
        """Test selection without a state."""
        with pytest.raises(ContractViolation):
            omm_select(UniformMatroid(2, 1), None)
        with pytest.raises(ContractViolation):
            OMMPolicy(UniformMatroid(2, 1)).select()

    def test_policy_round(self):
        """Test one select/update round through the policy object."""
        policy = OMMPolicy(UniformMatroid(3, 2))
        policy.initialize(np.array([1.0, 0.0, 1.0]))
        decision = policy.select()
        assert decision.basis == (0, 2)
        policy.update(decision.basis, {0: 0.0, 2: 1.0})
        assert policy.state.counts.tolist() == [2, 1, 2]
        assert policy.state.episode == 1


class TestEpsilonGreedy:
    """Test epsilon-greedy selection."""

    def test_zero_epsilon_is_greedy(self, rng):
        """Test that epsilon = 0 never explores."""
        m = PartitionMatroid([0, 0, 1, 1, 2])
        st = BanditState(counts=np.ones(5, dtype=np.int64), means=np.array([0.2, 0.6, 0.5, 0.1, 0.3]))
        for _ in range(20):
            assert epsilon_greedy_select(m, st, 0.0, rng).basis == greedy_max_basis(m, st.means)

    def test_full_exploration_is_uniform(self):
        """Test item frequencies with epsilon = 1 on U(3, 1)."""
        m = UniformMatroid(3, 1)
        st = BanditState(counts=np.ones(3, dtype=np.int64), means=np.array([0.9, 0.5, 0.1]))
        rng = np.random.default_rng(7)
        counts = np.zeros(3)
        for _ in range(10_000):
            (item,) = epsilon_greedy_select(m, st, 1.0, rng).basis
            counts[item] += 1
        assert np.all(np.abs(counts / 10_000 - 1 / 3) < 0.02)

    def test_always_returns_basis(self, all_families, rng):
        """Test that exploration still yields bases."""
        for m in all_families:
            st = BanditState(counts=np.ones(m.ground_set_size, dtype=np.int64),
                             means=rng.random(m.ground_set_size))
            for _ in range(10):
                assert m.is_basis(epsilon_greedy_select(m, st, 0.5, rng).basis)

    def test_label(self, rng):
        """Test the trace label carries epsilon."""
        assert EpsilonGreedyPolicy(UniformMatroid(2, 1), rng).label == "epsilon_greedy[0.1]"
        assert EpsilonGreedyPolicy(UniformMatroid(2, 1), rng, 0.25).label == "epsilon_greedy[0.25]"

    def test_invalid_epsilon(self, rng):
        """Test epsilon outside [0, 1]."""
        with pytest.raises(InputError):
            EpsilonGreedyPolicy(UniformMatroid(2, 1), rng, 1.5)


class TestOptimalPolicy:
    """Test the optimal policy."""

    def test_lower_bound_instance(self, two_block_partition):
        """Test the min-index item per block."""
        decision = optimal_policy_select(two_block_partition, np.array([0.5, 0.4, 0.5, 0.4]))
        assert sorted(decision.basis) == [0, 2]

    def test_equal_means(self, triangle):
        """Test the tie rule."""
        assert optimal_policy_select(triangle, np.full(3, 0.5)).basis == (0, 1)

    def test_constant_choice(self, two_block_partition):
        """Test that the policy ignores feedback."""
        policy = OptimalPolicy(two_block_partition, np.array([0.1, 0.4, 0.5, 0.2]))
        policy.initialize(np.zeros(4))
        first = policy.select().basis
        policy.update(first, {e: 0.0 for e in first})
        assert policy.select().basis == first


class TestPolicySpecs:
    """Test parse_policy_spec and create_policy."""

    def test_names(self):
        """Test plain names and the epsilon mapping."""
        assert parse_policy_spec("omm") == ("omm", {})
        assert parse_policy_spec({"epsilon_greedy": {"epsilon": 0.2}}) == (
            "epsilon_greedy", {"epsilon": 0.2})
        assert parse_policy_spec({"epsilon_greedy": None}) == ("epsilon_greedy", {"epsilon": 0.1})

    @pytest.mark.parametrize("spec", [
        "ucb1",
        {"omm": {"alpha": 1}},
        {"epsilon_greedy": {"epsilon": 2.0}},
        {"epsilon_greedy": {"eps": 0.1}},
        ["omm"],
    ])
    def test_invalid(self, spec):
        """Test rejected policy specs."""
        with pytest.raises(InputError):
            parse_policy_spec(spec)

    def test_create(self, rng, two_block_partition):
        """Test the created policy classes."""
        w_bar = np.array([0.5, 0.4, 0.5, 0.4])
        assert isinstance(create_policy("omm", two_block_partition, w_bar, rng), OMMPolicy)
        assert isinstance(create_policy("optimal", two_block_partition, w_bar, rng), OptimalPolicy)
        policy = create_policy({"epsilon_greedy": {"epsilon": 0.3}}, two_block_partition, w_bar, rng)
        assert isinstance(policy, EpsilonGreedyPolicy)
        assert policy.epsilon == 0.3
