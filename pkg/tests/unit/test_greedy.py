"""Unit tests for greedy optimization and the exchange bijection."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matroid_bandits.core.errors import (
    AxiomViolation,
    ContractViolation,
    EnumerationLimitExceeded,
    InputError,
)
from matroid_bandits.core.greedy import (
    brute_force_max_basis,
    construct_exchange_bijection,
    evaluate_modular,
    greedy_max_basis,
    greedy_order,
)
from matroid_bandits.harness.instances import RANDOM_FAMILIES, random_matroid
from matroid_bandits.harness.verification import check_greedy_optimality, random_basis
from matroid_bandits.matroids import GraphicMatroid, UniformMatroid

from tests.conftest import NotAMatroid, small_matroids


class TestModularFunction:
    """Test evaluate_modular."""

    def test_empty_set(self):
        """Test that the empty set weighs zero."""
        assert evaluate_modular([], [0.3, 0.4]) == 0

    def test_sum(self):
        """Test a direct sum."""
        assert evaluate_modular([0, 2], [0.5, 0.9, 0.25]) == pytest.approx(0.75)

    def test_fractions_stay_exact(self):
        """Test exact arithmetic with Fraction weights."""
        w = [Fraction(1, 3), Fraction(1, 6), Fraction(1, 2)]
        assert evaluate_modular([0, 1, 2], w) == Fraction(1)


class TestGreedy:
    """Test greedy_order and greedy_max_basis."""

    def test_order_breaks_ties_by_index(self):
        """Test descending weight, ascending index on ties."""
        assert greedy_order(np.array([0.5, 0.7, 0.5])) == [1, 0, 2]
        assert greedy_order([Fraction(1, 2), Fraction(7, 10), Fraction(1, 2)]) == [1, 0, 2]

    def test_top_k(self):
        """Test uniform matroid picks the k heaviest items."""
        m = UniformMatroid(3, 2)
        assert greedy_max_basis(m, np.array([0.9, 0.5, 0.1])) == (0, 1)

    def test_lower_bound_partition(self, two_block_partition):
        """Test that the min-index item of each block wins."""
        basis = greedy_max_basis(two_block_partition, np.array([0.5, 0.4, 0.5, 0.4]))
        assert sorted(basis) == [0, 2]

    def test_equal_weights(self, triangle):
        """Test the lexicographically first basis on ties."""
        assert greedy_max_basis(triangle, np.zeros(3)) == (0, 1)

    def test_insertion_order(self, triangle):
        """Test that the basis lists items in the order they were taken."""
        assert greedy_max_basis(triangle, np.array([0.1, 0.2, 0.9])) == (2, 1)

    def test_negative_weights_still_give_basis(self, triangle):
        """Test that greedy always returns a basis."""
        basis = greedy_max_basis(triangle, np.array([-1.0, -2.0, -3.0]))
        assert triangle.is_basis(basis)

    def test_wrong_length(self, triangle):
        """Test a weight vector of the wrong size."""
        with pytest.raises(InputError):
            greedy_max_basis(triangle, np.array([0.1, 0.2]))

    def test_non_finite(self, triangle):
        """Test NaN weights."""
        with pytest.raises(InputError):
            greedy_max_basis(triangle, np.array([0.1, np.nan, 0.3]))

    def test_four_cycle_brute_force(self):
        """Test the spanning tree weight of a 4-cycle."""
        m = GraphicMatroid(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        basis, value = brute_force_max_basis(m, [4, 3, 2, 1])
        assert value == 9
        assert basis == (0, 1, 2)
        assert evaluate_modular(greedy_max_basis(m, [4, 3, 2, 1]), [4, 3, 2, 1]) == 9

    def test_brute_force_limit(self):
        """Test that enumeration is refused above the limit."""
        with pytest.raises(EnumerationLimitExceeded):
            brute_force_max_basis(UniformMatroid(21, 2), np.zeros(21))

    @settings(max_examples=40, deadline=None)
    @given(data=st.data())
    def test_greedy_matches_brute_force(self, data):
        """Test greedy optimality against exhaustive search on every family."""
        for m in small_matroids():
            w = data.draw(st.lists(st.integers(0, 5), min_size=m.ground_set_size,
                                   max_size=m.ground_set_size))
            basis = greedy_max_basis(m, w)
            _, best = brute_force_max_basis(m, w)
            assert m.is_basis(basis)
            assert evaluate_modular(basis, w) == best

    def test_greedy_matches_brute_force_on_random_instances(self):
        """Test greedy optimality on 250 random instances across the five families."""
        rng = np.random.default_rng(7)
        checked = 0
        for family in RANDOM_FAMILIES:
            for _ in range(50):
                m = random_matroid(family, int(rng.integers(3, 11)), rng)
                w = rng.integers(0, 20, m.ground_set_size)
                assert check_greedy_optimality(m, w) == [], (m, w)
                checked += 1
        assert checked == 250

    @settings(max_examples=40, deadline=None)
    @given(data=st.data(), shift=st.integers(-10, 10))
    def test_constant_shift_keeps_basis(self, data, shift):
        """Test that adding a constant to every weight leaves the greedy basis unchanged."""
        for m in small_matroids():
            w = data.draw(st.lists(st.integers(0, 5), min_size=m.ground_set_size,
                                   max_size=m.ground_set_size))
            assert greedy_max_basis(m, [x + shift for x in w]) == greedy_max_basis(m, w)

    def test_every_greedy_completion_has_full_rank(self):
        """Test that 200 greedy completions of random independent sets all have size rank."""
        rng = np.random.default_rng(11)
        for trial in range(200):
            family = RANDOM_FAMILIES[trial % len(RANDOM_FAMILIES)]
            m = random_matroid(family, int(rng.integers(3, 11)), rng)
            _, rank = brute_force_max_basis(m, np.ones(m.ground_set_size, dtype=int))
            start = random_basis(m, rng)[:int(rng.integers(0, m.rank() + 1))]
            oracle = m.oracle_for(start)
            for e in rng.permutation(m.ground_set_size):
                oracle.try_add(int(e))
            assert len(oracle) == m.rank() == rank
            assert m.is_basis(oracle.items)


class TestExchangeBijection:
    """Test construct_exchange_bijection."""

    def test_identity(self, triangle):
        """Test that a basis pairs with itself."""
        bijection = construct_exchange_bijection(triangle, (0, 1), (0, 1))
        assert bijection.pi == (0, 1)

    def test_shared_items_are_fixed_points(self, triangle):
        """Test pi on a reordered basis."""
        bijection = construct_exchange_bijection(triangle, (0, 1), (1, 0))
        assert bijection.pi == (1, 0)

    def test_single_swap(self, triangle):
        """Test a basis that differs by one edge."""
        bijection = construct_exchange_bijection(triangle, (0, 1), (0, 2))
        assert bijection.pi == (0, 1)
        assert bijection.pairs((0, 2), (0, 1)) == [(0, 0), (2, 1)]
        assert bijection.violations(triangle, (0, 1), (0, 2)) == []

    def test_indicator(self, triangle):
        """Test the pairing events."""
        bijection = construct_exchange_bijection(triangle, (0, 1), (2, 0))
        assert bijection.indicator((2, 0)) == {(2, 1): 1, (0, 0): 1}

    def test_requires_bases(self, triangle):
        """Test that non-bases are rejected."""
        with pytest.raises(ContractViolation):
            construct_exchange_bijection(triangle, (0,), (0, 1))
        with pytest.raises(ContractViolation):
            construct_exchange_bijection(triangle, (0, 1), (0, 1, 2))

    def test_broken_oracle(self):
        """Test that a system without augmentation is detected."""
        with pytest.raises(AxiomViolation):
            construct_exchange_bijection(NotAMatroid(), (0, 1), (2, 3))

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1))
    def test_random_bases(self, seed):
        """Test the bijection properties on random base pairs of every family."""
        rng = np.random.default_rng(seed)
        for m in small_matroids():
            a_star = greedy_max_basis(m, rng.random(m.ground_set_size))
            a_t = greedy_max_basis(m, rng.random(m.ground_set_size))
            bijection = construct_exchange_bijection(m, a_star, a_t)
            assert bijection.violations(m, a_star, a_t) == []
