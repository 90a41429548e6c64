import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pairtomo.errors import (
    DimensionMismatch,
    NoUniqueFixedPoint,
    NotComposable,
    NotOddPrime,
    TooLarge,
    Unsupported,
)
from pairtomo.groupoid import (
    AffineBisection,
    Bisection,
    Transition,
    affine_compose,
    affine_fixed_point,
    all_transitions,
    bisection_compose,
    compose,
    enumerate_affine,
    enumerate_symmetric,
    format_element,
    identity_bisection,
    inverse,
    parse_element,
    permutation_matrix,
    unit,
)


class TestTransitions:
    def test_compose_example(self):
        assert compose(Transition(2, 1), Transition(1, 0)) == Transition(2, 0)

    def test_unit_composition(self):
        assert compose(Transition(1, 1), Transition(1, 1)) == Transition(1, 1)

    def test_not_composable(self):
        with pytest.raises(NotComposable):
            compose(Transition(2, 1), Transition(0, 3))

    def test_inverse(self):
        assert inverse(Transition(2, 0)) == Transition(0, 2)
        assert inverse(Transition(1, 1)) == Transition(1, 1)
        alpha = Transition(3, 1)
        assert compose(inverse(alpha), alpha) == unit(1)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_groupoid_axioms_exhaustive(self, n):
        # associativity over every composable triple, plus unit and inverse laws
        for m, k, j, i in itertools.product(range(n), repeat=4):
            gamma, beta, alpha = Transition(m, k), Transition(k, j), Transition(j, i)
            assert compose(compose(gamma, beta), alpha) == compose(
                gamma, compose(beta, alpha)
            )
        for t in all_transitions(n):
            assert compose(t, unit(t.source)) == t
            assert compose(unit(t.target), t) == t
            assert compose(t, inverse(t)) == unit(t.target)
            assert compose(inverse(t), t) == unit(t.source)

    @given(st.integers(0, 9), st.integers(0, 9), st.integers(0, 9))
    def test_inverse_is_involutive(self, a, b, c):
        t = Transition(a, b)
        assert inverse(inverse(t)) == t
        assert compose(t, Transition(b, c)) == Transition(a, c)


class TestBisections:
    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            Bisection((0, 0, 1))

    def test_identity_and_inverse_laws(self):
        b = Bisection((2, 0, 1))
        e = identity_bisection(3)
        assert bisection_compose(e, b) == b
        assert bisection_compose(b, e) == b
        assert bisection_compose(b.inverse(), b) == e

    def test_compose_example(self):
        # sigma2 after sigma1, pointwise: both 3-cycles, inverse of each other
        b2, b1 = Bisection((1, 2, 0)), Bisection((2, 0, 1))
        assert bisection_compose(b2, b1) == identity_bisection(3)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            bisection_compose(Bisection((1, 0)), Bisection((1, 2, 0)))

    @pytest.mark.parametrize("n", [3, 4])
    def test_group_axioms_exhaustive(self, n):
        group = enumerate_symmetric(n)
        elements = set(group)
        e = identity_bisection(n)
        for b in group:
            assert bisection_compose(b, b.inverse()) == e
        for b2, b1 in itertools.product(group, repeat=2):
            assert bisection_compose(b2, b1) in elements
        for c, b, a in itertools.islice(itertools.product(group, repeat=3), 4000):
            assert bisection_compose(bisection_compose(c, b), a) == bisection_compose(
                c, bisection_compose(b, a)
            )

    def test_enumerate_counts_and_order(self):
        bis3 = enumerate_symmetric(3)
        assert len(bis3) == 6
        assert len(enumerate_symmetric(5)) == 120
        sigmas = [b.sigma for b in bis3]
        assert sigmas == sorted(sigmas)
        assert sigmas[0] == (0, 1, 2)

    def test_enumerate_bounds(self):
        with pytest.raises(Unsupported):
            enumerate_symmetric(2)
        with pytest.raises(TooLarge):
            enumerate_symmetric(9)
        assert len(enumerate_symmetric(4, max_n=4)) == 24
        with pytest.raises(TooLarge):
            enumerate_symmetric(5, max_n=4)

    def test_cycles(self):
        assert Bisection((1, 2, 0, 3)).cycles() == [[0, 1, 2], [3]]
        assert identity_bisection(3).cycles() == [[0], [1], [2]]


class TestPermutationMatrix:
    def test_identity(self):
        assert np.array_equal(permutation_matrix(identity_bisection(3)), np.eye(3))

    def test_placement(self):
        U = permutation_matrix(Bisection((1, 2, 0)))
        expected = np.zeros((3, 3))
        expected[1, 0] = expected[2, 1] = expected[0, 2] = 1
        assert np.array_equal(U, expected)

    def test_trace_counts_fixed_points(self):
        assert np.trace(permutation_matrix(Bisection((0, 2, 1)))).real == 1

    @pytest.mark.parametrize("n", [3, 4])
    def test_unitary_homomorphism(self, n):
        group = enumerate_symmetric(n)
        for b in group:
            U = permutation_matrix(b)
            assert np.array_equal(U.conj().T @ U, np.eye(n))
        for b2, b1 in itertools.product(enumerate_symmetric(3), repeat=2):
            lhs = permutation_matrix(bisection_compose(b2, b1))
            rhs = permutation_matrix(b2) @ permutation_matrix(b1)
            assert np.array_equal(lhs, rhs)


class TestAffine:
    def test_enumerate_counts(self):
        assert len(enumerate_affine(3)) == 6
        assert len(enumerate_affine(5)) == 20
        with pytest.raises(NotOddPrime):
            enumerate_affine(4)
        with pytest.raises(TooLarge):
            enumerate_affine(211)

    def test_ordering(self):
        els = enumerate_affine(3)
        assert [(g.mu, g.ell) for g in els] == [
            (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2),
        ]

    @pytest.mark.parametrize("n", [5, 7])
    def test_action_is_transitive(self, n):
        for j in range(n):
            for k in range(n):
                assert any(g(j) == k for g in enumerate_affine(n))

    @pytest.mark.parametrize("n", [5, 7])
    def test_group_law_matches_permutation_composition(self, n):
        els = enumerate_affine(n)
        for g2, g1 in itertools.islice(itertools.product(els, repeat=2), 500):
            composed = affine_compose(g2, g1)
            assert composed.sigma == bisection_compose(
                g2.to_bisection(), g1.to_bisection()
            ).sigma
        for g in els:
            assert affine_compose(g.inverse(), g).sigma == tuple(range(n))

    def test_fixed_point_examples(self):
        assert affine_fixed_point(AffineBisection(2, 0, 5)) == 0
        g = AffineBisection(2, 1, 5)
        fp = affine_fixed_point(g)
        assert fp == 4
        assert g(fp) == fp
        with pytest.raises(NoUniqueFixedPoint):
            affine_fixed_point(AffineBisection(1, 2, 5))

    @pytest.mark.parametrize("n", [7])
    def test_fixed_point_unique(self, n):
        for g in enumerate_affine(n):
            if g.mu == 1:
                continue
            fixed = [j for j in range(n) if g(j) == j]
            assert fixed == [affine_fixed_point(g)]

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_character_values(self, n):
        # trace of U(g): n for the identity, 0 for translations, 1 otherwise
        for g in enumerate_affine(n):
            tr = int(np.trace(permutation_matrix(g)).real)
            if g.mu == 1 and g.ell == 0:
                assert tr == n
            elif g.mu == 1:
                assert tr == 0
            else:
                assert tr == 1

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            AffineBisection(0, 1, 5)
        with pytest.raises(NotOddPrime):
            AffineBisection(1, 0, 6)


class TestNotation:
    def test_round_trip(self):
        b = Bisection((2, 0, 1))
        assert format_element(b) == "perm:2 0 1"
        assert parse_element("perm:2 0 1", 3) == b
        assert parse_element("2 0 1", 3) == b
        g = AffineBisection(2, 1, 5)
        assert format_element(g) == "a:2,1"
        assert parse_element("a:2,1", 5) == g

    def test_parse_rejects_wrong_n(self):
        with pytest.raises(DimensionMismatch):
            parse_element("perm:1 0", 3)
