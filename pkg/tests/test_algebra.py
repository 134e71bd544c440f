import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xalg.algebra import (Algebra, annihilator, cross_check_algebra, enumerate_morphisms, find_isomorphism,
                          ideal_closure, ideal_from_subspace, is_bijective, multiplier_algebra, nilradical,
                          product_algebra, quotient_algebra, square_ideal, subalgebra, tensor_algebra,
                          truncated_polynomial_algebra, validate_algebra, validate_morphism, zero_algebra)
from xalg.exceptions import (BadUnit, HypothesisViolated, NotAnIdeal, NotAssociative, NotCommutative,
                             NotMultiplicative)
from xalg.linalg import Subspace, unit_vector

T3 = truncated_polynomial_algebra(2, 3, 'T3')
t3_elements = st.lists(st.integers(0, 1), min_size=3, max_size=3).map(lambda v: np.array(v, dtype=np.int64))


class TestValidateAlgebra:
    def test_truncated_polynomials(self, t3, x, x2):
        assert np.array_equal(t3.mul(x, x), x2)
        assert not t3.mul(x, x2).any()
        assert np.array_equal(t3.one(), unit_vector(3, 0))
        assert t3.order == 8

    def test_power(self, t3, x):
        assert np.array_equal(t3.power(x, 2), unit_vector(3, 2))
        assert not t3.power(x, 3).any()

    def test_rejects_non_commutative_table(self):
        t = np.zeros((2, 2, 2), dtype=np.int64)
        t[0, 1] = [1, 0]
        with pytest.raises(NotCommutative) as info:
            validate_algebra(t, 2)
        assert info.value.witness == {'i': 0, 'j': 1}

    def test_rejects_non_associative_table(self):
        # e0 e0 = e1, e1 e0 = e0 e1 = e0, e1 e1 = 0 gives (e0 e0) e1 = 0 but e0 (e0 e1) = e1
        t = np.zeros((2, 2, 2), dtype=np.int64)
        t[0, 0] = [0, 1]
        t[0, 1] = t[1, 0] = [1, 0]
        with pytest.raises(NotAssociative):
            validate_algebra(t, 2)

    def test_rejects_wrong_unit(self, t3):
        with pytest.raises(BadUnit):
            validate_algebra(t3.table, 2, unit_vector(3, 1))

    def test_zero_algebra(self):
        z = zero_algebra(3, 2)
        assert z.dim == 2
        assert z.unit is None
        assert zero_algebra(3).unit is not None

    @settings(max_examples=50, deadline=None)
    @given(t3_elements, t3_elements, t3_elements)
    def test_commutative_and_associative_elements(self, a, b, c):
        assert np.array_equal(T3.mul(a, b), T3.mul(b, a))
        assert np.array_equal(T3.mul(T3.mul(a, b), c), T3.mul(a, T3.mul(b, c)))


class TestIdeals:
    def test_closure_of_x(self, ideal_x):
        assert ideal_x.dim == 2
        assert ideal_x.contains([0, 1, 1])

    def test_subspace_that_is_not_an_ideal(self, t3):
        with pytest.raises(NotAnIdeal):
            ideal_from_subspace(t3, Subspace.span([[1, 1, 0]], 3, 2))

    def test_quotient_by_x_is_the_field(self, t3, ideal_x):
        quot = quotient_algebra(t3, ideal_x)
        alg, projection = quot
        assert alg.dim == 1
        assert alg.unit.tolist() == [1]
        assert projection([1, 1, 0]).tolist() == [1]

    def test_square_ideal_and_nilradical(self, t3, ideal_x):
        n_alg, _ = subalgebra(t3, ideal_x.space, 'N')
        assert square_ideal(n_alg).dim == 1
        assert nilradical(t3).space == ideal_x.space
        assert nilradical(product_algebra(t3, t3).algebra).dim == 4

    def test_annihilator(self, t3):
        assert annihilator(t3).dim == 0
        assert annihilator(zero_algebra(2, 2)).dim == 2

    def test_subalgebra_needs_closure(self, t3):
        # (1 + x)^2 = 1 + x^2 leaves the span
        with pytest.raises(NotAnIdeal):
            subalgebra(t3, Subspace.span([[1, 1, 0]], 3, 2))

    def test_tensor_with_the_field(self, t3, f2):
        assert tensor_algebra(t3, f2).dim == 3
        assert tensor_algebra(t3, t3).dim == 9


class TestMorphisms:
    def test_rejects_non_multiplicative_matrix(self, t3, f2):
        with pytest.raises(NotMultiplicative):
            validate_morphism(t3, f2, np.array([[1, 1, 0]]))

    def test_all_endomorphisms_of_t3(self, t3):
        # f(1) = 0 forces f = 0; f(1) = 1 leaves f(x) in (x)
        found = enumerate_morphisms(t3, t3)
        assert len(found) == 5
        assert sum(is_bijective(f) for f in found) == 2

    def test_point_constraint_fixes_identity(self, t3, x):
        found = enumerate_morphisms(t3, t3, [([1, 0, 0], [1, 0, 0]), (x, x)])
        assert len(found) == 1
        assert found[0].matrix.tolist() == np.eye(3, dtype=int).tolist()

    def test_find_isomorphism(self, t3, f2):
        f, inv = find_isomorphism(t3, t3)
        assert np.array_equal((inv.entries @ f.entries) % 2, np.eye(3, dtype=np.int64))
        split = product_algebra(f2, product_algebra(f2, f2).algebra).algebra
        assert find_isomorphism(t3, split) is None
        assert find_isomorphism(t3, f2) is None


class TestMultipliers:
    def test_unital_algebra_is_its_own_multiplier_algebra(self, t3):
        mult = multiplier_algebra(t3)
        assert mult.algebra.dim == 3
        assert is_bijective(mult.mu)
        assert find_isomorphism(mult.algebra, t3) is not None

    def test_field(self, f2):
        assert multiplier_algebra(f2).algebra.dim == 1

    def test_nilpotent_algebra_violates_hypothesis(self, t3, ideal_x):
        n_alg, _ = subalgebra(t3, ideal_x.space, 'N')
        with pytest.raises(HypothesisViolated) as info:
            multiplier_algebra(n_alg)
        assert info.value.witness == {'ann_dim': 1, 'square_dim': 1, 'dim': 2}

    def test_apply(self, t3, x, x2):
        mult = multiplier_algebra(t3)
        coords = mult.mu(x)
        assert np.array_equal(mult.apply(coords, x), x2)


class TestCrossCheck:
    def test_small_algebra_is_checked_exhaustively(self, t3):
        assert cross_check_algebra(t3) == {'commutative_elements': True, 'associative_elements': True}

    def test_limits_skip_checks(self, t3):
        assert cross_check_algebra(t3, max_pair_order=8, max_triple_order=4) == {
            'commutative_elements': True, 'associative_elements': None}
        assert cross_check_algebra(t3, max_pair_order=4) == {
            'commutative_elements': None, 'associative_elements': None}

    def test_triples_run_up_to_order_512(self):
        t9 = truncated_polynomial_algebra(2, 9, 'T9')
        assert t9.order == 512
        assert cross_check_algebra(t9) == {'commutative_elements': True, 'associative_elements': True}

    def test_triples_catch_a_non_associative_table(self):
        table = np.zeros((2, 2, 2), dtype=np.int64)
        table[0, 0] = [0, 1]
        table[0, 1] = table[1, 0] = [1, 0]
        assert cross_check_algebra(Algebra(table, 2)) == {'commutative_elements': True,
                                                          'associative_elements': False}

    def test_ideal_closure_of_nothing(self, t3):
        assert ideal_closure(t3, []).dim == 0
