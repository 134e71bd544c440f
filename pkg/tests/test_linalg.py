import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xalg.exceptions import DimensionMismatch, NotPrime, ValidationError
from xalg.linalg import (FpMatrix, LinearConstraints, Subspace, all_vectors, check_modulus, image, intersect,
                         inverse, kernel, quotient, random_basis_of, rank, rref, solve, subspace_sum, unit_vector)

PRIMES = st.sampled_from([2, 3, 5, 7])


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    p = draw(PRIMES)
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(0, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    return FpMatrix(np.array(entries, dtype=np.int64).reshape(rows, cols), p)


class TestModulus:
    def test_accepts_primes_up_to_97(self):
        assert check_modulus(2) == 2
        assert check_modulus(97) == 97

    @pytest.mark.parametrize('p', [0, 1, 4, 9, 101])
    def test_rejects_non_primes_and_large_primes(self, p):
        with pytest.raises(NotPrime):
            check_modulus(p)

    def test_matrix_entries_are_reduced(self):
        m = FpMatrix(np.array([[3, -1], [5, 7]]), 3)
        assert m.tolist() == [[0, 2], [2, 1]]


class TestElimination:
    def test_rank_of_repeated_rows(self):
        assert rank(FpMatrix(np.array([[1, 1], [1, 1]]), 2)) == 1

    def test_rref_drops_zero_rows(self):
        r = rref(FpMatrix(np.array([[2, 4], [1, 2]]), 5))
        assert r.tolist() == [[1, 2]]

    def test_kernel_of_a_single_equation(self):
        k = kernel(FpMatrix(np.array([[1, 1, 0]]), 2))
        assert k.dim == 2
        assert k.contains([1, 1, 0])
        assert k.contains([0, 0, 1])
        assert not k.contains([1, 0, 0])

    def test_kernel_of_empty_matrix_is_everything(self):
        assert kernel(FpMatrix(np.zeros((0, 3), dtype=np.int64), 3)).dim == 3

    def test_image_is_column_space(self):
        im = image(FpMatrix(np.array([[1, 0], [0, 0], [0, 1]]), 2))
        assert im == Subspace.span([[1, 0, 0], [0, 0, 1]], 3, 2)

    def test_solve_inconsistent_returns_none(self):
        assert solve(FpMatrix(np.array([[1, 0], [0, 0]]), 3), [0, 1]) is None

    def test_solve_sets_free_variables_to_zero(self):
        x = solve(FpMatrix(np.array([[1, 1]]), 3), [2])
        assert x.tolist() == [2, 0]

    def test_inverse(self):
        inv = inverse(FpMatrix(np.array([[1, 1], [0, 1]]), 3))
        assert inv.tolist() == [[1, 2], [0, 1]]

    def test_inverse_of_singular_matrix_raises(self):
        with pytest.raises(ValidationError):
            inverse(FpMatrix(np.array([[1, 1], [1, 1]]), 2))

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_rank_nullity(self, m):
        assert rank(m) + kernel(m).dim == m.cols

    @settings(max_examples=60, deadline=None)
    @given(matrices(), st.data())
    def test_solve_recovers_a_preimage(self, m, data):
        x = np.array(data.draw(st.lists(st.integers(0, m.modulus - 1), min_size=m.cols, max_size=m.cols)),
                     dtype=np.int64)
        b = (m.entries @ x) % m.modulus if m.cols else np.zeros(m.rows, dtype=np.int64)
        y = solve(m, b)
        assert y is not None
        assert np.array_equal((m.entries @ y) % m.modulus if m.cols else np.zeros(m.rows, dtype=np.int64), b)


class TestSubspace:
    def test_canonical_basis_makes_equal_spans_equal(self):
        a = Subspace.span([[1, 1, 0], [0, 1, 1]], 3, 2)
        b = Subspace.span([[1, 0, 1], [0, 1, 1]], 3, 2)
        assert a == b
        assert hash(a) == hash(b)

    def test_direct_construction_is_canonical(self):
        s = Subspace(3, FpMatrix.from_rows([[1, 1, 0], [1, 0, 1], [0, 1, 1]], 2))
        assert s.dim == 2
        assert s.pivots == (0, 1)
        assert s == Subspace.span([[1, 0, 1], [0, 1, 1]], 3, 2)
        assert s.contains([1, 1, 0])
        assert not s.contains([1, 0, 0])

    def test_direct_construction_checks_the_width(self):
        with pytest.raises(DimensionMismatch):
            Subspace(2, FpMatrix.identity(3, 2))

    def test_coordinates_round_trip(self):
        s = Subspace.span([[1, 2, 0], [0, 0, 1]], 3, 3)
        v = np.array([2, 1, 2])
        assert np.array_equal(s.from_coordinates(s.coordinates(v)), v)

    def test_coordinates_of_outsider_raise(self):
        s = Subspace.span([[1, 0, 0]], 3, 2)
        with pytest.raises(ValidationError):
            s.coordinates([0, 1, 0])

    def test_intersection_and_sum(self):
        a = Subspace.span([unit_vector(3, 0), unit_vector(3, 1)], 3, 2)
        b = Subspace.span([unit_vector(3, 1), unit_vector(3, 2)], 3, 2)
        assert intersect(a, b) == Subspace.span([unit_vector(3, 1)], 3, 2)
        assert subspace_sum(a, b) == Subspace.full(3, 2)

    def test_mismatched_ambient_dimension(self):
        with pytest.raises(DimensionMismatch):
            intersect(Subspace.full(2, 2), Subspace.full(3, 2))

    @settings(max_examples=40, deadline=None)
    @given(matrices(), st.integers(0, 2 ** 16))
    def test_random_basis_spans_the_same_subspace(self, m, seed):
        s = image(m)
        mixed = random_basis_of(s, np.random.default_rng(seed))
        assert Subspace.span(mixed, s.ambient_dim, s.modulus) == s


class TestQuotient:
    def test_project_kills_relations(self):
        q = quotient(3, Subspace.span([[1, 0, 0]], 3, 2))
        assert q.dim == 2
        assert not q.project([1, 0, 0]).any()
        assert q.project([1, 1, 0]).tolist() == [1, 0]

    def test_project_after_lift_is_identity(self):
        q = quotient(4, Subspace.span([[1, 1, 0, 0], [0, 0, 1, 2]], 4, 3))
        for coords in all_vectors(q.dim, 3):
            assert np.array_equal(q.project(q.lift(coords)), coords)

    def test_projection_matrix_shape(self):
        q = quotient(3, Subspace.span([[0, 1, 0]], 3, 5))
        assert q.projection_matrix().shape == (2, 3)


class TestLinearConstraints:
    def test_point_constraint_is_column_major(self):
        lc = LinearConstraints(2, 2, 3)
        lc.add_point([0, 1], [1, 2])
        system, rhs = lc.system()
        # F e_1 = (1, 2) pins the second column: variables 2 and 3
        assert system.tolist() == [[0, 0, 1, 0], [0, 0, 0, 1]]
        assert rhs.tolist() == [1, 2]

    def test_bad_factor_shape(self):
        lc = LinearConstraints(2, 3, 2)
        with pytest.raises(DimensionMismatch):
            lc.add_equation(np.eye(3, dtype=np.int64), np.eye(3, dtype=np.int64), np.zeros((3, 3)))

    def test_empty_system(self):
        system, rhs = LinearConstraints(2, 2, 2).system()
        assert system.shape == (0, 4)
        assert rhs.shape == (0,)


def test_all_vectors_is_lexicographic():
    vs = all_vectors(2, 3)
    assert vs.shape == (9, 2)
    assert vs[0].tolist() == [0, 0]
    assert vs[1].tolist() == [0, 1]
    assert vs[-1].tolist() == [2, 2]
