import numpy as np
import pytest

from xalg.exceptions import SearchTooLarge
from xalg.linalg import LinearConstraints
from xalg.search import ColumnChecks, enumerate_matrices, search_budget


class TestEnumerateMatrices:
    def test_unconstrained_scalars_in_order(self):
        found = enumerate_matrices(LinearConstraints(1, 1, 3))
        assert [m.tolist() for m in found] == [[[0]], [[1]], [[2]]]

    def test_point_constraints_pin_a_column(self):
        lc = LinearConstraints(2, 2, 2)
        lc.add_point([1, 0], [1, 1])
        found = enumerate_matrices(lc)
        assert len(found) == 4
        assert all(m[:, 0].tolist() == [1, 1] for m in found)

    def test_inconsistent_constraints(self):
        lc = LinearConstraints(1, 1, 2)
        lc.add_point([0], [1])
        assert search_budget(lc) is None
        assert enumerate_matrices(lc) == []

    def test_commutation_with_a_nilpotent(self):
        # F A = A F for A = [[0, 1], [0, 0]] leaves a I + b A
        a = np.array([[0, 1], [0, 0]])
        lc = LinearConstraints(2, 2, 2)
        lc.add_commutation(a, a)
        found = enumerate_matrices(lc)
        assert len(found) == 4
        for m in found:
            assert np.array_equal((m @ a) % 2, (a @ m) % 2)

    def test_column_checks_prune(self):
        checks = ColumnChecks()
        checks.add(0, lambda F: F[0, 0] == F[0, 1])
        found = enumerate_matrices(LinearConstraints(1, 2, 2), checks)
        assert [m.tolist() for m in found] == [[[0, 0]], [[1, 1]]]
        assert len(checks) == 1

    def test_budget(self):
        lc = LinearConstraints(2, 2, 2)
        assert search_budget(lc) == 16
        with pytest.raises(SearchTooLarge) as info:
            enumerate_matrices(lc, max_search=15, what='test')
        assert info.value.witness == {'required': 16, 'budget': 15, 'what': 'test'}

    def test_empty_matrix_has_one_solution(self):
        found = enumerate_matrices(LinearConstraints(0, 3, 5))
        assert len(found) == 1
        assert found[0].shape == (0, 3)

    def test_results_are_sorted_row_major(self):
        found = enumerate_matrices(LinearConstraints(2, 1, 2))
        keys = [tuple(m.flatten().tolist()) for m in found]
        assert keys == sorted(keys)
