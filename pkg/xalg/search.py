"""
Backtracking enumeration of matrices over F_p.

Every morphism search in xalg is the same problem: list all matrices F that
satisfy a system of linear equations (point constraints, commuting squares,
action compatibility) and a family of non-linear checks (multiplicativity).
The linear part is solved once into RREF; the search then walks the free
variables of the affine solution space column by column, from the last
column of F to the first, and runs every non-linear check as soon as all
columns it reads are filled in.
"""

import itertools
import logging
from collections import defaultdict
from typing import Callable, Dict, List, Optional

import numpy as np

from xalg.config import DEFAULT_MAX_SEARCH
from xalg.exceptions import SearchTooLarge
from xalg.linalg import LinearConstraints, rref_array

logger = logging.getLogger('xalg.search')

ColumnCheck = Callable[[np.ndarray], bool]


class ColumnChecks:
    """Non-linear checks keyed by the lowest column of F they read."""

    def __init__(self):
        self._checks: Dict[int, List[ColumnCheck]] = defaultdict(list)

    def add(self, column: int, check: ColumnCheck):
        self._checks[column].append(check)

    def extend(self, other: 'ColumnChecks'):
        for column, checks in other._checks.items():
            self._checks[column].extend(checks)

    def at(self, column: int) -> List[ColumnCheck]:
        return self._checks.get(column, [])

    def __len__(self):
        return sum(len(v) for v in self._checks.values())


def search_budget(constraints: LinearConstraints) -> Optional[int]:
    """Number of candidates the search will walk, or None if infeasible."""
    M, b = constraints.system()
    if M.shape[0] == 0:
        return constraints.p ** constraints.n_vars
    R, pivots = rref_array(np.concatenate([M, b.reshape(-1, 1)], axis=1), constraints.p)
    if constraints.n_vars in pivots:
        return None
    return constraints.p ** (constraints.n_vars - len(pivots))


def enumerate_matrices(constraints: LinearConstraints,
                       checks: Optional[ColumnChecks] = None,
                       max_search: int = DEFAULT_MAX_SEARCH,
                       what: str = 'search') -> List[np.ndarray]:
    """
    All matrices F satisfying the linear constraints and the column checks.

    Args:
        constraints: linear equations on vec(F), column-major.
        checks: non-linear predicates on the (partially filled) F.
        max_search: the search refuses to start when the affine solution
            space has more than this many points.
        what: label used in the SearchTooLarge witness.

    Returns:
        The solutions, sorted lexicographically by their row-major entries.
    """
    p = constraints.p
    rows, cols = constraints.rows, constraints.cols
    n = constraints.n_vars
    checks = checks or ColumnChecks()

    M, b = constraints.system()
    if M.shape[0]:
        R, pivots = rref_array(np.concatenate([M, b.reshape(-1, 1)], axis=1), p)
        if n in pivots:
            logger.debug("%s: linear constraints are inconsistent", what)
            return []
        R = R[:len(pivots)]
    else:
        R, pivots = np.zeros((0, n + 1), dtype=np.int64), []

    pivot_row = {c: r for r, c in enumerate(pivots)}
    free = np.array([v for v in range(n) if v not in pivot_row], dtype=np.int64)
    required = p ** len(free)
    if required > max_search:
        raise SearchTooLarge(required, max_search, what)
    logger.debug("%s: %d variables, %d free, %d candidates, %d checks",
                 what, n, len(free), required, len(checks))

    free_set = set(free.tolist())
    column_free = [[v for v in range(j * rows, (j + 1) * rows) if v in free_set] for j in range(cols)]
    column_pivots = [[v for v in range(j * rows, (j + 1) * rows) if v in pivot_row] for j in range(cols)]

    values = np.zeros(n, dtype=np.int64)
    F = values.reshape(cols, rows).T
    solutions: List[np.ndarray] = []

    # pivot variables only depend on free variables of larger index, and
    # columns are filled from the last to the first
    def fill(j: int):
        if j < 0:
            solutions.append(F.copy())
            return
        fj, pj = column_free[j], column_pivots[j]
        for combo in itertools.product(range(p), repeat=len(fj)):
            if fj:
                values[fj] = combo
            for v in pj:
                r = pivot_row[v]
                values[v] = (R[r, n] - R[r, free] @ values[free]) % p if len(free) else R[r, n]
            if all(check(F) for check in checks.at(j)):
                fill(j - 1)

    fill(cols - 1)
    solutions.sort(key=lambda m: tuple(m.flatten().tolist()))
    logger.debug("%s: %d solutions", what, len(solutions))
    return solutions
