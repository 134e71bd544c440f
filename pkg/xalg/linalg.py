"""
Exact linear algebra over a prime field F_p.

Dense numpy int64 arrays reduced mod p carry every matrix and vector. The
canonical form of a subspace is the reduced row echelon form of a basis
(pivot entries 1, pivot columns otherwise zero), so two subspaces are equal
exactly when their canonical bases are the same grid.
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from xalg.exceptions import DimensionMismatch, ModulusMismatch, NotPrime, ValidationError

MAX_MODULUS = 97


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_modulus(p: int) -> int:
    p = int(p)
    if not (2 <= p <= MAX_MODULUS) or not is_prime(p):
        raise NotPrime(p)
    return p


def inv_mod(a: int, p: int) -> int:
    a = int(a) % p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


def as_vector(values, p: int, length: Optional[int] = None) -> np.ndarray:
    """Coerce a sequence of integers into a reduced int64 vector."""
    v = np.asarray(values, dtype=np.int64).reshape(-1) % p
    if length is not None and v.shape[0] != length:
        raise DimensionMismatch('vector length', length, int(v.shape[0]))
    return v


def unit_vector(n: int, i: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.int64)
    v[i] = 1
    return v


@dataclass(frozen=True)
class Fp:
    """An element of the prime field F_p."""

    modulus: int
    value: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, 'value', int(self.value) % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.modulus != self.modulus:
                raise ModulusMismatch(self.modulus, other.modulus)
            return other.value
        return int(other)

    def __add__(self, other):
        return Fp(self.modulus, self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.modulus, self.value - self._coerce(other))

    def __rsub__(self, other):
        return Fp(self.modulus, self._coerce(other) - self.value)

    def __mul__(self, other):
        return Fp(self.modulus, self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(self.modulus, -self.value)

    def inverse(self) -> 'Fp':
        return Fp(self.modulus, inv_mod(self.value, self.modulus))

    def __truediv__(self, other):
        return self * Fp(self.modulus, self._coerce(other)).inverse()

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """Immutable dense matrix over F_p."""

    entries: np.ndarray
    modulus: int

    def __post_init__(self):
        p = check_modulus(self.modulus)
        arr = np.array(self.entries, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise DimensionMismatch('matrix rank', 2, arr.ndim)
        arr %= p
        arr.setflags(write=False)
        object.__setattr__(self, 'entries', arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: Optional[int] = None) -> 'FpMatrix':
        rows = [list(r) for r in rows]
        if not rows:
            return cls(np.zeros((0, cols or 0), dtype=np.int64), p)
        return cls(np.array(rows, dtype=np.int64), p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> 'FpMatrix':
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> 'FpMatrix':
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    @property
    def T(self) -> 'FpMatrix':
        return FpMatrix(self.entries.T, self.modulus)

    def entry(self, i: int, j: int) -> Fp:
        return Fp(self.modulus, int(self.entries[i, j]))

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j].copy()

    def __matmul__(self, other):
        if isinstance(other, FpMatrix):
            if other.modulus != self.modulus:
                raise ModulusMismatch(self.modulus, other.modulus)
            return FpMatrix(self.entries @ other.entries, self.modulus)
        return (self.entries @ np.asarray(other, dtype=np.int64)) % self.modulus

    def __add__(self, other: 'FpMatrix') -> 'FpMatrix':
        return FpMatrix(self.entries + other.entries, self.modulus)

    def __sub__(self, other: 'FpMatrix') -> 'FpMatrix':
        return FpMatrix(self.entries - other.entries, self.modulus)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FpMatrix) and other.modulus == self.modulus
                and other.shape == self.shape and np.array_equal(other.entries, self.entries))

    def __hash__(self):
        return hash((self.modulus, self.shape, self.entries.tobytes()))

    def tolist(self) -> List[List[int]]:
        return self.entries.tolist()

    def __repr__(self):
        return f"FpMatrix(F_{self.modulus}, {self.tolist()})"


def rref_array(a: np.ndarray, p: int, n_pivot_cols: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
    """RREF over GF(p) of a raw array; returns (all rows, pivot_cols)."""
    A = np.array(a, dtype=np.int64, copy=True) % p
    m, n = A.shape
    limit = n if n_pivot_cols is None else n_pivot_cols
    r = 0
    pivots: List[int] = []
    for c in range(limit):
        if r >= m:
            break
        nonzero = np.nonzero(A[r:, c])[0]
        if nonzero.size == 0:
            continue
        piv = r + int(nonzero[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * inv_mod(A[r, c], p)) % p
        col = A[:, c].copy()
        col[r] = 0
        rows_to_clear = np.nonzero(col)[0]
        if rows_to_clear.size:
            A[rows_to_clear] = (A[rows_to_clear] - np.outer(col[rows_to_clear], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rref(m: FpMatrix) -> FpMatrix:
    """Reduced row echelon form with zero rows dropped."""
    R, pivots = rref_array(m.entries, m.modulus)
    return FpMatrix(R[:len(pivots)], m.modulus) if pivots else FpMatrix.zeros(0, m.cols, m.modulus)


def rank(m: FpMatrix) -> int:
    return len(rref_array(m.entries, m.modulus)[1])


@dataclass(frozen=True, eq=False)
class Subspace:
    """
    A subspace of F_p^ambient_dim held by its canonical RREF basis.

    Any spanning rows may be passed as ``basis``; they are reduced on
    construction and the pivots recorded.
    """

    ambient_dim: int
    basis: FpMatrix
    pivots: Tuple[int, ...] = field(init=False, default=())

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise DimensionMismatch('subspace ambient dimension', self.ambient_dim, self.basis.cols)
        R, pivots = rref_array(self.basis.entries, self.basis.modulus)
        object.__setattr__(self, 'basis', FpMatrix(R[:len(pivots)], self.basis.modulus))
        object.__setattr__(self, 'pivots', tuple(pivots))

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int, p: int) -> 'Subspace':
        rows = [as_vector(v, p, ambient_dim) for v in vectors]
        if not rows:
            return cls.zero(ambient_dim, p)
        return cls(ambient_dim, FpMatrix(np.vstack(rows), p))

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> 'Subspace':
        return cls(ambient_dim, FpMatrix.zeros(0, ambient_dim, p))

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> 'Subspace':
        return cls(ambient_dim, FpMatrix.identity(ambient_dim, p))

    @property
    def modulus(self) -> int:
        return self.basis.modulus

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> List[np.ndarray]:
        return [self.basis.entries[i].copy() for i in range(self.dim)]

    def reduce(self, v) -> np.ndarray:
        """Subtract basis multiples until every pivot coordinate is zero."""
        p = self.modulus
        r = as_vector(v, p, self.ambient_dim)
        for row, c in enumerate(self.pivots):
            if r[c]:
                r = (r - r[c] * self.basis.entries[row]) % p
        return r

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of a member in the canonical basis."""
        v = as_vector(v, self.modulus, self.ambient_dim)
        if not self.contains(v):
            raise ValidationError("vector is not in the subspace", {'vector': v.tolist()})
        return v[list(self.pivots)].copy() if self.pivots else np.zeros(0, dtype=np.int64)

    def from_coordinates(self, coords) -> np.ndarray:
        coords = as_vector(coords, self.modulus, self.dim)
        if self.dim == 0:
            return np.zeros(self.ambient_dim, dtype=np.int64)
        return (coords @ self.basis.entries) % self.modulus

    def is_subspace_of(self, other: 'Subspace') -> bool:
        return all(other.contains(v) for v in self.vectors())

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and other.ambient_dim == self.ambient_dim
                and other.basis == self.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.ambient_dim}, basis={self.basis.tolist()})"


def contains(a: Subspace, v) -> bool:
    return a.contains(v)


def kernel(m: FpMatrix) -> Subspace:
    """Right null space {x : m x = 0} as a Subspace of F_p^cols."""
    p = m.modulus
    n = m.cols
    if m.rows == 0:
        return Subspace.full(n, p)
    R, pivots = rref_array(m.entries, p)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        x = np.zeros(n, dtype=np.int64)
        x[f] = 1
        for row, pc in enumerate(pivots):
            x[pc] = (-R[row, f]) % p
        basis.append(x)
    return Subspace.span(basis, n, p)


def image(m: FpMatrix) -> Subspace:
    """Column space of m inside F_p^rows."""
    return Subspace.span([m.entries[:, j] for j in range(m.cols)], m.rows, m.modulus)


def solve(m: FpMatrix, rhs) -> Optional[np.ndarray]:
    """
    One solution of m x = rhs, or None when the system is inconsistent.

    Free variables are set to zero so the answer is reproducible.
    """
    p = m.modulus
    b = as_vector(rhs, p, m.rows)
    n = m.cols
    if m.rows == 0:
        return np.zeros(n, dtype=np.int64)
    aug = np.concatenate([m.entries, b.reshape(-1, 1)], axis=1)
    R, pivots = rref_array(aug, p)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = R[row, n]
    return x


def inverse(m: FpMatrix) -> FpMatrix:
    """Gauss-Jordan inverse over F_p. Raises if singular."""
    n = m.rows
    if m.cols != n:
        raise DimensionMismatch('square matrix', (n, n), m.shape)
    aug = np.concatenate([m.entries, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots = rref_array(aug, m.modulus, n_pivot_cols=n)
    if len(pivots) != n:
        raise ValidationError("matrix is singular", {'rank': len(pivots), 'n': n})
    return FpMatrix(R[:, n:], m.modulus)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    p = a.modulus
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim, p)
    # x = A^T u = B^T w  <=>  [A^T | -B^T] (u, w) = 0
    stacked = np.concatenate([a.basis.entries.T, (-b.basis.entries.T) % p], axis=1)
    null = kernel(FpMatrix(stacked, p))
    vectors = [(u[:a.dim] @ a.basis.entries) % p for u in null.vectors()]
    return Subspace.span(vectors, a.ambient_dim, p)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    return Subspace.span(a.vectors() + b.vectors(), a.ambient_dim, a.modulus)


def _check_same(a: Subspace, b: Subspace):
    if a.modulus != b.modulus:
        raise ModulusMismatch(a.modulus, b.modulus)
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch('ambient dimension', a.ambient_dim, b.ambient_dim)


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    """F_p^ambient_dim modulo a relation subspace, with the non-pivot section."""

    ambient_dim: int
    relations: Subspace
    section: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.section)

    @property
    def modulus(self) -> int:
        return self.relations.modulus

    def project(self, v) -> np.ndarray:
        return project(self, v)

    def lift(self, coords) -> np.ndarray:
        return lift(self, coords)

    def projection_matrix(self) -> FpMatrix:
        cols = [self.project(unit_vector(self.ambient_dim, k)) for k in range(self.ambient_dim)]
        if not cols:
            return FpMatrix.zeros(self.dim, 0, self.modulus)
        return FpMatrix(np.stack(cols, axis=1).reshape(self.dim, self.ambient_dim), self.modulus)


def quotient(ambient_dim: int, relations: Subspace) -> QuotientSpace:
    if relations.ambient_dim != ambient_dim:
        raise DimensionMismatch('relation ambient dimension', ambient_dim, relations.ambient_dim)
    pivots = set(relations.pivots)
    section = tuple(j for j in range(ambient_dim) if j not in pivots)
    return QuotientSpace(ambient_dim, relations, section)


def project(q: QuotientSpace, v) -> np.ndarray:
    reduced = q.relations.reduce(v)
    return reduced[list(q.section)].copy() if q.section else np.zeros(0, dtype=np.int64)


def lift(q: QuotientSpace, coords) -> np.ndarray:
    coords = as_vector(coords, q.modulus, q.dim)
    v = np.zeros(q.ambient_dim, dtype=np.int64)
    if q.section:
        v[list(q.section)] = coords
    return v


def random_basis_of(space: Subspace, rng: np.random.Generator) -> List[np.ndarray]:
    """A random (generally non-canonical) basis of the same subspace."""
    p = space.modulus
    k = space.dim
    while True:
        g = rng.integers(0, p, size=(k, k))
        if k == 0 or rank(FpMatrix(g, p)) == k:
            break
    mixed = (g @ space.basis.entries) % p if k else np.zeros((0, space.ambient_dim), dtype=np.int64)
    return [row.copy() for row in mixed]


class LinearConstraints:
    """
    Linear equations on an unknown rows x cols matrix F over F_p.

    F is flattened column-major (variable index j*rows + a holds F[a, j]), so
    the variables of column j are contiguous and a column-by-column search can
    finish columns in order.
    """

    def __init__(self, rows: int, cols: int, p: int):
        self.rows = rows
        self.cols = cols
        self.p = p
        self._blocks: List[np.ndarray] = []
        self._rhs: List[np.ndarray] = []

    @property
    def n_vars(self) -> int:
        return self.rows * self.cols

    def add_terms(self, terms: Sequence[Tuple[np.ndarray, np.ndarray, int]], value=None):
        """Add  sum_k c_k * L_k F M_k = value  (value defaults to zero)."""
        block = None
        shape = None
        for L, M, coeff in terms:
            L = np.asarray(L, dtype=np.int64)
            M = np.asarray(M, dtype=np.int64)
            if L.ndim != 2 or L.shape[1] != self.rows:
                raise DimensionMismatch('left factor columns', self.rows, L.shape)
            if M.ndim != 2 or M.shape[0] != self.cols:
                raise DimensionMismatch('right factor rows', self.cols, M.shape)
            term = coeff * np.kron(M.T, L).reshape(L.shape[0] * M.shape[1], self.n_vars)
            block = term if block is None else block + term
            shape = (L.shape[0], M.shape[1])
        if block is None or block.shape[0] == 0:
            return
        if value is None:
            rhs = np.zeros(block.shape[0], dtype=np.int64)
        else:
            rhs = np.asarray(value, dtype=np.int64).reshape(shape).flatten(order='F')
        self._blocks.append(block % self.p)
        self._rhs.append(rhs % self.p)

    def add_equation(self, L, M, value):
        """L F M = value."""
        self.add_terms([(L, M, 1)], value)

    def add_point(self, x, y):
        """F x = y."""
        self.add_equation(np.eye(self.rows, dtype=np.int64), np.asarray(x).reshape(-1, 1), np.asarray(y).reshape(-1, 1))

    def add_commutation(self, A, B):
        """F A = B F, with A acting on the source side and B on the target side."""
        self.add_terms([(np.eye(self.rows, dtype=np.int64), A, 1),
                        (B, np.eye(self.cols, dtype=np.int64), -1)])

    def system(self) -> Tuple[np.ndarray, np.ndarray]:
        if not self._blocks:
            return np.zeros((0, self.n_vars), dtype=np.int64), np.zeros(0, dtype=np.int64)
        return np.vstack(self._blocks) % self.p, np.concatenate(self._rhs) % self.p


def all_vectors(n: int, p: int) -> np.ndarray:
    """Every vector of F_p^n as the rows of a (p**n, n) array, lexicographic."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * n).reshape(n, -1).T
    return grids.astype(np.int64)
