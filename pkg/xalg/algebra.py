"""
Finite-dimensional commutative associative algebras over F_p.

An algebra is a structure-constant table ``table[i, j] = e_i * e_j`` of shape
(n, n, n). Units are optional. Every derived algebra (subalgebras, quotients,
products, multipliers) goes back through ``validate_algebra`` so nothing
downstream ever holds an unchecked table.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from xalg.config import DEFAULT_MAX_PAIR_ORDER, DEFAULT_MAX_SEARCH, DEFAULT_MAX_TRIPLE_ORDER
from xalg.exceptions import (BadUnit, DimensionMismatch, HypothesisViolated, ModulusMismatch,
                             NotAnIdeal, NotAssociative, NotCommutative, NotCommutativeMultipliers,
                             NotMultiplicative, ValidationError)
from xalg.linalg import (FpMatrix, LinearConstraints, QuotientSpace, Subspace, all_vectors, as_vector,
                         check_modulus, image, inverse, kernel, quotient, rank, solve, unit_vector)
from xalg.search import ColumnChecks, enumerate_matrices

logger = logging.getLogger('xalg.algebra')


def first_mismatch(a: np.ndarray, b: np.ndarray) -> Optional[Tuple[int, ...]]:
    bad = np.argwhere(np.any(a != b, axis=-1)) if a.ndim > 1 else np.argwhere(a != b)
    if bad.size == 0:
        return None
    return tuple(int(x) for x in bad[0])


@dataclass(frozen=True, eq=False)
class Algebra:
    """
    Commutative associative algebra given by structure constants.

    Build instances with ``validate_algebra``; the constructor only freezes
    and reduces the arrays.
    """

    table: np.ndarray
    modulus: int
    unit: Optional[np.ndarray] = None
    label: str = ''

    def __post_init__(self):
        p = check_modulus(self.modulus)
        t = np.array(self.table, dtype=np.int64, copy=True)
        if t.ndim != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]):
            raise DimensionMismatch('structure constants shape', '(n, n, n)', t.shape)
        t %= p
        t.setflags(write=False)
        object.__setattr__(self, 'table', t)
        if self.unit is not None:
            u = as_vector(self.unit, p, t.shape[0])
            u.setflags(write=False)
            object.__setattr__(self, 'unit', u)

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    @property
    def order(self) -> int:
        return self.modulus ** self.dim

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def mul(self, x, y) -> np.ndarray:
        return np.einsum('i,j,ijk->k', np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64),
                         self.table) % self.modulus

    def mul_matrix(self, x) -> np.ndarray:
        """Matrix of y -> x*y."""
        return np.einsum('i,ijk->kj', np.asarray(x, dtype=np.int64), self.table) % self.modulus

    def basis(self, i: int) -> np.ndarray:
        return unit_vector(self.dim, i)

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def one(self) -> np.ndarray:
        if self.unit is None:
            raise ValidationError(f"{self.label or 'algebra'} has no unit", {'algebra': self.label})
        return self.unit.copy()

    def power(self, x, k: int) -> np.ndarray:
        """x**k for k >= 1 by repeated squaring."""
        result = None
        base = as_vector(x, self.modulus, self.dim)
        while k:
            if k & 1:
                result = base.copy() if result is None else self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def element(self, coords) -> 'AlgebraElement':
        return AlgebraElement(self, as_vector(coords, self.modulus, self.dim))

    def describe(self) -> Dict:
        return {'label': self.label, 'dim': self.dim, 'modulus': self.modulus,
                'unit': None if self.unit is None else self.unit.tolist()}

    def __repr__(self):
        return f"Algebra({self.label or '?'}, dim={self.dim}, F_{self.modulus})"


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    parent: Algebra
    coords: np.ndarray

    def _other(self, other) -> np.ndarray:
        if isinstance(other, AlgebraElement):
            if other.parent is not self.parent:
                raise ValidationError("elements of different algebras", {})
            return other.coords
        return as_vector(other, self.parent.modulus, self.parent.dim)

    def __add__(self, other):
        return AlgebraElement(self.parent, (self.coords + self._other(other)) % self.parent.modulus)

    def __sub__(self, other):
        return AlgebraElement(self.parent, (self.coords - self._other(other)) % self.parent.modulus)

    def __neg__(self):
        return AlgebraElement(self.parent, (-self.coords) % self.parent.modulus)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return AlgebraElement(self.parent, (self.coords * int(other)) % self.parent.modulus)
        return AlgebraElement(self.parent, self.parent.mul(self.coords, self._other(other)))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement) and other.parent is self.parent
                and np.array_equal(other.coords, self.coords))

    def __hash__(self):
        return hash((id(self.parent), self.coords.tobytes()))

    def __repr__(self):
        return f"{self.coords.tolist()} in {self.parent.label or 'algebra'}"


def validate_algebra(table, modulus: int, unit=None, label: str = '') -> Algebra:
    """
    Check commutativity, associativity and the unit on basis elements.

    Raises:
        NotCommutative, NotAssociative, BadUnit naming the witnessing indices.
    """
    a = Algebra(table, modulus, unit, label)
    t, p = a.table, a.modulus
    bad = first_mismatch(t, t.transpose(1, 0, 2))
    if bad is not None:
        raise NotCommutative(bad[0], bad[1], label)
    # (e_i e_j) e_l versus e_i (e_j e_l)
    left = np.einsum('ijm,mlk->ijlk', t, t) % p
    right = np.einsum('jlm,imk->ijlk', t, t) % p
    bad = first_mismatch(left, right)
    if bad is not None:
        raise NotAssociative(bad[0], bad[1], bad[2], label)
    if a.unit is not None:
        products = np.einsum('i,ijk->jk', a.unit, t) % p
        bad = first_mismatch(products, np.eye(a.dim, dtype=np.int64))
        if bad is not None:
            raise BadUnit(bad[0], label)
    return a


def find_unit(table, modulus: int) -> Optional[np.ndarray]:
    """The unit of a structure-constant table, if there is one."""
    t = np.asarray(table, dtype=np.int64) % modulus
    n = t.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    # sum_i u_i t[i, j, k] = delta_jk
    system = t.reshape(n, n * n).T
    u = solve(FpMatrix(system, modulus), np.eye(n, dtype=np.int64).reshape(-1))
    return u


def zero_algebra(modulus: int, dim: int = 0, label: str = '') -> Algebra:
    """The dim-dimensional algebra with zero multiplication."""
    unit = np.zeros(0, dtype=np.int64) if dim == 0 else None
    return validate_algebra(np.zeros((dim, dim, dim), dtype=np.int64), modulus, unit, label or f"zero{dim}")


def truncated_polynomial_algebra(modulus: int, degree: int, label: str = '') -> Algebra:
    """F_p[x]/(x^degree) on the basis 1, x, ..., x^(degree-1)."""
    t = np.zeros((degree, degree, degree), dtype=np.int64)
    for i in range(degree):
        for j in range(degree):
            if i + j < degree:
                t[i, j, i + j] = 1
    return validate_algebra(t, modulus, unit_vector(degree, 0) if degree else None,
                            label or f"F{modulus}[x]/(x^{degree})")


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    """Linear map between algebras; build with ``validate_morphism``."""

    source: Algebra
    target: Algebra
    matrix: FpMatrix
    label: str = ''

    def __call__(self, v) -> np.ndarray:
        return self.matrix @ as_vector(v, self.source.modulus, self.source.dim)

    @property
    def entries(self) -> np.ndarray:
        return self.matrix.entries

    def same_map(self, other: 'AlgebraMorphism') -> bool:
        return self.matrix == other.matrix

    def __repr__(self):
        return f"AlgebraMorphism({self.label or '?'}: {self.source.label} -> {self.target.label})"


def validate_morphism(source: Algebra, target: Algebra, matrix, label: str = '') -> AlgebraMorphism:
    if source.modulus != target.modulus:
        raise ModulusMismatch(source.modulus, target.modulus)
    m = matrix if isinstance(matrix, FpMatrix) else FpMatrix(np.asarray(matrix, dtype=np.int64).reshape(
        target.dim, source.dim), source.modulus)
    if m.shape != (target.dim, source.dim):
        raise DimensionMismatch(f"{label or 'morphism'} matrix shape", (target.dim, source.dim), m.shape)
    F, p = m.entries, source.modulus
    # F(e_i e_j) versus F(e_i) F(e_j)
    lhs = np.einsum('ka,ija->ijk', F, source.table) % p
    rhs = np.einsum('ai,bj,abk->ijk', F, F, target.table) % p
    bad = first_mismatch(lhs, rhs)
    if bad is not None:
        raise NotMultiplicative(bad[0], bad[1], label)
    return AlgebraMorphism(source, target, m, label)


def identity_morphism(a: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism(a, a, FpMatrix.identity(a.dim, a.modulus), f"id_{a.label}")


def zero_morphism(source: Algebra, target: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism(source, target, FpMatrix.zeros(target.dim, source.dim, source.modulus), '0')


def compose(g: AlgebraMorphism, f: AlgebraMorphism) -> AlgebraMorphism:
    """g after f."""
    if f.target.dim != g.source.dim:
        raise DimensionMismatch('composable morphisms', f.target.dim, g.source.dim)
    return AlgebraMorphism(f.source, g.target, g.matrix @ f.matrix, f"{g.label}.{f.label}")


def is_bijective(f: AlgebraMorphism) -> bool:
    return f.source.dim == f.target.dim and rank(f.matrix) == f.source.dim


@dataclass(frozen=True, eq=False)
class Ideal:
    parent: Algebra
    space: Subspace
    label: str = ''

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains(self, v) -> bool:
        return self.space.contains(v)

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.parent is self.parent and other.space == self.space

    def __hash__(self):
        return hash((id(self.parent), self.space))

    def __repr__(self):
        return f"Ideal({self.label or '?'} of {self.parent.label}, dim={self.dim})"


def ideal_from_subspace(parent: Algebra, space: Subspace, label: str = '') -> Ideal:
    """Wrap a subspace as an ideal after checking e_i * b stays inside."""
    for b, vec in enumerate(space.vectors()):
        for i in range(parent.dim):
            if not space.contains(parent.mul(parent.basis(i), vec)):
                raise NotAnIdeal(i, b, label)
    return Ideal(parent, space, label)


def ideal_closure(parent: Algebra, generators: Sequence, label: str = '') -> Ideal:
    """
    Smallest ideal containing the generators.

    Starts from their span and adds e_i * v for every basis element until the
    dimension stops growing.
    """
    p, n = parent.modulus, parent.dim
    vectors = [as_vector(g, p, n) for g in generators]
    space = Subspace.span(vectors, n, p)
    while True:
        products = [parent.mul(parent.basis(i), v) for v in space.vectors() for i in range(n)]
        grown = Subspace.span(space.vectors() + products, n, p)
        if grown.dim == space.dim:
            break
        space = grown
    logger.debug("ideal closure of %d generators in %s has dim %d", len(vectors), parent.label, space.dim)
    return Ideal(parent, space, label)


def zero_ideal(parent: Algebra) -> Ideal:
    return Ideal(parent, Subspace.zero(parent.dim, parent.modulus), '0')


def whole_ideal(parent: Algebra) -> Ideal:
    return Ideal(parent, Subspace.full(parent.dim, parent.modulus), parent.label)


def square_ideal(a: Algebra) -> Ideal:
    """A^2, the span of all products."""
    products = [a.table[i, j] for i in range(a.dim) for j in range(a.dim)]
    return Ideal(a, Subspace.span(products, a.dim, a.modulus), f"{a.label}^2")


def subalgebra(parent: Algebra, space: Subspace, label: str = '') -> Tuple[Algebra, AlgebraMorphism]:
    """
    A multiplicatively closed subspace as a standalone algebra.

    The basis is the canonical basis of ``space``; the second return value is
    the inclusion into ``parent``.
    """
    p = parent.modulus
    vectors = space.vectors()
    k = len(vectors)
    t = np.zeros((k, k, k), dtype=np.int64)
    for a in range(k):
        for b in range(a, k):
            prod = parent.mul(vectors[a], vectors[b])
            if not space.contains(prod):
                raise NotAnIdeal(a, b, label)
            t[a, b] = t[b, a] = space.coordinates(prod)
    unit = None
    if parent.unit is not None and space.contains(parent.unit):
        unit = space.coordinates(parent.unit)
    else:
        unit = find_unit(t, p) if k else np.zeros(0, dtype=np.int64)
    sub = validate_algebra(t, p, unit, label)
    incl_entries = space.basis.entries.T if k else np.zeros((parent.dim, 0), dtype=np.int64)
    inclusion = AlgebraMorphism(sub, parent, FpMatrix(incl_entries, p), f"{label}->{parent.label}")
    return sub, inclusion


def ideal_as_algebra(ideal: Ideal) -> Tuple[Algebra, AlgebraMorphism]:
    return subalgebra(ideal.parent, ideal.space, ideal.label or f"ideal of {ideal.parent.label}")


@dataclass(frozen=True, eq=False)
class QuotientAlgebra:
    algebra: Algebra
    projection: AlgebraMorphism
    space: QuotientSpace
    ideal: Ideal

    def lift(self, coords) -> np.ndarray:
        return self.space.lift(coords)

    def __iter__(self):
        # unpack as (algebra, projection)
        return iter((self.algebra, self.projection))


def quotient_algebra(parent: Algebra, ideal: Ideal, label: str = '') -> QuotientAlgebra:
    """parent / ideal on the representatives left out of the ideal's pivots."""
    if ideal.space.ambient_dim != parent.dim:
        raise DimensionMismatch('ideal ambient dimension', parent.dim, ideal.space.ambient_dim)
    p = parent.modulus
    q = quotient(parent.dim, ideal.space)
    k = q.dim
    t = np.zeros((k, k, k), dtype=np.int64)
    for a in range(k):
        for b in range(a, k):
            prod = parent.mul(q.lift(unit_vector(k, a)), q.lift(unit_vector(k, b)))
            t[a, b] = t[b, a] = q.project(prod)
    unit = q.project(parent.unit) if parent.unit is not None else find_unit(t, p)
    label = label or f"{parent.label}/{ideal.label or 'I'}"
    alg = validate_algebra(t, p, unit, label)
    projection = AlgebraMorphism(parent, alg, q.projection_matrix(), f"{parent.label}->{label}")
    logger.debug("quotient %s has dim %d", label, k)
    return QuotientAlgebra(alg, projection, q, ideal)


@dataclass(frozen=True, eq=False)
class ProductAlgebra:
    algebra: Algebra
    proj_first: AlgebraMorphism
    proj_second: AlgebraMorphism
    inj_first: AlgebraMorphism
    inj_second: AlgebraMorphism


def product_algebra(a: Algebra, b: Algebra, label: str = '') -> ProductAlgebra:
    """a x b with componentwise multiplication; a's coordinates come first."""
    if a.modulus != b.modulus:
        raise ModulusMismatch(a.modulus, b.modulus)
    p, m, n = a.modulus, a.dim, b.dim
    t = np.zeros((m + n, m + n, m + n), dtype=np.int64)
    t[:m, :m, :m] = a.table
    t[m:, m:, m:] = b.table
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = np.concatenate([a.unit, b.unit])
    label = label or f"{a.label}x{b.label}"
    alg = validate_algebra(t, p, unit, label)
    eye = np.eye(m + n, dtype=np.int64)
    return ProductAlgebra(
        algebra=alg,
        proj_first=AlgebraMorphism(alg, a, FpMatrix(eye[:m], p), 'pr1'),
        proj_second=AlgebraMorphism(alg, b, FpMatrix(eye[m:], p), 'pr2'),
        inj_first=AlgebraMorphism(a, alg, FpMatrix(eye[:, :m], p), 'in1'),
        inj_second=AlgebraMorphism(b, alg, FpMatrix(eye[:, m:], p), 'in2'),
    )


def tensor_algebra(a: Algebra, b: Algebra, label: str = '') -> Algebra:
    """a (x)_k b; basis element e_i (x) f_j sits at index i * dim(b) + j."""
    n = a.dim * b.dim
    t = np.einsum('ijk,lmn->iljmkn', a.table, b.table).reshape(n, n, n)
    unit = np.kron(a.unit, b.unit) if a.unit is not None and b.unit is not None else None
    return validate_algebra(t, a.modulus, unit, label or f"{a.label}(x){b.label}")


def kernel_ideal(f: AlgebraMorphism) -> Ideal:
    return ideal_from_subspace(f.source, kernel(f.matrix), f"ker {f.label}")


def image_space(f: AlgebraMorphism) -> Subspace:
    return image(f.matrix)


def annihilator(a: Algebra) -> Ideal:
    """{x : x e_i = 0 for every i} as the kernel of the stacked right multiplications."""
    if a.dim == 0:
        return zero_ideal(a)
    # (x e_i)_k = sum_j x_j t[j, i, k]
    stacked = np.concatenate([a.table[:, i, :].T for i in range(a.dim)], axis=0)
    return ideal_from_subspace(a, kernel(FpMatrix(stacked, a.modulus)), f"Ann({a.label})")


def nilradical(a: Algebra) -> Ideal:
    """
    Nilpotent elements, as the kernel of x -> x**(p**k) with p**k > dim.

    Frobenius is additive in characteristic p and fixes scalars of F_p, so
    this power map is linear and its kernel is computed from basis images.
    """
    p, n = a.modulus, a.dim
    if n == 0:
        return zero_ideal(a)
    exponent = p
    while exponent <= n:
        exponent *= p
    columns = [a.power(a.basis(i), exponent) for i in range(n)]
    frob = FpMatrix(np.stack(columns, axis=1), p)
    return ideal_from_subspace(a, kernel(frob), f"nil({a.label})")


@dataclass(frozen=True, eq=False)
class MultiplierAlgebra:
    """M(R) together with mu: R -> M(R) and the multipliers behind each basis element."""

    algebra: Algebra
    mu: AlgebraMorphism
    maps: Tuple[np.ndarray, ...]
    source: Algebra

    def apply(self, coords, r) -> np.ndarray:
        """delta(r) for the multiplier with the given coordinates."""
        delta = sum((int(c) * m for c, m in zip(coords, self.maps)),
                    np.zeros((self.source.dim, self.source.dim), dtype=np.int64))
        return (delta @ np.asarray(r, dtype=np.int64)) % self.source.modulus


def _vec(m: np.ndarray) -> np.ndarray:
    return m.flatten(order='F')


def _unvec(v: np.ndarray, n: int) -> np.ndarray:
    return np.asarray(v, dtype=np.int64).reshape(n, n).T.copy()


def multiplier_algebra(r: Algebra) -> MultiplierAlgebra:
    """
    The multipliers of r: linear maps delta with delta(xy) = delta(x) y.

    Requires Ann(r) = 0 or r^2 = r. Composition of multipliers is checked
    commutative before the table is handed to ``validate_algebra``.
    """
    p, n = r.modulus, r.dim
    ann_dim = annihilator(r).dim
    square_dim = square_ideal(r).dim
    if ann_dim != 0 and square_dim != n:
        raise HypothesisViolated(r.label, ann_dim, square_dim, n)

    constraints = LinearConstraints(n, n, p)
    eye = np.eye(n, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            # delta(e_i e_j) - e_j * delta(e_i) = 0
            constraints.add_terms([(eye, r.table[i, j].reshape(n, 1), 1),
                                   (r.mul_matrix(r.basis(j)), eye[:, i].reshape(n, 1), -1)])
    system, _ = constraints.system()
    solutions = kernel(FpMatrix(system, p)) if system.shape[0] else Subspace.full(n * n, p)
    maps = tuple(_unvec(v, n) for v in solutions.vectors())
    k = len(maps)

    t = np.zeros((k, k, k), dtype=np.int64)
    for a in range(k):
        for b in range(k):
            ab = (maps[a] @ maps[b]) % p
            if not np.array_equal(ab, (maps[b] @ maps[a]) % p):
                raise NotCommutativeMultipliers(a, b)
            t[a, b] = solutions.coordinates(_vec(ab))
    unit = solutions.coordinates(_vec(eye))
    label = f"M({r.label})"
    m_alg = validate_algebra(t, p, unit, label)
    mu_cols = [solutions.coordinates(_vec(r.mul_matrix(r.basis(i)))) for i in range(n)]
    mu_entries = np.stack(mu_cols, axis=1) if n else np.zeros((k, 0), dtype=np.int64)
    mu = validate_morphism(r, m_alg, mu_entries, f"mu_{r.label}")
    logger.info("multiplier algebra of %s has dim %d", r.label, k)
    return MultiplierAlgebra(m_alg, mu, maps, r)


def multiplicativity_checks(source: Algebra, target: Algebra) -> ColumnChecks:
    """
    One check per basis pair (i, k): F(e_i e_k) == F(e_i) F(e_k).

    Each check is filed under the lowest column it reads, so it fires as
    soon as the backtracking search has filled columns i, k and the support
    of e_i e_k.
    """
    checks = ColumnChecks()
    p = source.modulus
    for i in range(source.dim):
        for k in range(i, source.dim):
            c = source.table[i, k]
            support = np.nonzero(c)[0]
            column = min([i, k] + ([int(support[0])] if support.size else []))

            def check(F, i=i, k=k, c=c):
                return np.array_equal((F @ c) % p, target.mul(F[:, i], F[:, k]))

            checks.add(column, check)
    return checks


def search_morphisms(source: Algebra, target: Algebra, constraints: Optional[LinearConstraints] = None,
                     max_search: int = DEFAULT_MAX_SEARCH, what: str = '') -> List[np.ndarray]:
    """Matrices of every algebra morphism source -> target meeting the linear constraints."""
    if source.modulus != target.modulus:
        raise ModulusMismatch(source.modulus, target.modulus)
    constraints = constraints or LinearConstraints(target.dim, source.dim, source.modulus)
    return enumerate_matrices(constraints, multiplicativity_checks(source, target), max_search,
                              what or f"Hom({source.label}, {target.label})")


def enumerate_morphisms(source: Algebra, target: Algebra, constraints: Sequence[Tuple] = (),
                        max_search: int = DEFAULT_MAX_SEARCH) -> List[AlgebraMorphism]:
    """
    Every algebra morphism source -> target with f(x) = y for each (x, y).

    Raises:
        SearchTooLarge: when the unconstrained part of the search space has
            more than ``max_search`` points.
    """
    lc = LinearConstraints(target.dim, source.dim, source.modulus)
    for x, y in constraints:
        lc.add_point(as_vector(x, source.modulus, source.dim), as_vector(y, source.modulus, target.dim))
    return [AlgebraMorphism(source, target, FpMatrix(m, source.modulus), f"f{n}")
            for n, m in enumerate(search_morphisms(source, target, lc, max_search))]


def find_isomorphism(a: Algebra, b: Algebra,
                     max_search: int = DEFAULT_MAX_SEARCH) -> Optional[Tuple[AlgebraMorphism, AlgebraMorphism]]:
    """First bijective morphism a -> b in search order, with its inverse."""
    if a.dim != b.dim or a.modulus != b.modulus:
        return None
    for f in enumerate_morphisms(a, b, max_search=max_search):
        if is_bijective(f):
            inv = validate_morphism(b, a, inverse(f.matrix), f"{f.label}^-1")
            return f, inv
    return None


def cross_check_algebra(a: Algebra, max_pair_order: int = DEFAULT_MAX_PAIR_ORDER,
                        max_triple_order: int = DEFAULT_MAX_TRIPLE_ORDER) -> Dict[str, Optional[bool]]:
    """
    Re-check commutativity over all element pairs and associativity over all
    element triples when the algebra is small enough; None marks a skipped check.

    For a fixed pair (x, y), (xy)c = x(yc) for every c is the matrix identity
    L_xy = L_x L_y, so the triple check runs one element x at a time.
    """
    results: Dict[str, Optional[bool]] = {'commutative_elements': None, 'associative_elements': None}
    p = a.modulus
    if a.order > max_pair_order:
        return results
    E = all_vectors(a.dim, p)
    half = np.einsum('ai,ijk->ajk', E, a.table) % p
    P = np.einsum('ajk,bj->abk', half, E) % p
    results['commutative_elements'] = bool(np.array_equal(P, P.transpose(1, 0, 2)))
    if a.order <= max_triple_order:
        # L[n] is the matrix of y -> (n-th element) y
        L = half.transpose(0, 2, 1)
        results['associative_elements'] = all(
            np.array_equal(np.einsum('yi,ijk->ykj', P[x], a.table) % p, np.matmul(L[x], L) % p)
            for x in range(E.shape[0]))
    return results
