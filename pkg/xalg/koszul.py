"""
Free crossed modules through the Koszul presentation.

For f: Y -> R with |Y| = n the free crossed R-module on f is presented as
C = R^n / d(L2), where L2 is the exterior square of R^n and
d(e_i ^ e_j) = f(y_i) e_j - f(y_j) e_i. Elements of R^n are stored as
n blocks of R-coordinates: index i * dim(R) + a holds the a-th coordinate
of the i-th component.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from xalg.algebra import Algebra, AlgebraMorphism, identity_morphism, ideal_closure, validate_algebra
from xalg.config import DEFAULT_MAX_PAIR_PRODUCT, DEFAULT_MAX_SEARCH
from xalg.exceptions import RNotUnital, StructureClaimFails, ValidationError, WNotCompatible
from xalg.linalg import FpMatrix, QuotientSpace, Subspace, all_vectors, as_vector, image, quotient, unit_vector
from xalg.xmod import (AlgebraAction, CrossedModule, MediatorReport, enumerate_xmod_morphisms, validate_xmod,
                       validate_xmod_morphism)

logger = logging.getLogger('xalg.koszul')


@dataclass(frozen=True)
class ExteriorSquare:
    """Exterior square of R^n with basis pairs (i, j), i < j, each carrying a copy of R."""

    base: Algebra
    n: int

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return list(itertools.combinations(range(self.n), 2))

    @property
    def rank(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def dim(self) -> int:
        return self.base.dim * self.rank

    def index(self, pair_index: int, a: int) -> int:
        return pair_index * self.base.dim + a


def exterior_square(r: Algebra, n: int) -> ExteriorSquare:
    return ExteriorSquare(r, n)


def _block(r: Algebra, n: int, i: int, v) -> np.ndarray:
    """v placed in the i-th component of R^n."""
    out = np.zeros(n * r.dim, dtype=np.int64)
    out[i * r.dim:(i + 1) * r.dim] = v
    return out


def _componentwise(r: Algebra, n: int, x, v) -> np.ndarray:
    """x . v for x in R and v in R^n."""
    blocks = np.asarray(v, dtype=np.int64).reshape(n, r.dim)
    return np.concatenate([r.mul(x, b) for b in blocks]) if n else np.zeros(0, dtype=np.int64)


def koszul_differential(r: Algebra, f_values: Sequence) -> FpMatrix:
    """
    The Koszul differential L2 -> R^n as an F_p-matrix.

    The column for e_a (e_i ^ e_j) is e_a f_i in block j minus e_a f_j in block i.
    """
    p, m, n = r.modulus, r.dim, len(f_values)
    f = [as_vector(v, p, m) for v in f_values]
    ext = exterior_square(r, n)
    d = np.zeros((n * m, ext.dim), dtype=np.int64)
    for k, (i, j) in enumerate(ext.pairs):
        for a in range(m):
            col = _block(r, n, j, r.mul(r.basis(a), f[i])) - _block(r, n, i, r.mul(r.basis(a), f[j]))
            d[:, ext.index(k, a)] = col % p
    return FpMatrix(d, p)


def theta_hat(r: Algebra, f_values: Sequence) -> np.ndarray:
    """R^n -> R sending e_i to f_i, extended R-linearly."""
    p, m, n = r.modulus, r.dim, len(f_values)
    cols = [r.mul(r.basis(a), as_vector(f_values[i], p, m)) for i in range(n) for a in range(m)]
    return np.stack(cols, axis=1) if cols else np.zeros((m, 0), dtype=np.int64)


def peiffer_generators(r: Algebra, f_values: Sequence) -> Subspace:
    """
    R-span of f_i e_j - f_j e_i, closed under multiplication by basis
    elements of R independently of the Koszul matrix.
    """
    p, m, n = r.modulus, r.dim, len(f_values)
    f = [as_vector(v, p, m) for v in f_values]
    gens = [(_block(r, n, j, f[i]) - _block(r, n, i, f[j])) % p for i, j in itertools.combinations(range(n), 2)]
    space = Subspace.span(gens, n * m, p)
    while True:
        grown = Subspace.span(space.vectors() + [_componentwise(r, n, r.basis(a), v)
                                                 for v in space.vectors() for a in range(m)], n * m, p)
        if grown.dim == space.dim:
            return space
        space = grown


@dataclass(frozen=True, eq=False)
class FreeXModPresentation:
    base: Algebra
    generators: Tuple[str, ...]
    f_values: Tuple[np.ndarray, ...]
    quotient: QuotientSpace
    differential: FpMatrix
    xm: CrossedModule

    def generator_class(self, i: int) -> np.ndarray:
        """Class of e_i in C."""
        n = len(self.f_values)
        return self.quotient.project(_block(self.base, n, i, self.base.unit))


def free_xmod(r: Algebra, f_values: Sequence, generators: Sequence[str] = (), label: str = '') -> FreeXModPresentation:
    """
    The free crossed R-module on f as R^n / d(L2).

    Multiplication is the one the Peiffer identity forces, c c' = d(c) . c'.
    """
    if r.unit is None:
        raise RNotUnital(r.label)
    p, m, n = r.modulus, r.dim, len(f_values)
    f = tuple(as_vector(v, p, m) for v in f_values)
    generators = tuple(generators) or tuple(f"y{i + 1}" for i in range(n))
    label = label or f"free({r.label}; {', '.join(generators)})"
    d = koszul_differential(r, f)
    rel = image(d)
    q = quotient(n * m, rel)
    theta = theta_hat(r, f)
    if rel.dim and ((theta @ rel.basis.entries.T) % p).any():
        raise StructureClaimFails('theta vanishes on the Koszul image', {})

    k = q.dim
    lifts = [q.lift(unit_vector(k, c)) for c in range(k)]
    table = np.zeros((k, k, k), dtype=np.int64)
    for a in range(k):
        da = (theta @ lifts[a]) % p
        for b in range(k):
            table[a, b] = q.project(_componentwise(r, n, da, lifts[b]))
    top = validate_algebra(table, p, None, f"{label}.top")
    boundary = AlgebraMorphism(top, r, FpMatrix(np.stack([(theta @ v) % p for v in lifts], axis=1)
                                                if k else np.zeros((m, 0), dtype=np.int64), p), f"{label}.d")
    act = np.zeros((m, k, k), dtype=np.int64)
    for i in range(m):
        for c in range(k):
            act[i, c] = q.project(_componentwise(r, n, r.basis(i), lifts[c]))
    xm = validate_xmod(top, r, boundary, AlgebraAction(r, top, act), label)
    logger.info("free crossed module %s: dim R^n = %d, dim im d = %d, dim C = %d", label, n * m, rel.dim, k)
    return FreeXModPresentation(r, generators, f, q, d, xm)


def free_universal_check(pres: FreeXModPresentation, target: CrossedModule, w: Sequence,
                         max_search: int = DEFAULT_MAX_SEARCH) -> MediatorReport:
    """
    The unique morphism C -> target over id_R with class(e_i) -> w_i.

    Raises:
        WNotCompatible: when the target boundary of w_i is not f_i.
    """
    r, p = pres.base, pres.base.modulus
    n, m = len(pres.f_values), r.dim
    w = [as_vector(v, p, target.top.dim) for v in w]
    for i, (wi, fi) in enumerate(zip(w, pres.f_values)):
        if not np.array_equal(target.boundary(wi), fi):
            raise WNotCompatible(i)
    checks: Dict[str, bool] = {'target_action_unital': target.action.is_unital}

    ambient = np.stack([target.act(r.basis(a), w[i]) for i in range(n) for a in range(m)], axis=1) \
        if n * m else np.zeros((target.top.dim, 0), dtype=np.int64)
    rel = pres.quotient.relations
    checks['relations_map_to_zero'] = not (rel.dim and ((ambient @ rel.basis.entries.T) % p).any())
    k = pres.xm.top.dim
    matrix = np.stack([(ambient @ pres.quotient.lift(unit_vector(k, c))) % p for c in range(k)], axis=1) \
        if k else np.zeros((target.top.dim, 0), dtype=np.int64)
    try:
        mediator = validate_xmod_morphism(pres.xm, target, matrix, identity_morphism(r), 'free mediator')
        checks['mediator_is_morphism'] = True
        checks['triangle_commutes'] = all(np.array_equal(mediator.f(pres.generator_class(i)), w[i])
                                          for i in range(n))
    except ValidationError as e:
        logger.warning("free mediator failed: %s", e.message)
        mediator = None
        checks['mediator_is_morphism'] = False

    def sends_generators_to_w(lc, _phi):
        for i in range(n):
            lc.add_point(pres.generator_class(i), w[i])

    candidates = enumerate_xmod_morphisms(pres.xm, target, identity_morphism(r), max_search, sends_generators_to_w)
    if mediator is not None:
        checks['mediator_found_by_search'] = any(c.same_map(mediator) for c in candidates)
    return MediatorReport('free mediator is unique', mediator, len(candidates), checks)


def forced_product_check(pres: FreeXModPresentation,
                         max_order: int = DEFAULT_MAX_PAIR_PRODUCT) -> Optional[bool]:
    """
    Whether c c' = d(c) . c' is independent of representatives in R^n.

    Shifting the left factor by a relation u changes the product by
    theta(u) . c', shifting the right one changes it by d(c) . u; both must
    vanish in C for every element c and every relation basis vector u.
    None when |C| exceeds ``max_order``.
    """
    top = pres.xm.top
    if top.order > max_order:
        return None
    r, p, n = pres.base, pres.base.modulus, len(pres.f_values)
    theta = theta_hat(r, pres.f_values)
    relations = pres.quotient.relations.vectors()
    if any(((theta @ u) % p).any() for u in relations):
        return False
    for c in all_vectors(top.dim, p):
        dc = (theta @ pres.quotient.lift(c)) % p
        if not all(pres.quotient.relations.contains(_componentwise(r, n, dc, u)) for u in relations):
            return False
    return True


def theta_identities(r: Algebra, f_values: Sequence,
                     pres: Optional[FreeXModPresentation] = None) -> Dict[str, bool]:
    """
    The three identities showing theta kills the relations of the
    polynomial presentation, on monomials of degree at most two:
    theta(p1, r) + theta(p2, r) = theta(p1 + p2, r), theta(p q, r) =
    theta(q, theta(p) r) and theta(p1, r1) theta(p2, r2) =
    theta(p2, r1 theta(p1) r2), where theta(p, r) = theta(p) r.

    Left-hand sides are read off the free crossed module: theta(p, r) is the
    boundary of r . [p] in C, and [y_i y_j] is the product [y_i][y_j] in C.
    Right-hand sides are computed from f in R.
    """
    pres = pres or free_xmod(r, f_values)
    C = pres.xm
    p, m, n = r.modulus, r.dim, len(f_values)
    f = [as_vector(v, p, m) for v in f_values]
    classes: Dict[Tuple[int, ...], np.ndarray] = {(i,): pres.generator_class(i) for i in range(n)}
    monomials: Dict[Tuple[int, ...], np.ndarray] = {(i,): f[i] for i in range(n)}
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        classes[(i, j)] = C.top.mul(classes[(i,)], classes[(j,)])
        monomials[(i, j)] = r.mul(f[i], f[j])

    def theta_in_c(mono, rv):
        return C.boundary(C.act(rv, classes[mono]))

    results = {'additive': True, 'balanced': True, 'multiplicative': True}
    keys = sorted(classes)
    linear = [k for k in keys if len(k) == 1]
    for a in range(m):
        rv = r.basis(a)
        for p1, p2 in itertools.product(keys, repeat=2):
            total = (monomials[p1] + monomials[p2]) % p
            if not np.array_equal((theta_in_c(p1, rv) + theta_in_c(p2, rv)) % p, r.mul(total, rv)):
                results['additive'] = False
        for (i,), (j,) in itertools.product(linear, repeat=2):
            pq = tuple(sorted((i, j)))
            if not np.array_equal(theta_in_c(pq, rv), r.mul(monomials[(j,)], r.mul(monomials[(i,)], rv))):
                results['balanced'] = False
        for b in range(m):
            r2 = r.basis(b)
            for p1, p2 in itertools.product(keys, repeat=2):
                lhs = C.boundary(C.top.mul(C.act(rv, classes[p1]), C.act(r2, classes[p2])))
                rhs = r.mul(monomials[p2], r.mul(r.mul(rv, monomials[p1]), r2))
                if not np.array_equal(lhs, rhs):
                    results['multiplicative'] = False
    return results


@dataclass
class IsoReport:
    legs: Dict[str, bool] = field(default_factory=dict)
    dims: Dict[str, int] = field(default_factory=dict)
    not_constructed: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(self.legs.values())

    def to_dict(self) -> Dict:
        return {'legs': dict(self.legs), 'dims': dict(self.dims),
                'not_constructed': list(self.not_constructed), 'passed': self.passed}


def koszul_free_induced_iso(r: Algebra, f_values: Sequence,
                            max_order: int = DEFAULT_MAX_PAIR_PRODUCT) -> IsoReport:
    """
    Cross-check the finite presentations of the free crossed module on f.

    Compares the quotient built by ``free_xmod``, the cokernel of the
    Koszul differential and an independent closure of the Peiffer
    generators; checks theta on the Koszul image, the theta identities and,
    for |C| up to ``max_order``, that the forced product is well defined.
    The tensor product over the infinite-dimensional polynomial algebra is
    not built.
    """
    p, m, n = r.modulus, r.dim, len(f_values)
    pres = free_xmod(r, f_values)
    d = pres.differential
    im_d = image(d)
    generated = peiffer_generators(r, f_values)
    theta = theta_hat(r, f_values)
    report = IsoReport(not_constructed=('tensor over the polynomial algebra k+[X]',))
    report.dims = {'R^n': n * m, 'im_d': im_d.dim, 'free_top': pres.xm.top.dim,
                   'koszul_cokernel': n * m - im_d.dim}
    report.legs['free_equals_cokernel'] = pres.xm.top.dim == n * m - im_d.dim
    report.legs['peiffer_closure_equals_im_d'] = generated == im_d
    report.legs['theta_kills_im_d'] = not ((theta @ d.entries) % p).any()
    f_ideal = ideal_closure(r, [as_vector(v, p, m) for v in f_values])
    report.legs['boundary_image_is_f_ideal'] = image(pres.xm.boundary.matrix) == f_ideal.space
    report.legs.update({f"theta_{k}": v for k, v in theta_identities(r, f_values, pres).items()})
    well_defined = forced_product_check(pres, max_order)
    if well_defined is not None:
        report.legs['forced_product_well_defined'] = well_defined
    return report
