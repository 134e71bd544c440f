"""
Actions, crossed modules and their morphisms.

An action of R on C is stored as ``act[i, p] = e_i . c_p`` (shape
(dim R, dim C, dim C)); the top algebra keeps its own multiplication. A
crossed module (C, R, d) is accepted only after equivariance and the
Peiffer identity d(c) . c' = c c' hold on every pair of basis elements.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from xalg.algebra import (Algebra, AlgebraMorphism, Ideal, first_mismatch, compose, ideal_as_algebra,
                          ideal_from_subspace, identity_morphism, image_space, kernel_ideal,
                          multiplier_algebra, quotient_algebra, search_morphisms, subalgebra,
                          validate_morphism, zero_algebra)
from xalg.config import DEFAULT_MAX_PAIR_PRODUCT, DEFAULT_MAX_SEARCH
from xalg.exceptions import (BadAction, DimensionMismatch, ModulusMismatch, NotAnIdeal, NotEquivariant,
                             NotXModMorphism, PeifferFails, StructureClaimFails)
from xalg.linalg import FpMatrix, LinearConstraints, all_vectors

logger = logging.getLogger('xalg.xmod')


@dataclass(frozen=True, eq=False)
class AlgebraAction:
    base: Algebra
    top: Algebra
    act: np.ndarray

    def __post_init__(self):
        a = np.array(self.act, dtype=np.int64, copy=True) % self.base.modulus
        expected = (self.base.dim, self.top.dim, self.top.dim)
        if a.shape != expected:
            raise DimensionMismatch('action constants shape', expected, a.shape)
        a.setflags(write=False)
        object.__setattr__(self, 'act', a)

    def apply(self, r, c) -> np.ndarray:
        return np.einsum('i,p,ipq->q', np.asarray(r, dtype=np.int64), np.asarray(c, dtype=np.int64),
                         self.act) % self.base.modulus

    def matrix(self, r) -> np.ndarray:
        """Matrix of c -> r . c on the top algebra."""
        return np.einsum('i,ipq->qp', np.asarray(r, dtype=np.int64), self.act) % self.base.modulus

    @property
    def is_unital(self) -> bool:
        """True when the base has a unit acting as the identity."""
        if self.base.unit is None:
            return False
        return bool(np.array_equal(self.matrix(self.base.unit), np.eye(self.top.dim, dtype=np.int64)))


def validate_action(base: Algebra, top: Algebra, act, label: str = '') -> AlgebraAction:
    """
    Check (rr').c = r.(r'.c) and r.(cc') = (r.c)c' on basis elements.

    Raises:
        BadAction: naming the failing axiom and basis indices.
    """
    if base.modulus != top.modulus:
        raise ModulusMismatch(base.modulus, top.modulus)
    action = AlgebraAction(base, top, act)
    A, p = action.act, base.modulus
    # (e_i e_j) . c_q versus e_i . (e_j . c_q)
    lhs = np.einsum('ijm,mqs->ijqs', base.table, A) % p
    rhs = np.einsum('jqm,ims->ijqs', A, A) % p
    bad = first_mismatch(lhs, rhs)
    if bad is not None:
        raise BadAction('associativity', {'i': bad[0], 'j': bad[1], 'p': bad[2]}, label)
    # e_i . (c_q c_s) versus (e_i . c_q) c_s
    lhs = np.einsum('qsm,imt->iqst', top.table, A) % p
    rhs = np.einsum('iqm,mst->iqst', A, top.table) % p
    bad = first_mismatch(lhs, rhs)
    if bad is not None:
        raise BadAction('multiplicativity', {'i': bad[0], 'p': bad[1], 'q': bad[2]}, label)
    return action


def multiplication_action(r: Algebra) -> AlgebraAction:
    return AlgebraAction(r, r, r.table)


def trivial_action(base: Algebra, top: Algebra) -> AlgebraAction:
    return AlgebraAction(base, top, np.zeros((base.dim, top.dim, top.dim), dtype=np.int64))


@dataclass(frozen=True, eq=False)
class CrossedModule:
    top: Algebra
    base: Algebra
    boundary: AlgebraMorphism
    action: AlgebraAction
    label: str = ''

    @property
    def modulus(self) -> int:
        return self.base.modulus

    def act(self, r, c) -> np.ndarray:
        return self.action.apply(r, c)

    def describe(self) -> Dict:
        return {
            'label': self.label,
            'top': self.top.describe(),
            'base': self.base.describe(),
            'boundary': self.boundary.matrix.tolist(),
            'unital_action': self.action.is_unital,
        }

    def __repr__(self):
        return f"CrossedModule({self.label or '?'}: {self.top.label} -> {self.base.label})"


def validate_xmod(top: Algebra, base: Algebra, boundary: AlgebraMorphism, action: AlgebraAction,
                  label: str = '') -> CrossedModule:
    """
    Validate (top, base, boundary) with the given action as a crossed module.

    Raises:
        NotEquivariant(i, p): d(e_i . c_p) != e_i d(c_p).
        PeifferFails(p, q): d(c_p) . c_q != c_p c_q.
    """
    if boundary.source.dim != top.dim or boundary.target.dim != base.dim:
        raise DimensionMismatch(f"{label or 'crossed module'} boundary shape",
                                (base.dim, top.dim), boundary.matrix.shape)
    if action.base.dim != base.dim or action.top.dim != top.dim:
        raise DimensionMismatch(f"{label or 'crossed module'} action shape",
                                (base.dim, top.dim), (action.base.dim, action.top.dim))
    action = validate_action(base, top, action.act, label)
    p, D, A = base.modulus, boundary.entries, action.act
    # the boundary must be multiplicative as well
    validate_morphism(top, base, boundary.matrix, label or 'boundary')

    lhs = np.einsum('kq,ipq->ipk', D, A) % p
    rhs = np.einsum('qp,iqk->ipk', D, base.table) % p
    bad = first_mismatch(lhs, rhs)
    if bad is not None:
        raise NotEquivariant(bad[0], bad[1], label)
    # d(c_p) . c_q versus c_p c_q
    lhs = np.einsum('ip,iqs->pqs', D, A) % p
    bad = first_mismatch(lhs, top.table)
    if bad is not None:
        raise PeifferFails(bad[0], bad[1], label)
    logger.debug("validated crossed module %s (top dim %d, base dim %d)", label, top.dim, base.dim)
    return CrossedModule(top, base, boundary, action, label)


def cross_check_xmod(xm: CrossedModule, max_pair_product: int = DEFAULT_MAX_PAIR_PRODUCT) -> Dict[str, Optional[bool]]:
    """
    Equivariance over all element pairs (r, c) and Peiffer over all pairs
    (c, c') when |C| * |R| fits in ``max_pair_product``.

    The Peiffer identity for a fixed c and every c' is the matrix identity
    (action of d(c)) = (multiplication by c), compared one c at a time.
    """
    results: Dict[str, Optional[bool]] = {'equivariance_elements': None, 'peiffer_elements': None}
    C, R, p = xm.top, xm.base, xm.modulus
    if C.order * R.order > max_pair_product:
        return results
    EC, ER = all_vectors(C.dim, p), all_vectors(R.dim, p)
    D = xm.boundary.entries
    rc = np.einsum('xi,yp,ipq->xyq', ER, EC, xm.action.act) % p
    lhs = np.einsum('kq,xyq->xyk', D, rc) % p
    dc = (EC @ D.T) % p
    rhs = np.einsum('xi,yj,ijk->xyk', ER, dc, R.table) % p
    results['equivariance_elements'] = bool(np.array_equal(lhs, rhs))
    A = xm.action.act
    results['peiffer_elements'] = all(
        np.array_equal(np.einsum('i,ipq->pq', dc[x], A) % p, np.einsum('i,ipq->pq', EC[x], C.table) % p)
        for x in range(EC.shape[0]))
    return results


def inclusion_xmod(r: Algebra, ideal: Ideal, label: str = '') -> CrossedModule:
    """(I, R, inclusion) with R acting on I by multiplication."""
    top, incl = ideal_as_algebra(ideal)
    space = ideal.space
    vectors = space.vectors()
    act = np.zeros((r.dim, top.dim, top.dim), dtype=np.int64)
    for i in range(r.dim):
        for q, v in enumerate(vectors):
            act[i, q] = space.coordinates(r.mul(r.basis(i), v))
    return validate_xmod(top, r, incl, AlgebraAction(r, top, act),
                         label or f"{ideal.label or 'I'}->{r.label}")


def zero_module_xmod(r: Algebra, act, label: str = '') -> CrossedModule:
    """An R-module M, given by action constants, as (M, R, 0) with zero multiplication."""
    act = np.asarray(act, dtype=np.int64)
    m = act.shape[1] if act.ndim == 3 else 0
    top = zero_algebra(r.modulus, m, f"M{m}")
    boundary = AlgebraMorphism(top, r, FpMatrix.zeros(r.dim, m, r.modulus), '0')
    return validate_xmod(top, r, boundary, AlgebraAction(r, top, act.reshape(r.dim, m, m)),
                         label or f"{top.label}->{r.label}")


def identity_xmod(r: Algebra) -> CrossedModule:
    return validate_xmod(r, r, identity_morphism(r), multiplication_action(r), f"id_{r.label}")


def zero_xmod(r: Algebra) -> CrossedModule:
    """(0, R, 0)."""
    return zero_module_xmod(r, np.zeros((r.dim, 0, 0), dtype=np.int64), f"0->{r.label}")


def multiplication_xmod(r: Algebra) -> CrossedModule:
    """(R, M(R), mu) with a multiplier acting by evaluation."""
    mult = multiplier_algebra(r)
    act = np.stack([m.T for m in mult.maps]) if mult.maps else np.zeros((0, r.dim, r.dim), dtype=np.int64)
    return validate_xmod(r, mult.algebra, mult.mu, AlgebraAction(mult.algebra, r, act),
                         f"{r.label}->M({r.label})")


def boundary_image_is_ideal(xm: CrossedModule) -> Ideal:
    """The image of the boundary, checked to be an ideal of the base."""
    try:
        return ideal_from_subspace(xm.base, image_space(xm.boundary), f"d({xm.top.label})")
    except NotAnIdeal as e:
        raise StructureClaimFails('boundary image is an ideal', e.witness)


@dataclass(frozen=True, eq=False)
class KernelModule:
    """ker d as an ideal of C with its induced R/d(C)-action."""

    ideal: Ideal
    algebra: Algebra
    quotient_base: Algebra
    action: AlgebraAction


def kernel_module(xm: CrossedModule) -> KernelModule:
    """
    ker d with the module structure over R/d(C).

    Raises:
        StructureClaimFails: when ker d is not an ideal or d(C) does not act
            trivially on it.
    """
    try:
        ker = kernel_ideal(xm.boundary)
    except NotAnIdeal as e:
        raise StructureClaimFails('kernel of the boundary is an ideal', e.witness)
    C, R = xm.top, xm.base
    for p_idx in range(C.dim):
        dc = xm.boundary(C.basis(p_idx))
        for b, k in enumerate(ker.space.vectors()):
            if xm.act(dc, k).any():
                raise StructureClaimFails('image of the boundary acts trivially on its kernel',
                                          {'c': p_idx, 'kernel_row': b})
    image = boundary_image_is_ideal(xm)
    quot = quotient_algebra(R, image, f"{R.label}/d({C.label})")
    k_alg, _ = subalgebra(C, ker.space, f"ker({xm.label})")
    vectors = ker.space.vectors()
    act = np.zeros((quot.algebra.dim, len(vectors), len(vectors)), dtype=np.int64)
    for a in range(quot.algebra.dim):
        r = quot.lift(np.eye(quot.algebra.dim, dtype=np.int64)[a])
        for b, k in enumerate(vectors):
            act[a, b] = ker.space.coordinates(xm.act(r, k))
    action = validate_action(quot.algebra, k_alg, act, f"ker({xm.label})")
    return KernelModule(ker, k_alg, quot.algebra, action)


@dataclass(frozen=True, eq=False)
class XModMorphism:
    source: CrossedModule
    target: CrossedModule
    f: AlgebraMorphism
    phi: AlgebraMorphism

    def key(self):
        return (tuple(self.phi.entries.flatten().tolist()), tuple(self.f.entries.flatten().tolist()))

    def same_map(self, other: 'XModMorphism') -> bool:
        return self.f.same_map(other.f) and self.phi.same_map(other.phi)

    def describe(self) -> Dict:
        return {'f': self.f.matrix.tolist(), 'phi': self.phi.matrix.tolist()}


def validate_xmod_morphism(source: CrossedModule, target: CrossedModule, f, phi,
                           label: str = '') -> XModMorphism:
    """
    Check d'f = phi d and f(r.c) = phi(r).f(c) on basis elements.

    ``f`` and ``phi`` may be AlgebraMorphisms or bare matrices.
    """
    f = validate_morphism(source.top, target.top, f.matrix if isinstance(f, AlgebraMorphism) else f,
                          label or 'f')
    phi = validate_morphism(source.base, target.base, phi.matrix if isinstance(phi, AlgebraMorphism) else phi,
                            label or 'phi')
    p = source.modulus
    F, Phi = f.entries, phi.entries
    square_l = (target.boundary.entries @ F) % p
    square_r = (Phi @ source.boundary.entries) % p
    bad = first_mismatch(square_l.T, square_r.T)
    if bad is not None:
        raise NotXModMorphism('boundary square', {'p': bad[0]}, label)
    # f(e_i . c_q) versus phi(e_i) . f(c_q)
    lhs = np.einsum('kt,iqt->iqk', F, source.action.act) % p
    rhs = np.einsum('ji,tq,jtk->iqk', Phi, F, target.action.act) % p
    bad = first_mismatch(lhs, rhs)
    if bad is not None:
        raise NotXModMorphism('action', {'i': bad[0], 'p': bad[1]}, label)
    return XModMorphism(source, target, f, phi)


def identity_xmod_morphism(xm: CrossedModule) -> XModMorphism:
    return XModMorphism(xm, xm, identity_morphism(xm.top), identity_morphism(xm.base))


def compose_xmod_morphisms(g: XModMorphism, f: XModMorphism) -> XModMorphism:
    """g after f, re-validated."""
    return validate_xmod_morphism(f.source, g.target, compose(g.f, f.f), compose(g.phi, f.phi))


ExtraConstraints = Callable[[LinearConstraints, AlgebraMorphism], None]


def top_constraints(source: CrossedModule, target: CrossedModule, phi: AlgebraMorphism) -> LinearConstraints:
    """Linear conditions on f for (f, phi) to be a crossed-module morphism."""
    p = source.modulus
    lc = LinearConstraints(target.top.dim, source.top.dim, p)
    # d' F = Phi d
    lc.add_equation(target.boundary.entries, np.eye(source.top.dim, dtype=np.int64),
                    (phi.entries @ source.boundary.entries) % p)
    # F A_s = A'_{phi(e_s)} F
    for s in range(source.base.dim):
        lc.add_commutation(source.action.matrix(source.base.basis(s)),
                           target.action.matrix(phi(source.base.basis(s))))
    return lc


def enumerate_xmod_morphisms(source: CrossedModule, target: CrossedModule,
                             fixed_base: Optional[AlgebraMorphism] = None,
                             max_search: int = DEFAULT_MAX_SEARCH,
                             extra: Optional[ExtraConstraints] = None) -> List[XModMorphism]:
    """
    Every crossed-module morphism source -> target.

    Base maps are enumerated first (or ``fixed_base`` is used); for each of
    them the top map is searched under the square and action conditions,
    plus whatever ``extra`` adds. Results are ordered by (phi, f).
    """
    if source.modulus != target.modulus:
        raise ModulusMismatch(source.modulus, target.modulus)
    p = source.modulus
    if fixed_base is not None:
        bases = [fixed_base]
    else:
        bases = [AlgebraMorphism(source.base, target.base, FpMatrix(m, p), 'phi')
                 for m in search_morphisms(source.base, target.base, max_search=max_search,
                                           what=f"base maps {source.label} -> {target.label}")]
    found: List[XModMorphism] = []
    for phi in bases:
        lc = top_constraints(source, target, phi)
        if extra is not None:
            extra(lc, phi)
        for m in search_morphisms(source.top, target.top, lc, max_search,
                                  f"top maps {source.label} -> {target.label}"):
            f = AlgebraMorphism(source.top, target.top, FpMatrix(m, p), 'f')
            found.append(XModMorphism(source, target, f, phi))
    found.sort(key=XModMorphism.key)
    logger.debug("%d crossed-module morphisms %s -> %s", len(found), source.label, target.label)
    return found


@dataclass
class MediatorReport:
    """Outcome of a universal-property check: the mediator and how many exist."""

    claim: str
    mediator: Optional[XModMorphism]
    count: int
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.mediator is not None and self.count == 1 and all(self.checks.values())

    def to_dict(self) -> Dict:
        return {
            'claim': self.claim,
            'mediator': None if self.mediator is None else self.mediator.describe(),
            'count': self.count,
            'checks': dict(self.checks),
            'passed': self.passed,
        }
