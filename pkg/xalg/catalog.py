"""
Built-in suite of worked examples.

Each entry builds its objects from the bundled definition file (or from
the constructors directly), runs the relevant constructions and records
pass/fail checks in its own report section. An entry that raises is
recorded as failed with the error's witness; the suite carries on.
"""

import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Type

import numpy as np

from xalg.algebra import (cross_check_algebra, find_isomorphism, ideal_as_algebra, identity_morphism,
                          multiplier_algebra, truncated_polynomial_algebra, whole_ideal, zero_ideal)
from xalg.basechange import (adjunction_check, check_induced_relations, induce_epi, induce_ideal_inclusion,
                             induce_tensor, induced_universal_check, iso_search, pullback,
                             pullback_universal_check, pullback_zero_module)
from xalg.config import Settings, VerificationLog, project_root
from xalg.definitions import DefinitionFile, parse
from xalg.exceptions import (AugmentationUndefined, DefinitionError, HypothesisViolated, SearchTooLarge,
                             StructureClaimFails, WNotCompatible, XAlgError)
from xalg.koszul import free_universal_check, free_xmod, koszul_free_induced_iso
from xalg.linalg import image, kernel, solve
from xalg.reports import Report, Section
from xalg.xmod import (CrossedModule, XModMorphism, boundary_image_is_ideal, cross_check_xmod, inclusion_xmod,
                       kernel_module, multiplication_xmod, validate_xmod_morphism)

logger = logging.getLogger('xalg.catalog')

BUNDLED_DEFINITIONS = project_root / 'catalog' / 't3.xalg'


def load_bundled(path: Optional[Path] = None) -> DefinitionFile:
    return parse(path or BUNDLED_DEFINITIONS)


class CatalogRun:
    """State shared by the entries of one catalog run."""

    def __init__(self, defs: DefinitionFile, settings: Settings, report: Report,
                 vlog: Optional[VerificationLog] = None):
        self.defs = defs
        self.settings = settings
        self.report = report
        self.vlog = vlog or VerificationLog()
        self.timing: Dict[str, float] = {}

    @property
    def max_search(self) -> int:
        return self.settings.max_search

    def xmod(self, name: str) -> CrossedModule:
        return self.defs.lookup('xmod', name, 'catalog')

    def morphism(self, name: str):
        return self.defs.lookup('morphism', name, 'catalog')

    def algebra(self, name: str):
        return self.defs.lookup('algebra', name, 'catalog')

    def ideal(self, name: str):
        return self.defs.lookup('ideal', name, 'catalog')

    def element(self, algebra: str, name: str) -> np.ndarray:
        return self.defs.element(algebra, name, 'catalog')

    @contextmanager
    def entry(self, title: str, topic: str) -> Iterator[Section]:
        section = self.report.section(title, topic)
        start = time.perf_counter()
        try:
            yield section
        except DefinitionError as e:
            section.error = e.to_dict()
            raise
        except SearchTooLarge as e:
            section.error = e.to_dict()
            self.report.budget_exceeded = True
        except XAlgError as e:
            logger.warning("%s: %s", title, e.message)
            section.error = e.to_dict()
        finally:
            self.timing[title] = time.perf_counter() - start
            self.vlog.log('pass' if section.passed else 'FAIL', title)


def lift_through(target: CrossedModule, vectors: Sequence[np.ndarray]) -> np.ndarray:
    """Matrix whose columns c satisfy d(c) = v, for an injective boundary."""
    cols = []
    for v in vectors:
        c = solve(target.boundary.matrix, v)
        if c is None:
            raise StructureClaimFails('vector lies in the boundary image', {'vector': np.asarray(v).tolist()})
        cols.append(c)
    if not cols:
        return np.zeros((target.top.dim, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


def factor_through(source: CrossedModule, target: CrossedModule, phi) -> XModMorphism:
    """(f, phi) with d' f = phi d, for a target whose boundary is injective."""
    images = [phi(source.boundary(source.top.basis(q))) for q in range(source.top.dim)]
    return validate_xmod_morphism(source, target, lift_through(target, images), phi, 'cone')


def zero_top_morphism(source: CrossedModule, target: CrossedModule, phi) -> XModMorphism:
    return validate_xmod_morphism(source, target, np.zeros((target.top.dim, source.top.dim), dtype=np.int64),
                                  phi, 'zero cone')


def expect_error(section: Section, name: str, error_type: Type[XAlgError], build: Callable[[], object]) -> bool:
    """Record a check that passes when ``build`` raises ``error_type``."""
    try:
        build()
    except error_type as e:
        return section.check(name, True, e.witness)
    return section.check(name, False)


def record_iso(section: Section, name: str, a: CrossedModule, b: CrossedModule, max_search: int):
    witness = iso_search(a, b, max_search)
    section.check(name, witness is not None, None if witness is None else witness.describe())


# Entries -------------------------------------------------------------------------

AXIOMS = 'crossed-module axioms and structure'


def check_algebras(run: CatalogRun):
    for name, alg in run.defs.algebras.items():
        with run.entry(f"algebra {name}", AXIOMS) as s:
            s.add_object('algebra', alg.describe())
            s.checks_from('', cross_check_algebra(alg, run.settings.max_pair_order, run.settings.max_triple_order))
            s.check('validated_on_load', True)


def check_xmods(run: CatalogRun):
    for name, xm in run.defs.xmods.items():
        with run.entry(f"crossed module {name}", AXIOMS) as s:
            s.check('basis_axioms', True)
            s.checks_from('', cross_check_xmod(xm, run.settings.max_pair_product))
            try:
                im = boundary_image_is_ideal(xm)
                s.check('boundary_image_is_ideal', True)
                s.add_object('boundary_image_dim', im.dim)
            except StructureClaimFails as e:
                s.check('boundary_image_is_ideal', False, e.witness)
            try:
                km = kernel_module(xm)
                s.check('image_acts_trivially_on_kernel', True)
                s.add_object('kernel_dim', km.ideal.dim)
            except StructureClaimFails as e:
                s.check('image_acts_trivially_on_kernel', False, e.witness)
            s.add_object('xmod', xm.describe())
    with run.entry('hand-written inclusion of (x)', AXIOMS) as s:
        record_iso(s, 'isomorphic_to_inclusion', run.xmod('x-general'), run.xmod('t3-ideal-xmod'), run.max_search)


PULLBACK = 'pullback along an algebra morphism'


def pullback_examples(run: CatalogRun):
    phi = run.morphism('via-projection')
    with run.entry('pullback of 0 -> F2 along T3 -> F2', PULLBACK) as s:
        res = pullback(run.xmod('zero-into-F2'), phi)
        s.add_object('top_dim', res.xm.top.dim)
        s.add_object('boundary', res.xm.boundary.matrix.tolist())
        s.check('top_dim_is_2', res.xm.top.dim == 2)
        record_iso(s, 'isomorphic_to_inclusion_of_(x)', res.xm, run.xmod('t3-ideal-xmod'), run.max_search)

    with run.entry('pullback of an inclusion is the preimage ideal', PULLBACK) as s:
        t4 = run.algebra('T4')
        res = pullback(run.xmod('t3-ideal-xmod'), run.morphism('t4-to-t3'))
        s.add_object('top_dim', res.xm.top.dim)
        s.check('top_dim_is_3', res.xm.top.dim == 3)
        record_iso(s, 'isomorphic_to_inclusion_of_preimage', res.xm, inclusion_xmod(t4, run.ideal('T4X')),
                   run.max_search)

    with run.entry('pullback of a zero module is M x ker', PULLBACK) as s:
        xm = run.xmod('M1-over-F2')
        res = pullback(xm, phi)
        closed = pullback_zero_module(xm, phi)
        ker = kernel(phi.matrix)
        s.add_object('top_dim', res.xm.top.dim)
        s.check('top_dim_is_dim_M_plus_dim_ker', res.xm.top.dim == xm.top.dim + ker.dim)
        s.check('boundary_image_is_ker_phi', image(res.xm.boundary.matrix) == ker)
        record_iso(s, 'isomorphic_to_closed_form', res.xm, closed, run.max_search)

    with run.entry('pullback of the multiplication crossed module along mu', PULLBACK) as s:
        xm = run.xmod('t3-mult')
        res = pullback(xm, xm.boundary)
        s.add_object('top_dim', res.xm.top.dim)
        record_iso(s, 'isomorphic_to_identity', res.xm, run.xmod('t3-identity'), run.max_search)


def pullback_universal(run: CatalogRun):
    phi = run.morphism('via-projection')
    zero_f2 = pullback(run.xmod('zero-into-F2'), phi)
    ideal_id = pullback(run.xmod('t3-ideal-xmod'), run.morphism('t3-id'))
    module = pullback(run.xmod('M1-over-F2'), phi)
    cones: List[Tuple[str, object, Callable[[], XModMorphism]]] = [
        ('cone from (x) into 0 -> F2', zero_f2,
         lambda: zero_top_morphism(run.xmod('t3-ideal-xmod'), run.xmod('zero-into-F2'), phi)),
        ('cone from (x^2) into 0 -> F2', zero_f2,
         lambda: zero_top_morphism(run.xmod('t3-square-xmod'), run.xmod('zero-into-F2'), phi)),
        ('cone from (x^2) into (x) over the identity', ideal_id,
         lambda: factor_through(run.xmod('t3-square-xmod'), run.xmod('t3-ideal-xmod'), run.morphism('t3-id'))),
        ('cone from the augmentation module into M1 over F2', module,
         lambda: validate_xmod_morphism(run.xmod('aug-module'), run.xmod('M1-over-F2'),
                                        np.eye(1, dtype=np.int64), phi, 'cone')),
    ]
    for title, res, build in cones:
        with run.entry(title, 'pullback universal property') as s:
            report = pullback_universal_check(res, build(), run.max_search)
            s.check('unique_mediator', report.count == 1, {'count': report.count})
            s.checks_from('', report.checks)
            s.add_object('mediator', report.to_dict()['mediator'])


INDUCED = 'induced crossed modules'


def induced_examples(run: CatalogRun):
    pairs = [('t3-ideal-xmod', 'via-projection', 1), ('aug-module', 'via-projection', 1),
             ('t4-ideal-xmod', 't4-to-t3', 2), ('t3-square-xmod', 't3-id', 1)]
    for xname, mname, expected in pairs:
        with run.entry(f"induce {xname} along {mname}", INDUCED) as s:
            res = induce_tensor(run.xmod(xname), run.morphism(mname))
            s.add_object('ambient_dim', res.ambient.dim)
            s.add_object('relations_dim', res.relation_span.dim)
            s.add_object('top_dim', res.xm.top.dim)
            s.check(f"top_dim_is_{expected}", res.xm.top.dim == expected)
            s.checks_from('', check_induced_relations(res))

    phi = run.morphism('via-projection')
    cocones: List[Tuple[str, str, str, Callable[[], XModMorphism]]] = [
        ('cocone from (x) into 0 -> F2', 't3-ideal-xmod', 'via-projection',
         lambda: zero_top_morphism(run.xmod('t3-ideal-xmod'), run.xmod('zero-into-F2'), phi)),
        ('cocone from the augmentation module into M1', 'aug-module', 'via-projection',
         lambda: validate_xmod_morphism(run.xmod('aug-module'), run.xmod('M1-over-F2'),
                                        np.eye(1, dtype=np.int64), phi, 'cocone')),
        ('cocone from (x^2) into (x) over the identity', 't3-square-xmod', 't3-id',
         lambda: factor_through(run.xmod('t3-square-xmod'), run.xmod('t3-ideal-xmod'), run.morphism('t3-id'))),
    ]
    for title, xname, mname, build in cocones:
        with run.entry(title, 'induced universal property') as s:
            res = induce_tensor(run.xmod(xname), run.morphism(mname))
            report = induced_universal_check(res, build(), run.max_search)
            s.check('unique_mediator', report.count == 1, {'count': report.count})
            s.checks_from('', report.checks)


def induced_epi_examples(run: CatalogRun):
    pairs = [('t3-ideal-xmod', 'via-projection'), ('t4-ideal-xmod', 't4-to-t3'),
             ('aug-module', 'via-projection'), ('t3-identity', 'via-projection')]
    for xname, mname in pairs:
        with run.entry(f"D/KD for {xname} along {mname}", 'induced along a surjection') as s:
            xm, phi = run.xmod(xname), run.morphism(mname)
            closed = induce_epi(xm, phi)
            tensor = induce_tensor(xm, phi)
            s.add_object('closed_form_dim', closed.top.dim)
            s.add_object('tensor_dim', tensor.xm.top.dim)
            s.check('same_dimension', closed.top.dim == tensor.xm.top.dim)
            record_iso(s, 'isomorphic_to_tensor', closed, tensor.xm, run.max_search)
            if xname == 't3-ideal-xmod':
                x, x2 = run.ideal('X'), run.ideal('X2')
                s.check('dim_is_dim_I_over_I2', closed.top.dim == x.dim - x2.dim == 1)


def ideal_inclusion_examples(run: CatalogRun):
    topic = 'induced along an ideal inclusion'
    # dname None stands for the zero ideal
    cases = [('(x) <= (x) <= T3', 'T3', 'X', 'X', {'q_dim': 0, 't_dim': 2}),
             ('0 <= (x) <= T3', 'T3', 'X', None, {'q_dim': 0, 't_dim': 0, 'tensor_dim': 0}),
             ('(x^2) <= (x^2) <= T4', 'T4', 'T4X2', 'T4X2', {'q_dim': 1, 't_dim': 4, 'tensor_dim': 4}),
             ('(x^2) <= (x) <= T4', 'T4', 'T4X', 'T4X2', {'q_dim': 0, 't_dim': 2, 'tensor_dim': 2}),
             ('(x^3) <= (x^2) <= T4', 'T4', 'T4X2', 'T4X3', {'q_dim': 1, 't_dim': 2, 'tensor_dim': 2})]
    for title, rname, sname, dname, expected in cases:
        with run.entry(title, topic) as s:
            r = run.algebra(rname)
            d = zero_ideal(r) if dname is None else run.ideal(dname)
            result = induce_ideal_inclusion(r, run.ideal(sname), d, max_search=run.max_search)
            report = result.report
            s.add_object('comparison', report.to_dict())
            for key, value in expected.items():
                s.check(f"{key}_is_{value}", getattr(report, key) == value)
            s.checks_from('', report.checks)
            s.check('isomorphic_to_tensor', report.isomorphic, {'obstruction': report.obstruction}
                    if report.obstruction else None)
    with run.entry('designated ideal without an augmentation', topic) as s:
        t3 = run.algebra('T3')
        expect_error(s, 'augmentation_undefined', AugmentationUndefined,
                     lambda: induce_ideal_inclusion(t3, run.ideal('X2'), run.ideal('X2'), zero_ideal(t3),
                                                    max_search=run.max_search))


def adjunction_examples(run: CatalogRun):
    triples = [('via-projection', 't3-ideal-xmod', 'zero-into-F2'),
               ('via-projection', 'aug-module', 'M1-over-F2'),
               ('t3-id', 't3-square-xmod', 't3-ideal-xmod'),
               ('t4-to-t3', 't4-ideal-xmod', 't3-ideal-xmod')]
    for mname, dname, cname in triples:
        with run.entry(f"adjunction along {mname}: {dname} / {cname}",
                       'adjunction between induction and pullback') as s:
            report = adjunction_check(run.morphism(mname), run.xmod(dname), run.xmod(cname), run.max_search)
            s.add_object('counts', {'induced_to_c': report.left_count, 'd_to_pullback': report.right_count})
            s.check('hom_sets_equinumerous', report.left_count == report.right_count)
            s.checks_from('', report.checks)


def multiplier_examples(run: CatalogRun):
    topic = 'multiplier algebras'
    with run.entry('multipliers of F2', topic) as s:
        mult = multiplier_algebra(run.algebra('F2'))
        s.check('dim_is_1', mult.algebra.dim == 1)
    with run.entry('multipliers of T3', topic) as s:
        t3 = run.algebra('T3')
        mult = multiplier_algebra(t3)
        s.add_object('dim', mult.algebra.dim)
        s.check('isomorphic_to_T3', find_isomorphism(mult.algebra, t3, run.max_search) is not None)
        s.check('multiplication_xmod_valid', multiplication_xmod(t3).top.dim == t3.dim)
    with run.entry('induce (x) along mu into M(T3)', topic) as s:
        mu = run.xmod('t3-mult').boundary
        res = induce_tensor(run.xmod('t3-ideal-xmod'), mu)
        s.add_object('top_dim', res.xm.top.dim)
        s.check('top_dim_is_2', res.xm.top.dim == 2)
        s.checks_from('', check_induced_relations(res))
    with run.entry('multipliers of the nilpotent algebra (x)', topic) as s:
        n_alg, _ = ideal_as_algebra(run.ideal('X'))
        expect_error(s, 'hypothesis_violated', HypothesisViolated, lambda: multiplier_algebra(n_alg))


def koszul_examples(run: CatalogRun):
    topic = 'free crossed modules and the Koszul complex'
    t3 = run.algebra('T3')
    f_values = [run.element('T3', 'x'), run.element('T3', 'x2')]
    with run.entry('free crossed module on f = (x, x^2) over T3', topic) as s:
        iso = koszul_free_induced_iso(t3, f_values, run.settings.max_pair_product)
        s.add_object('dims', iso.dims)
        s.add_object('not_constructed', list(iso.not_constructed))
        s.check('im_d_dim_is_2', iso.dims['im_d'] == 2)
        s.check('free_top_dim_is_4', iso.dims['free_top'] == 4)
        s.checks_from('', iso.legs)
    pres = free_xmod(t3, f_values, ('y1', 'y2'))
    for target_name in ('t3-ideal-xmod', 't3-identity'):
        with run.entry(f"free universal property into {target_name}", topic) as s:
            target = run.xmod(target_name)
            w = lift_through(target, f_values)
            report = free_universal_check(pres, target, [w[:, i] for i in range(w.shape[1])], run.max_search)
            s.check('unique_mediator', report.count == 1, {'count': report.count})
            s.checks_from('', report.checks)
    with run.entry('incompatible generator images', topic) as s:
        target = run.xmod('t3-identity')
        expect_error(s, 'w_not_compatible', WNotCompatible,
                     lambda: free_universal_check(pres, target, [t3.zero(), t3.zero()], run.max_search))


def functoriality_examples(run: CatalogRun):
    for name in ('t3-ideal-xmod', 't3-square-xmod', 'aug-module'):
        with run.entry(f"base change of {name} along the identity", 'base change along the identity') as s:
            xm = run.xmod(name)
            ident = identity_morphism(xm.base)
            record_iso(s, 'pullback_is_identity', pullback(xm, ident).xm, xm, run.max_search)
            record_iso(s, 'induced_is_identity', induce_tensor(xm, ident).xm, xm, run.max_search)


def truncated_family(run: CatalogRun):
    """Constructor-built T3 agrees with the one in the definition file."""
    with run.entry('T3 from the truncated-polynomial constructor', AXIOMS) as s:
        built = truncated_polynomial_algebra(2, 3, 'T3')
        s.check('tables_agree', bool(np.array_equal(built.table, run.algebra('T3').table)))
        s.check('whole_ideal_is_unit_ideal', whole_ideal(built).space.contains(built.one()))


ENTRIES = (check_algebras, truncated_family, check_xmods, pullback_examples, pullback_universal,
           induced_examples, induced_epi_examples, ideal_inclusion_examples, adjunction_examples,
           multiplier_examples, koszul_examples, functoriality_examples)


def run_catalog(settings: Settings, defs: Optional[DefinitionFile] = None, report: Optional[Report] = None,
                vlog: Optional[VerificationLog] = None) -> Report:
    """Run every catalog entry in order and return the filled report."""
    defs = defs or load_bundled()
    report = report or Report('catalog')
    run = CatalogRun(defs, settings, report, vlog)
    for entry in ENTRIES:
        logger.info("catalog: %s", entry.__name__)
        entry(run)
    if settings.include_timing:
        report.timing = dict(run.timing)
    logger.info("catalog finished: %d sections, passed=%s", len(report.sections), report.passed)
    return report
