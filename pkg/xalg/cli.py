"""
Command-line entry point.

    xalg <command> [names...] [--file PATH] [--format text|json] [--max-search N]

Names refer to objects in the definition file (the bundled
``catalog/t3.xalg`` when ``--file`` is not given). Exit status is 0 when
every check passes, 1 on a failed check, 2 on a usage or definition-file
error and 3 when a search exceeds its budget.
"""

import argparse
import logging
import sys
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from xalg.algebra import cross_check_algebra, find_isomorphism, multiplier_algebra
from xalg.basechange import (adjunction_check, check_induced_relations, induce_epi, induce_ideal_inclusion,
                             induce_tensor, iso_search, pullback)
from xalg.catalog import CatalogRun, load_bundled, run_catalog
from xalg.config import Settings, configure_logging, load_settings
from xalg.definitions import DefinitionFile, parse
from xalg.exceptions import DefinitionError, UnknownCommand, UsageError
from xalg.koszul import free_xmod, koszul_free_induced_iso, theta_identities
from xalg.reports import Report
from xalg.xmod import boundary_image_is_ideal, cross_check_xmod, kernel_module, multiplication_xmod

logger = logging.getLogger('xalg.cli')

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass(frozen=True)
class Command:
    handler: Callable[[CatalogRun, List[str]], None]
    usage: str
    min_args: int
    max_args: Optional[int]


# Handlers ---------------------------------------------------------------------

def _verify(run: CatalogRun, names: List[str]):
    for name in names or list(run.defs.xmods):
        with run.entry(f"verify {name}", 'crossed-module axioms and structure') as s:
            xm = run.xmod(name)
            s.check('basis_axioms', True)
            s.checks_from('', cross_check_xmod(xm, run.settings.max_pair_product))
            s.checks_from('top_', cross_check_algebra(xm.top, run.settings.max_pair_order,
                                                      run.settings.max_triple_order))
            s.add_object('boundary_image_dim', boundary_image_is_ideal(xm).dim)
            s.check('boundary_image_is_ideal', True)
            s.add_object('kernel_dim', kernel_module(xm).ideal.dim)
            s.check('image_acts_trivially_on_kernel', True)
            s.add_object('xmod', xm.describe())


def _pullback(run: CatalogRun, names: List[str]):
    xname, mname = names
    with run.entry(f"pullback {xname} along {mname}", 'pullback along an algebra morphism') as s:
        res = pullback(run.xmod(xname), run.morphism(mname))
        s.check('pullback_valid', True)
        s.check('square_commutes', True)
        s.checks_from('', cross_check_xmod(res.xm, run.settings.max_pair_product))
        s.add_object('top_dim', res.xm.top.dim)
        s.add_object('xmod', res.xm.describe())
        s.add_object('phi_prime', res.phi_prime.matrix.tolist())
        s.add_object('action', res.xm.action.act.tolist())


def _induce(run: CatalogRun, names: List[str]):
    xname, mname = names
    with run.entry(f"induce {xname} along {mname}", 'induced crossed modules') as s:
        res = induce_tensor(run.xmod(xname), run.morphism(mname))
        s.check('induced_valid', True)
        s.checks_from('', check_induced_relations(res))
        s.add_object('ambient_dim', res.ambient.dim)
        s.add_object('relations_dim', res.relation_span.dim)
        s.add_object('top_dim', res.xm.top.dim)
        s.add_object('xmod', res.xm.describe())
        s.add_object('phi_prime', res.phi_prime.matrix.tolist())


def _induce_epi(run: CatalogRun, names: List[str]):
    xname, mname = names
    with run.entry(f"induce-epi {xname} along {mname}", 'induced along a surjection') as s:
        xm, phi = run.xmod(xname), run.morphism(mname)
        closed = induce_epi(xm, phi)
        tensor = induce_tensor(xm, phi)
        s.add_object('closed_form_dim', closed.top.dim)
        s.add_object('tensor_dim', tensor.xm.top.dim)
        witness = iso_search(closed, tensor.xm, run.max_search)
        s.check('isomorphic_to_tensor', witness is not None, None if witness is None else witness.describe())
        s.add_object('xmod', closed.describe())


def _induce_ideal(run: CatalogRun, names: List[str]):
    rname, sname, dname = names[:3]
    q_ideal = run.ideal(names[3]) if len(names) > 3 else None
    with run.entry(f"induce-ideal {dname} <= {sname} <= {rname}", 'induced along an ideal inclusion') as s:
        result = induce_ideal_inclusion(run.algebra(rname), run.ideal(sname), run.ideal(dname), q_ideal,
                                        run.max_search)
        report = result.report
        s.checks_from('', report.checks)
        s.check('isomorphic_to_tensor', report.isomorphic,
                {'obstruction': report.obstruction} if report.obstruction else None)
        s.add_object('comparison', report.to_dict())
        s.add_object('xmod', result.xm.describe())


def _adjunction(run: CatalogRun, names: List[str]):
    mname, dname, cname = names
    with run.entry(f"adjunction along {mname}: {dname} / {cname}",
                   'adjunction between induction and pullback') as s:
        report = adjunction_check(run.morphism(mname), run.xmod(dname), run.xmod(cname), run.max_search)
        s.check('hom_sets_equinumerous', report.left_count == report.right_count)
        s.checks_from('', report.checks)
        s.add_object('counts', {'induced_to_c': report.left_count, 'd_to_pullback': report.right_count})


def _f_values(run: CatalogRun, names: List[str]):
    return names[0], [run.element(names[0], v) for v in names[1:]]


def _free(run: CatalogRun, names: List[str]):
    rname, f_values = _f_values(run, names)
    with run.entry(f"free crossed module over {rname} on {', '.join(names[1:])}",
                   'free crossed modules and the Koszul complex') as s:
        r = run.algebra(rname)
        pres = free_xmod(r, f_values)
        s.check('free_valid', True)
        s.checks_from('theta_', theta_identities(r, f_values, pres))
        s.add_object('generators', list(pres.generators))
        s.add_object('top_dim', pres.xm.top.dim)
        s.add_object('generator_classes', [pres.generator_class(i).tolist() for i in range(len(f_values))])
        s.add_object('xmod', pres.xm.describe())


def _koszul(run: CatalogRun, names: List[str]):
    rname, f_values = _f_values(run, names)
    with run.entry(f"koszul over {rname} on {', '.join(names[1:])}",
                   'free crossed modules and the Koszul complex') as s:
        iso = koszul_free_induced_iso(run.algebra(rname), f_values, run.settings.max_pair_product)
        s.checks_from('', iso.legs)
        s.add_object('dims', iso.dims)
        s.add_object('not_constructed', list(iso.not_constructed))


def _multiplier(run: CatalogRun, names: List[str]):
    rname = names[0]
    with run.entry(f"multipliers of {rname}", 'multiplier algebras') as s:
        r = run.algebra(rname)
        mult = multiplier_algebra(r)
        s.check('multiplier_algebra_valid', True)
        s.check('multiplication_xmod_valid', multiplication_xmod(r).base.dim == mult.algebra.dim)
        s.add_object('dim', mult.algebra.dim)
        s.add_object('mu', mult.mu.matrix.tolist())
        s.add_object('isomorphic_to_base', find_isomorphism(mult.algebra, r, run.max_search) is not None)


def _catalog(run: CatalogRun, names: List[str]):
    run_catalog(run.settings, run.defs, run.report, run.vlog)


COMMANDS: Dict[str, Command] = {
    'verify': Command(_verify, 'verify [xmod ...]', 0, None),
    'pullback': Command(_pullback, 'pullback <xmod> <morphism>', 2, 2),
    'induce': Command(_induce, 'induce <xmod> <morphism>', 2, 2),
    'induce-epi': Command(_induce_epi, 'induce-epi <xmod> <surjective morphism>', 2, 2),
    'induce-ideal': Command(_induce_ideal, 'induce-ideal <algebra> <ideal S> <ideal D> [ideal Q]', 3, 4),
    'adjunction': Command(_adjunction, 'adjunction <morphism> <xmod D> <xmod C>', 3, 3),
    'free': Command(_free, 'free <algebra> <f1> [f2 ...]', 2, None),
    'koszul': Command(_koszul, 'koszul <algebra> <f1> [f2 ...]', 2, None),
    'multiplier': Command(_multiplier, 'multiplier <algebra>', 1, 1),
    'catalog': Command(_catalog, 'catalog', 0, 0),
}


def run(command: str, args: Sequence[str], definitions: Optional[DefinitionFile] = None,
        settings: Optional[Settings] = None) -> Report:
    """
    Dispatch one command and collect its report.

    Raises:
        UnknownCommand: for a command outside COMMANDS.
        UsageError: for the wrong number of names.
    """
    if command not in COMMANDS:
        raise UnknownCommand(command, COMMANDS)
    cmd = COMMANDS[command]
    names = list(args)
    if len(names) < cmd.min_args or (cmd.max_args is not None and len(names) > cmd.max_args):
        raise UsageError(command, f"usage: xalg {cmd.usage}")
    settings = settings or load_settings()
    definitions = definitions if definitions is not None else load_bundled()
    report = Report(command, names)
    context = CatalogRun(definitions, settings, report)
    start = time.perf_counter()
    cmd.handler(context, names)
    if settings.include_timing and report.timing is None:
        report.timing = dict(context.timing, total=time.perf_counter() - start)
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='xalg',
        description='Crossed modules of commutative algebras over F_p: constructions and verification.',
        epilog='commands:\n' + '\n'.join(f"  {c.usage}" for c in COMMANDS.values()),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('command', help='one of: ' + ', '.join(COMMANDS))
    parser.add_argument('names', nargs='*', help='names of objects in the definition file')
    parser.add_argument('--file', help='definition file (default: bundled catalog/t3.xalg)')
    parser.add_argument('--format', choices=['text', 'json'], default=None, help='report format')
    parser.add_argument('--max-search', type=int, default=None, help='enumeration budget (default 2**24)')
    parser.add_argument('--seed', type=int, default=None, help='seed for randomised orderings; never changes results')
    parser.add_argument('--timing', action='store_true', help='add wall-clock timing to the report')
    parser.add_argument('--config', default=None, help='alternate config.yaml')
    parser.add_argument('--log-level', default=None, help='DEBUG, INFO, WARNING or ERROR')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = load_settings(args.config).with_overrides(
        max_search=args.max_search,
        report_format=args.format,
        include_timing=True if args.timing else None,
        seed=args.seed,
        log_level=args.log_level.upper() if args.log_level else None,
    )
    configure_logging(settings)

    try:
        definitions = parse(args.file) if args.file else load_bundled()
        report = run(args.command, args.names, definitions, settings)
    except (DefinitionError, UnknownCommand, UsageError) as e:
        logger.debug("usage error", exc_info=True)
        sys.stderr.write(f"xalg: {e.message}\n")
        return EXIT_USAGE

    sys.stdout.write(report.render(settings.report_format))
    if report.budget_exceeded:
        return EXIT_BUDGET
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
