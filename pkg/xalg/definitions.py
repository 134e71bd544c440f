"""
Definition files: hand-written algebras, ideals, morphisms, actions and
crossed modules in YAML.

Top-level keys (all optional except ``modulus`` once anything is defined):

    modulus: 2
    algebras:
      T3:
        dim: 3
        products: {"1*1": [0, 0, 1]}    # sparse e_i*e_j, mirrored to e_j*e_i
        unit: [1, 0, 0]
        elements: {x: [0, 1, 0]}
    ideals:      {X: {algebra: T3, generators: [x]}}
    quotients:   {T3modX: {algebra: T3, ideal: X, projection: pi}}
    morphisms:   {f: {source: T3, target: T3, matrix: identity}}
    actions:     {a: {base: T3, top: M, act: {"1.0": [0]}}}   # e_i . c_p
    xmods:       {name: {kind: inclusion, base: T3, ideal: X}}

Every object is validated as it is loaded; the first failure is reported
with the field it came from.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

import numpy as np
import yaml

from xalg.algebra import (Algebra, AlgebraMorphism, Ideal, QuotientAlgebra, ideal_closure, quotient_algebra,
                          validate_algebra, validate_morphism)
from xalg.exceptions import (DanglingReference, DefinitionError, DefinitionSyntaxError,
                             DefinitionValidationError, XAlgError)
from xalg.linalg import check_modulus
from xalg.utils.data_processing import parse_index_pair, parse_matrix, parse_vector
from xalg.xmod import (AlgebraAction, CrossedModule, identity_xmod, inclusion_xmod, multiplication_xmod,
                       validate_action, validate_xmod, zero_module_xmod, zero_xmod)

logger = logging.getLogger('xalg.definitions')

XMOD_KINDS = ('general', 'inclusion', 'multiplication', 'zero_module', 'identity', 'zero')


@dataclass
class DefinitionFile:
    modulus: Optional[int] = None
    algebras: Dict[str, Algebra] = field(default_factory=dict)
    elements: Dict[str, Dict[str, np.ndarray]] = field(default_factory=dict)
    ideals: Dict[str, Ideal] = field(default_factory=dict)
    quotients: Dict[str, QuotientAlgebra] = field(default_factory=dict)
    morphisms: Dict[str, AlgebraMorphism] = field(default_factory=dict)
    actions: Dict[str, AlgebraAction] = field(default_factory=dict)
    xmods: Dict[str, CrossedModule] = field(default_factory=dict)
    origin: str = '<string>'

    def lookup(self, kind: str, name: str, where: str = ''):
        table = {
            'algebra': self.algebras,
            'ideal': self.ideals,
            'quotient': self.quotients,
            'morphism': self.morphisms,
            'action': self.actions,
            'xmod': self.xmods,
        }[kind]
        if name not in table:
            raise DanglingReference(kind, str(name), where or self.origin)
        return table[name]

    def element(self, algebra_name: str, value, where: str) -> np.ndarray:
        a = self.lookup('algebra', algebra_name, where)
        try:
            return parse_vector(value, a.modulus, a.dim, self.elements.get(algebra_name))
        except ValueError as e:
            raise DefinitionSyntaxError(f"{where}: {e}", {'where': where})

    def summary(self) -> Dict:
        return {
            'modulus': self.modulus,
            'algebras': {k: a.dim for k, a in self.algebras.items()},
            'ideals': {k: i.dim for k, i in self.ideals.items()},
            'morphisms': sorted(self.morphisms),
            'actions': sorted(self.actions),
            'xmods': sorted(self.xmods),
        }


def _section(raw: Dict, key: str) -> Dict:
    return _mapping(raw.get(key), key)


def _mapping(value, where: str) -> Dict:
    """An absent field reads as an empty mapping; anything else must be one."""
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise DefinitionSyntaxError(f"'{where}' must be a mapping", {'where': where})
    return value


def _indices(key, separator: str, bounds: Tuple[int, int], where: str) -> Tuple[int, int]:
    indices = parse_index_pair(key, separator)
    for k, limit in zip(indices, bounds):
        if not 0 <= k < limit:
            raise DefinitionSyntaxError(f"{where}: index {k} in {key!r} is outside 0..{limit - 1}",
                                        {'where': where, 'key': str(key)})
    return indices


def _validated(where: str, build):
    try:
        return build()
    except DefinitionError:
        raise
    except XAlgError as e:
        raise DefinitionValidationError(where, e)
    except ValueError as e:
        raise DefinitionSyntaxError(f"{where}: {e}", {'where': where})


def _load_algebra(defs: DefinitionFile, name: str, fields: Dict) -> Algebra:
    where = f"algebras.{name}"
    p = defs.modulus
    if 'table' in fields:
        table = np.asarray(fields['table'], dtype=np.int64)
        n = table.shape[0] if table.ndim == 3 else int(fields.get('dim', 0))
        if table.size == 0:
            table = np.zeros((n, n, n), dtype=np.int64)
    else:
        if 'dim' not in fields:
            raise DefinitionSyntaxError(f"{where}: needs 'dim' or 'table'", {'where': where})
        n = int(fields['dim'])
        table = np.zeros((n, n, n), dtype=np.int64)
        products = _mapping(fields.get('products'), f"{where}.products")
        for key, value in products.items():
            i, j = _indices(key, '*', (n, n), f"{where}.products")
            vec = parse_vector(value, p, n)
            table[i, j] = vec
            if f"{j}*{i}" not in products:
                table[j, i] = vec
    unit = parse_vector(fields['unit'], p, n) if fields.get('unit') is not None else None
    algebra = validate_algebra(table, p, unit, name)
    elements = _mapping(fields.get('elements'), f"{where}.elements")
    defs.elements[name] = {str(k): parse_vector(v, p, n) for k, v in elements.items()}
    return algebra


def _load_ideal(defs: DefinitionFile, name: str, fields: Dict) -> Ideal:
    where = f"ideals.{name}"
    alg_name = fields.get('algebra')
    parent = defs.lookup('algebra', alg_name, where)
    gens = [defs.element(alg_name, g, f"{where}.generators") for g in (fields.get('generators') or [])]
    return ideal_closure(parent, gens, name)


def _load_morphism(defs: DefinitionFile, name: str, fields: Dict) -> AlgebraMorphism:
    where = f"morphisms.{name}"
    source = defs.lookup('algebra', fields.get('source'), where)
    target = defs.lookup('algebra', fields.get('target'), where)
    matrix = parse_matrix(fields.get('matrix', 'zero'), source.modulus, target.dim, source.dim)
    return validate_morphism(source, target, matrix, name)


def _load_action(defs: DefinitionFile, name: str, fields: Dict) -> AlgebraAction:
    where = f"actions.{name}"
    base = defs.lookup('algebra', fields.get('base'), where)
    top = defs.lookup('algebra', fields.get('top'), where)
    act = np.zeros((base.dim, top.dim, top.dim), dtype=np.int64)
    for key, value in _mapping(fields.get('act'), f"{where}.act").items():
        i, q = _indices(key, '.', (base.dim, top.dim), f"{where}.act")
        act[i, q] = defs.element(top.label, value, f"{where}.act")
    return validate_action(base, top, act, name)


def _load_xmod(defs: DefinitionFile, name: str, fields: Dict) -> CrossedModule:
    where = f"xmods.{name}"
    kind = fields.get('kind', 'general')
    if kind not in XMOD_KINDS:
        raise DefinitionSyntaxError(f"{where}: unknown kind '{kind}'", {'where': where, 'kinds': list(XMOD_KINDS)})
    base = defs.lookup('algebra', fields.get('base'), where)
    if kind == 'inclusion':
        ideal = defs.lookup('ideal', fields.get('ideal'), where)
        if ideal.parent is not base:
            raise DefinitionSyntaxError(f"{where}: ideal '{fields.get('ideal')}' is not an ideal of "
                                        f"'{fields.get('base')}'", {'where': where})
        return inclusion_xmod(base, ideal, name)
    if kind == 'multiplication':
        xm = multiplication_xmod(base)
        return CrossedModule(xm.top, xm.base, xm.boundary, xm.action, name)
    if kind == 'identity':
        xm = identity_xmod(base)
        return CrossedModule(xm.top, xm.base, xm.boundary, xm.action, name)
    if kind == 'zero':
        xm = zero_xmod(base)
        return CrossedModule(xm.top, xm.base, xm.boundary, xm.action, name)
    if kind == 'zero_module':
        action = defs.lookup('action', fields.get('action'), where)
        if action.base is not base:
            raise DefinitionSyntaxError(f"{where}: action base is not '{fields.get('base')}'", {'where': where})
        return zero_module_xmod(base, action.act, name)
    top = defs.lookup('algebra', fields.get('top'), where)
    boundary = defs.lookup('morphism', fields.get('boundary'), where)
    action = defs.lookup('action', fields.get('action'), where)
    return validate_xmod(top, base, boundary, action, name)


def loads(text: str, origin: str = '<string>') -> DefinitionFile:
    """Parse definition-file text into a validated object graph."""
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, 'problem_mark', None)
        line = mark.line + 1 if mark is not None else None
        raise DefinitionSyntaxError(f"{origin}: invalid YAML at line {line}: {getattr(e, 'problem', e)}",
                                    {'where': origin, 'line': line})
    defs = DefinitionFile(origin=origin)
    if raw is None:
        return defs
    if not isinstance(raw, dict):
        raise DefinitionSyntaxError(f"{origin}: top level must be a mapping", {'where': origin})

    algebras = _section(raw, 'algebras')
    if 'modulus' in raw:
        defs.modulus = _validated('modulus', lambda: check_modulus(raw['modulus']))
    elif algebras:
        raise DefinitionSyntaxError(f"{origin}: 'modulus' is required", {'where': 'modulus'})

    for name, fields in algebras.items():
        fields = _mapping(fields, f"algebras.{name}")
        defs.algebras[name] = _validated(f"algebras.{name}", lambda: _load_algebra(defs, name, fields))

    ideals = _section(raw, 'ideals')
    quotients = _section(raw, 'quotients')
    deferred = {}
    for name, fields in ideals.items():
        fields = _mapping(fields, f"ideals.{name}")
        if fields.get('algebra') not in defs.algebras and fields.get('algebra') in quotients:
            deferred[name] = fields
            continue
        defs.ideals[name] = _validated(f"ideals.{name}", lambda: _load_ideal(defs, name, fields))

    for name, fields in quotients.items():
        fields = _mapping(fields, f"quotients.{name}")
        where = f"quotients.{name}"
        parent = defs.lookup('algebra', fields.get('algebra'), where)
        ideal = defs.lookup('ideal', fields.get('ideal'), where)
        quot = _validated(where, lambda: quotient_algebra(parent, ideal, name))
        defs.quotients[name] = quot
        defs.algebras[name] = quot.algebra
        defs.elements[name] = {}
        if fields.get('projection'):
            defs.morphisms[fields['projection']] = AlgebraMorphism(parent, quot.algebra, quot.projection.matrix,
                                                                 fields['projection'])

    for name, fields in deferred.items():
        defs.ideals[name] = _validated(f"ideals.{name}", lambda: _load_ideal(defs, name, fields))

    for name, fields in _section(raw, 'morphisms').items():
        fields = _mapping(fields, f"morphisms.{name}")
        defs.morphisms[name] = _validated(f"morphisms.{name}", lambda: _load_morphism(defs, name, fields))
    for name, fields in _section(raw, 'actions').items():
        fields = _mapping(fields, f"actions.{name}")
        defs.actions[name] = _validated(f"actions.{name}", lambda: _load_action(defs, name, fields))
    for name, fields in _section(raw, 'xmods').items():
        fields = _mapping(fields, f"xmods.{name}")
        defs.xmods[name] = _validated(f"xmods.{name}", lambda: _load_xmod(defs, name, fields))

    logger.info("loaded %s: %d algebras, %d morphisms, %d crossed modules", origin, len(defs.algebras),
                len(defs.morphisms), len(defs.xmods))
    return defs


def parse(path: Union[str, Path]) -> DefinitionFile:
    """Load and validate a definition file."""
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise DefinitionSyntaxError(f"cannot read {path}: {e.strerror}", {'where': str(path)})
    return loads(text, str(path))
