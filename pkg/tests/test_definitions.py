import textwrap

import numpy as np
import pytest

from xalg.definitions import loads, parse
from xalg.exceptions import DanglingReference, DefinitionSyntaxError, DefinitionValidationError

T3_HEADER = textwrap.dedent("""
    modulus: 2
    algebras:
      T3:
        dim: 3
        products: {"0*0": [1, 0, 0], "0*1": [0, 1, 0], "0*2": [0, 0, 1], "1*1": [0, 0, 1]}
        unit: [1, 0, 0]
        elements: {x: "0,1,0", x2: [0, 0, 1]}
""")


class TestBundledFile:
    def test_algebras_and_ideals(self, bundled):
        assert bundled.modulus == 2
        assert bundled.algebras['T3'].dim == 3
        assert bundled.ideals['X'].dim == 2
        assert bundled.ideals['X2'].dim == 1

    def test_quotients_register_projections(self, bundled):
        assert bundled.algebras['T3modX'].dim == 1
        assert bundled.algebras['T3modX2'].dim == 2
        assert bundled.morphisms['pi-x'].entries.tolist() == [[1, 0, 0]]
        assert bundled.morphisms['pi-x2'].target is bundled.algebras['T3modX2']

    def test_crossed_modules(self, bundled):
        assert len(bundled.xmods) == 9
        assert bundled.xmods['x-general'].top.dim == 2
        assert bundled.xmods['M1-over-F2'].action.is_unital
        assert bundled.xmods['t3-mult'].label == 't3-mult'

    def test_named_elements(self, bundled):
        assert bundled.element('T3', 'x2', 'test').tolist() == [0, 0, 1]
        assert bundled.element('T4', [1, 1, 0, 0], 'test').tolist() == [1, 1, 0, 0]

    def test_summary(self, bundled):
        summary = bundled.summary()
        assert summary['ideals']['T4X2'] == 2
        assert summary['morphisms'] == sorted(summary['morphisms'])


class TestLoads:
    def test_empty_input(self):
        defs = loads('')
        assert defs.modulus is None
        assert defs.algebras == {}

    def test_string_literals_are_vectors(self):
        defs = loads(T3_HEADER)
        assert defs.elements['T3']['x'].tolist() == [0, 1, 0]

    def test_full_table(self):
        defs = loads("modulus: 3\nalgebras:\n  F3: {table: [[[1]]], unit: [1]}\n")
        assert defs.algebras['F3'].dim == 1
        assert defs.algebras['F3'].modulus == 3

    def test_ideal_of_a_quotient(self):
        defs = loads(T3_HEADER + textwrap.dedent("""
            ideals:
              X2: {algebra: T3, generators: [x2]}
              Xbar: {algebra: Q, generators: [[0, 1]]}
            quotients:
              Q: {algebra: T3, ideal: X2}
        """))
        assert defs.algebras['Q'].dim == 2
        assert defs.ideals['Xbar'].dim == 1

    def test_general_crossed_module(self):
        defs = loads(T3_HEADER + textwrap.dedent("""
            morphisms:
              ident: {source: T3, target: T3, matrix: identity}
            actions:
              mult:
                base: T3
                top: T3
                act: {"0.0": [1, 0, 0], "0.1": [0, 1, 0], "0.2": [0, 0, 1], "1.0": [0, 1, 0], "1.1": [0, 0, 1],
                      "2.0": [0, 0, 1]}
            xmods:
              id: {kind: general, top: T3, base: T3, boundary: ident, action: mult}
        """))
        assert np.array_equal(defs.xmods['id'].boundary.entries, np.eye(3, dtype=np.int64))


class TestErrors:
    def test_modulus_is_required(self):
        with pytest.raises(DefinitionSyntaxError) as info:
            loads("algebras:\n  A: {dim: 1}\n")
        assert info.value.witness['where'] == 'modulus'

    def test_modulus_must_be_prime(self):
        with pytest.raises(DefinitionValidationError) as info:
            loads("modulus: 4\n")
        assert info.value.witness['cause'] == 'NotPrime'

    def test_invalid_yaml_reports_the_line(self):
        with pytest.raises(DefinitionSyntaxError) as info:
            loads("modulus: 2\nalgebras: a: b\n", 'bad.xalg')
        assert info.value.witness['line'] == 2
        assert 'bad.xalg' in info.value.message

    def test_dangling_reference(self):
        with pytest.raises(DanglingReference) as info:
            loads(T3_HEADER + "morphisms:\n  f: {source: Nope, target: T3, matrix: zero}\n")
        assert info.value.witness == {'kind': 'algebra', 'name': 'Nope', 'where': 'morphisms.f'}

    def test_wrong_unit(self):
        with pytest.raises(DefinitionValidationError) as info:
            loads(T3_HEADER.replace('unit: [1, 0, 0]', 'unit: [0, 1, 0]'))
        assert info.value.witness['where'] == 'algebras.T3'
        assert info.value.witness['cause'] == 'BadUnit'

    def test_wrong_vector_length(self):
        with pytest.raises(DefinitionSyntaxError):
            loads(T3_HEADER + "ideals:\n  X: {algebra: T3, generators: [[0, 1]]}\n")

    def test_non_multiplicative_morphism(self):
        with pytest.raises(DefinitionValidationError) as info:
            loads(T3_HEADER + "morphisms:\n  f: {source: T3, target: T3, matrix: [[0,0,0],[0,0,0],[1,0,0]]}\n")
        assert info.value.witness['cause'] == 'NotMultiplicative'

    def test_unknown_kind(self):
        with pytest.raises(DefinitionSyntaxError) as info:
            loads(T3_HEADER + "xmods:\n  z: {kind: pushout, base: T3}\n")
        assert 'pushout' in info.value.message

    def test_product_index_out_of_range(self):
        with pytest.raises(DefinitionSyntaxError) as info:
            loads('modulus: 2\nalgebras:\n  A: {dim: 2, products: {"5*0": [1, 0]}}\n')
        assert info.value.witness == {'where': 'algebras.A.products', 'key': '5*0'}

    def test_action_index_out_of_range(self):
        text = T3_HEADER + textwrap.dedent("""
              M1: {dim: 1}
            actions:
              a: {base: T3, top: M1, act: {"0.3": [1]}}
        """)
        with pytest.raises(DefinitionSyntaxError) as info:
            loads(text)
        assert info.value.witness['where'] == 'actions.a.act'

    @pytest.mark.parametrize('text, where', [
        ("modulus: 2\nalgebras:\n  A: 5\n", 'algebras.A'),
        ("modulus: 2\nalgebras:\n  A: {dim: 1, products: [1]}\n", 'algebras.A.products'),
        ("modulus: 2\nideals:\n  X: [T3]\n", 'ideals.X'),
        ("modulus: 2\nxmods: [a, b]\n", 'xmods'),
    ])
    def test_fields_must_be_mappings(self, text, where):
        with pytest.raises(DefinitionSyntaxError) as info:
            loads(text)
        assert info.value.witness['where'] == where

    def test_missing_file(self, tmp_path):
        with pytest.raises(DefinitionSyntaxError):
            parse(tmp_path / 'missing.xalg')

    def test_parse_reads_a_file(self, tmp_path):
        path = tmp_path / 'small.xalg'
        path.write_text(T3_HEADER, encoding='utf-8')
        defs = parse(path)
        assert defs.origin == str(path)
        assert list(defs.algebras) == ['T3']
