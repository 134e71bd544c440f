import dataclasses

import numpy as np
import pytest

from xalg.algebra import ideal_closure, truncated_polynomial_algebra, zero_algebra, zero_morphism
from xalg.exceptions import RNotUnital, WNotCompatible
from xalg.koszul import (exterior_square, forced_product_check, free_universal_check, free_xmod,
                         koszul_differential, koszul_free_induced_iso, peiffer_generators, theta_hat,
                         theta_identities)
from xalg.linalg import image
from xalg.xmod import CrossedModule, identity_xmod


@pytest.fixture
def f_values(x, x2):
    return [x, x2]


class TestExteriorSquare:
    def test_two_generators(self, t3):
        ext = exterior_square(t3, 2)
        assert ext.pairs == [(0, 1)]
        assert (ext.rank, ext.dim) == (1, 3)

    def test_three_generators(self, t3):
        assert exterior_square(t3, 3).rank == 3
        assert exterior_square(t3, 1).dim == 0


class TestDifferential:
    def test_shape_and_image(self, t3, f_values):
        d = koszul_differential(t3, f_values)
        assert d.shape == (6, 3)
        assert image(d).dim == 2
        # e_2 (y1 ^ y2) = x^2 y2 - x^3 y1 = 0
        assert not d.column(2).any()

    def test_theta_kills_the_image(self, t3, f_values):
        d = koszul_differential(t3, f_values)
        assert not ((theta_hat(t3, f_values) @ d.entries) % 2).any()

    def test_peiffer_closure_matches(self, t3, f_values):
        assert peiffer_generators(t3, f_values) == image(koszul_differential(t3, f_values))


class TestFreeXMod:
    def test_presentation(self, t3, f_values, ideal_x):
        pres = free_xmod(t3, f_values)
        assert pres.generators == ('y1', 'y2')
        assert pres.xm.top.dim == 4
        assert image(pres.xm.boundary.matrix) == ideal_x.space
        assert pres.xm.boundary(pres.generator_class(1)).tolist() == [0, 0, 1]

    def test_single_generator(self, t3, x):
        pres = free_xmod(t3, [x], ('y',))
        assert pres.xm.top.dim == 3
        assert pres.generators == ('y',)

    def test_needs_a_unit(self):
        with pytest.raises(RNotUnital):
            free_xmod(zero_algebra(2, 1), [[0]])

    def test_no_generators_give_the_zero_module(self, t3):
        pres = free_xmod(t3, [])
        assert pres.generators == ()
        assert pres.xm.top.dim == 0
        assert pres.xm.boundary.matrix.shape == (3, 0)
        assert koszul_free_induced_iso(t3, []).passed

    def test_zero_values_give_a_free_module_with_zero_product(self, t3):
        pres = free_xmod(t3, [t3.zero(), t3.zero()])
        assert pres.xm.top.dim == 6
        assert not pres.xm.top.table.any()
        assert not pres.xm.boundary.entries.any()
        assert image(pres.differential).dim == 0

    def test_over_f3(self):
        r = truncated_polynomial_algebra(3, 2, 'F3[x]/(x^2)')
        x = np.array([0, 1])
        report = koszul_free_induced_iso(r, [x, x])
        assert report.passed
        assert report.dims['im_d'] == 1


class TestCrossChecks:
    def test_theta_identities(self, t3, f_values):
        assert theta_identities(t3, f_values) == {'additive': True, 'balanced': True, 'multiplicative': True}

    def test_theta_identities_read_the_presentation(self, t3, f_values):
        pres = free_xmod(t3, f_values)
        broken = dataclasses.replace(pres, xm=CrossedModule(pres.xm.top, t3, zero_morphism(pres.xm.top, t3),
                                                            pres.xm.action))
        assert theta_identities(t3, f_values, broken) == {'additive': False, 'balanced': False,
                                                          'multiplicative': False}

    def test_forced_product_is_well_defined(self, t3, f_values):
        pres = free_xmod(t3, f_values)
        assert forced_product_check(pres) is True
        assert forced_product_check(free_xmod(t3, [t3.zero(), t3.zero()])) is True
        # |C| = 16 is above a bound of 8
        assert forced_product_check(pres, max_order=8) is None

    def test_iso_report(self, t3, f_values):
        report = koszul_free_induced_iso(t3, f_values)
        assert report.passed
        assert report.legs['forced_product_well_defined']
        assert report.dims == {'R^n': 6, 'im_d': 2, 'free_top': 4, 'koszul_cokernel': 4}
        assert report.to_dict()['not_constructed'] == ['tensor over the polynomial algebra k+[X]']


class TestUniversalProperty:
    def test_into_the_ideal(self, t3, f_values, ideal_xmod):
        pres = free_xmod(t3, f_values)
        report = free_universal_check(pres, ideal_xmod, [[1, 0], [0, 1]])
        assert report.count == 1
        assert report.passed

    def test_into_the_identity(self, t3, f_values):
        pres = free_xmod(t3, f_values)
        report = free_universal_check(pres, identity_xmod(t3), f_values)
        assert report.count == 1
        assert report.checks['triangle_commutes']

    def test_generator_images_must_cover_f(self, t3, f_values):
        pres = free_xmod(t3, f_values)
        with pytest.raises(WNotCompatible) as info:
            free_universal_check(pres, identity_xmod(t3), [t3.zero(), t3.zero()])
        assert info.value.witness == {'generator': 0}

    def test_ideal_closure_of_f(self, t3, f_values, ideal_x):
        assert ideal_closure(t3, f_values).space == ideal_x.space
