import numpy as np
import pytest

from xalg.algebra import identity_morphism, validate_morphism, zero_algebra, zero_ideal
from xalg.basechange import (adjunction_check, check_induced_relations, induce_epi, induce_ideal_inclusion,
                             induce_tensor, induced_universal_check, iso_search, pullback, pullback_universal_check,
                             pullback_zero_module)
from xalg.exceptions import (AugmentationUndefined, DimensionMismatch, NotSurjective, RNotUnital,
                             StructureClaimFails, ValidationError)
from xalg.linalg import image, kernel
from xalg.xmod import validate_xmod_morphism, zero_module_xmod


def zero_cone(source, target, phi):
    return validate_xmod_morphism(source, target, np.zeros((target.top.dim, source.top.dim), dtype=np.int64), phi)


@pytest.fixture
def module_over_f2(f2):
    return zero_module_xmod(f2, np.ones((1, 1, 1), dtype=np.int64), 'M1')


class TestPullback:
    def test_zero_into_the_field_pulls_back_to_the_ideal(self, zero_over_f2, projection, ideal_xmod):
        res = pullback(zero_over_f2, projection)
        assert res.xm.top.dim == 2
        assert image(res.xm.boundary.matrix) == kernel(projection.matrix)
        assert iso_search(res.xm, ideal_xmod) is not None

    def test_square_is_a_morphism(self, zero_over_f2, projection):
        res = pullback(zero_over_f2, projection)
        validate_xmod_morphism(res.xm, zero_over_f2, res.phi_prime, projection)
        assert res.morphism.phi is projection

    def test_along_the_identity(self, square_xmod, t3):
        res = pullback(square_xmod, identity_morphism(t3))
        assert iso_search(res.xm, square_xmod) is not None

    def test_zero_module_closed_form(self, module_over_f2, projection):
        res = pullback(module_over_f2, projection)
        closed = pullback_zero_module(module_over_f2, projection)
        assert res.xm.top.dim == closed.top.dim == 3
        assert iso_search(res.xm, closed) is not None

    def test_closed_form_needs_a_zero_boundary(self, ideal_xmod, t3):
        with pytest.raises(StructureClaimFails):
            pullback_zero_module(ideal_xmod, identity_morphism(t3))

    def test_base_dimensions_must_match(self, ideal_xmod, projection):
        with pytest.raises(DimensionMismatch):
            pullback(ideal_xmod, projection)

    def test_universal_property(self, ideal_xmod, zero_over_f2, projection):
        res = pullback(zero_over_f2, projection)
        report = pullback_universal_check(res, zero_cone(ideal_xmod, zero_over_f2, projection))
        assert report.count == 1
        assert report.passed


class TestInducedTensor:
    def test_ideal_along_the_projection(self, ideal_xmod, projection):
        res = induce_tensor(ideal_xmod, projection)
        assert res.ambient.dim == 2
        assert res.xm.top.dim == 1
        assert all(check_induced_relations(res).values())

    def test_along_the_identity(self, square_xmod, t3):
        res = induce_tensor(square_xmod, identity_morphism(t3))
        assert res.xm.top.dim == 1
        assert iso_search(res.xm, square_xmod) is not None

    def test_target_must_be_unital(self, ideal_xmod, t3):
        z = zero_algebra(2, 1, 'Z1')
        phi = validate_morphism(t3, z, np.zeros((1, 3), dtype=np.int64))
        with pytest.raises(RNotUnital):
            induce_tensor(ideal_xmod, phi)

    def test_universal_property(self, ideal_xmod, zero_over_f2, projection):
        res = induce_tensor(ideal_xmod, projection)
        report = induced_universal_check(res, zero_cone(ideal_xmod, zero_over_f2, projection))
        assert report.count == 1
        assert report.passed


class TestInduceEpi:
    def test_quotient_by_kd(self, ideal_xmod, projection):
        closed = induce_epi(ideal_xmod, projection)
        assert closed.top.dim == 1
        assert iso_search(closed, induce_tensor(ideal_xmod, projection).xm) is not None

    def test_rejects_non_surjection(self, zero_over_f2, f2, t3):
        unit_map = validate_morphism(f2, t3, np.array([[1], [0], [0]]))
        with pytest.raises(NotSurjective) as info:
            induce_epi(zero_over_f2, unit_map)
        assert info.value.witness == {'rank': 1, 'target_dim': 3}


class TestIdealInclusion:
    def test_ideal_inside_itself_in_t3(self, t3, ideal_x):
        result = induce_ideal_inclusion(t3, ideal_x, ideal_x)
        t_xm, report = result
        assert (report.q_dim, report.t_dim, report.tensor_dim) == (0, 2, 2)
        assert report.q_mode == 'augmented'
        assert report.q_choice == 'nilradical of R/S'
        assert report.isomorphic
        assert t_xm.top.dim == 2

    def test_square_ideal_in_t4(self, bundled):
        t4 = bundled.algebras['T4']
        s = bundled.ideals['T4X2']
        report = induce_ideal_inclusion(t4, s, s).report
        assert (report.q_dim, report.t_dim, report.tensor_dim) == (1, 4, 4)
        assert report.checks['representative_independent']
        assert report.isomorphic
        assert report.to_dict()['obstruction'] is None

    @pytest.mark.parametrize('s_name, d_name, dims', [
        ('T4X', 'T4X2', (0, 2, 2)),
        ('T4X2', 'T4X3', (1, 2, 2)),
    ])
    def test_strict_chains_in_t4(self, bundled, s_name, d_name, dims):
        t4 = bundled.algebras['T4']
        report = induce_ideal_inclusion(t4, bundled.ideals[s_name], bundled.ideals[d_name]).report
        assert (report.q_dim, report.t_dim, report.tensor_dim) == dims
        assert report.checks['representative_independent']
        assert report.isomorphic
        assert report.passed

    def test_zero_inner_ideal(self, t3, ideal_x):
        t_xm, report = induce_ideal_inclusion(t3, ideal_x, zero_ideal(t3))
        assert (report.q_dim, report.t_dim, report.tensor_dim) == (0, 0, 0)
        assert t_xm.top.dim == 0
        assert report.passed

    def test_zero_designated_ideal_has_no_augmentation(self, t3, ideal_x2):
        with pytest.raises(AugmentationUndefined) as info:
            induce_ideal_inclusion(t3, ideal_x2, ideal_x2, zero_ideal(t3))
        assert info.value.witness == {'quotient_dim': 2, 'q_dim': 0}

    def test_d_must_lie_in_s(self, t3, ideal_x, ideal_x2):
        with pytest.raises(ValidationError):
            induce_ideal_inclusion(t3, ideal_x2, ideal_x)


class TestAdjunction:
    def test_projection_into_zero(self, projection, ideal_xmod, zero_over_f2):
        report = adjunction_check(projection, ideal_xmod, zero_over_f2)
        assert (report.left_count, report.right_count) == (1, 1)
        assert report.passed

    @pytest.mark.parametrize('phi, d_name, c_name', [
        ('via-projection', 'aug-module', 'M1-over-F2'),
        ('t3-id', 't3-square-xmod', 't3-ideal-xmod'),
        ('t4-to-t3', 't4-ideal-xmod', 't3-ideal-xmod'),
    ])
    def test_bundled_triples(self, bundled, phi, d_name, c_name):
        report = adjunction_check(bundled.morphisms[phi], bundled.xmods[d_name], bundled.xmods[c_name])
        assert report.left_count == report.right_count
        assert report.passed
        assert report.to_dict()['passed'] is True
