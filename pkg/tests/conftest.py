import numpy as np
import pytest

from xalg.algebra import ideal_closure, truncated_polynomial_algebra, validate_morphism
from xalg.catalog import load_bundled
from xalg.config import Settings
from xalg.linalg import unit_vector
from xalg.xmod import inclusion_xmod, zero_xmod


@pytest.fixture
def f2():
    return truncated_polynomial_algebra(2, 1, 'F2')


@pytest.fixture
def t3():
    return truncated_polynomial_algebra(2, 3, 'T3')


@pytest.fixture
def t4():
    return truncated_polynomial_algebra(2, 4, 'T4')


@pytest.fixture
def x(t3):
    return unit_vector(3, 1)


@pytest.fixture
def x2(t3):
    return unit_vector(3, 2)


@pytest.fixture
def ideal_x(t3, x):
    return ideal_closure(t3, [x], 'X')


@pytest.fixture
def ideal_x2(t3, x2):
    return ideal_closure(t3, [x2], 'X2')


@pytest.fixture
def projection(t3, f2):
    """T3 -> T3/(x) = F2."""
    return validate_morphism(t3, f2, np.array([[1, 0, 0]]), 'pi')


@pytest.fixture
def ideal_xmod(t3, ideal_x):
    return inclusion_xmod(t3, ideal_x, 'X->T3')


@pytest.fixture
def square_xmod(t3, ideal_x2):
    return inclusion_xmod(t3, ideal_x2, 'X2->T3')


@pytest.fixture
def zero_over_f2(f2):
    return zero_xmod(f2)


@pytest.fixture(scope='session')
def bundled():
    return load_bundled()


@pytest.fixture
def settings():
    return Settings()
