from fractions import Fraction

import pytest

from tropsing import PointConfiguration
from tropsing.series import PuiseuxPolynomial


@pytest.fixture
def intro_config():
    # hull (0,0),(2,0),(1,2),(0,1); canonical order sorts by y, then x
    return PointConfiguration.from_polygon([(0, 0), (2, 0), (1, 2), (0, 1)])


@pytest.fixture
def intro_heights():
    return tuple(Fraction(x) for x in (-1, 0, -1, -3, 0, 0))


@pytest.fixture
def intro_polynomial(intro_config):
    return PuiseuxPolynomial.from_coeff_map(
        intro_config,
        {
            (0, 0): "-t - t^3",
            (1, 0): "1 + 2*t + t^3",
            (2, 0): "-t",
            (0, 1): "t^3",
            (1, 1): "-2 - t^3",
            (1, 2): "1",
        },
    )


@pytest.fixture
def square_config():
    return PointConfiguration([(0, 0), (1, 0), (0, 1), (1, 1)])


@pytest.fixture
def five_point_config():
    # hull (0,0),(1,0),(1,2),(0,1) with (1,1) on the right edge
    return PointConfiguration([(0, 0), (1, 0), (0, 1), (1, 1), (1, 2)])


@pytest.fixture
def eight_point_config():
    # 3x3 grid with the lower-right corner cut off
    return PointConfiguration.from_polygon([(0, 0), (1, 0), (2, 1), (2, 2), (0, 2)])


@pytest.fixture
def grid_config():
    return PointConfiguration.from_polygon([(0, 0), (2, 0), (2, 2), (0, 2)])
