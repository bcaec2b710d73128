import math

import pytest

from chessgeo import medium
from chessgeo.errors import DomainError


def test_origin_square_is_light_and_neighbours_dark():
    assert not medium.is_dark(0, 0)
    assert medium.is_dark(1, 0) and medium.is_dark(0, 1) and medium.is_dark(-1, 0)
    assert not medium.is_dark(1, 1)


def test_index_on_sides_is_one():
    assert medium.refractive_index(1.5, 0.5, 2.0) == 2.0
    assert medium.refractive_index(1.0, 0.5, 2.0) == 1.0
    assert medium.refractive_index(1.5, 3.0, 2.0) == 1.0
    assert medium.refractive_index(0.5, 0.5, 2.0) == 1.0


def test_light_vertices():
    assert medium.is_light_vertex(0, 0)
    assert medium.is_light_vertex(3, 1)
    assert not medium.is_light_vertex(2, 1)
    assert not medium.is_light_vertex(0.5, 0.5)
    assert medium.light_vertex_point(2, 3) == (7, 3)
    with pytest.raises(DomainError):
        medium.light_vertex_point(-1, 0)


def test_strip_layout_splits_at_integers():
    assert medium.strip_layout(0.5, 2.25, 0) == [(0.5, False), (1.0, True), (0.25, False)]
    assert medium.strip_thicknesses(0.0, 3.0, 0) == (2.0, 1.0)
    assert medium.strip_thicknesses(0.0, 3.0, 1) == (1.0, 2.0)


def test_optical_length_of_side_and_diagonal():
    assert medium.optical_length([(0, 0), (3, 0)], 2.0) == pytest.approx(3.0, abs=1e-15)
    assert medium.optical_length([(0, 0), (1, 1)], 2.0) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert medium.optical_length([(1, 0), (2, 1)], 2.0) == pytest.approx(2 * math.sqrt(2), abs=1e-15)
    # along a vertical side between a light and a dark square
    assert medium.optical_length([(1, 0), (1, 1)], 2.0) == pytest.approx(1.0, abs=1e-15)
