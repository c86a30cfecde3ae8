from fractions import Fraction

import pytest

from tropcrit.errors import DimensionMismatch, IndexOutOfRange, InvalidPolytope, ParseError, UnsupportedDimension
from tropcrit.novikov import NovikovSeries
from tropcrit.polytope import Polytope, contains, delzant_check, facet_value, vertices
from tropcrit.presets import cp2_blowup2

F = Fraction


def test_facet_value(cp2, s2xs2):
    assert facet_value(cp2, 2, (F(1, 3), F(1, 3))) == F(1, 3)
    assert facet_value(cp2, 0, (0, F(1, 2))) == 0
    assert facet_value(s2xs2, 2, (F(1, 2), 1)) == F(1, 2)


def test_facet_value_index_out_of_range(cp2):
    with pytest.raises(IndexOutOfRange):
        facet_value(cp2, 3, (0, 0))


def test_contains(cp2):
    assert contains(cp2, (F(1, 3), F(1, 3)), strict=True)
    assert not contains(cp2, (0, 1), strict=True)
    assert contains(cp2, (0, 1))
    assert not contains(cp2, (1, 1))
    with pytest.raises(DimensionMismatch):
        contains(cp2, (0, 0, 0))


def test_vertices(cp2):
    assert vertices(cp2) == [(0, 0), (0, 1), (1, 0)]
    assert vertices(cp2_blowup2(F(0))) == [(-1, -1), (-1, 1), (0, 1), (1, -1), (1, 0)]
    assert len(vertices(Polytope.box(1, 1))) == 4


def test_delzant():
    assert delzant_check(Polytope.simplex(2))
    assert delzant_check(Polytope.box(1, 2))
    assert delzant_check(Polytope.simplex(3))
    # the cone spanned by normals (1, 0) and (1, 2) at the origin has det 2
    assert not delzant_check(Polytope.from_facets([((1, 0), 0), ((1, 2), 0), ((-1, -1), -2)]))


def test_unbounded_rejected():
    with pytest.raises(InvalidPolytope):
        Polytope.from_facets([((1, 0), 0), ((0, 1), 0)])
    with pytest.raises(InvalidPolytope):
        Polytope.from_facets([((1, 0), 0), ((0, 1), 0), ((1, 1), 1)])


def test_empty_rejected():
    with pytest.raises(InvalidPolytope):
        Polytope.from_facets([((1, 0), 1), ((0, 1), 0), ((-1, -1), -1)])


def test_redundant_facet_rejected():
    with pytest.raises(InvalidPolytope):
        Polytope.from_facets([((1, 0), 0), ((0, 1), 0), ((-1, -1), -1), ((-1, 0), -2)])


def test_duplicate_facet_rejected():
    with pytest.raises(InvalidPolytope):
        Polytope.from_facets([((1, 0), 0), ((0, 1), 0), ((-1, -1), -1), ((2, 0), 0)])


def test_high_dimension_skips_enumeration():
    P = Polytope.simplex(4)
    assert P.contains((F(1, 10),) * 4, strict=True)
    with pytest.raises(UnsupportedDimension):
        P.vertices()


def test_polytopal_domain(cp2):
    y = [NovikovSeries.monomial(2, F(1, 3)), NovikovSeries.monomial(-1, F(1, 3))]
    assert cp2.in_polytopal_domain(y, strict=True)
    y = [NovikovSeries.monomial(1, 1), NovikovSeries.monomial(1, 1)]
    assert not cp2.in_polytopal_domain(y)
    assert not cp2.in_polytopal_domain([NovikovSeries.zero(), NovikovSeries.one()])


def test_json(cp2):
    data = cp2.to_json()
    assert data == {
        "dim": 2,
        "facets": [
            {"v": [1, 0], "lambda": "0/1"},
            {"v": [0, 1], "lambda": "0/1"},
            {"v": [-1, -1], "lambda": "-1/1"},
        ],
    }
    assert Polytope.from_json(data) == cp2
    with pytest.raises(ParseError):
        Polytope.from_json({"dim": 2})
    with pytest.raises(ParseError):
        Polytope.from_json(dict(data, dim=3))
