from fractions import Fraction

import pytest

from tropcrit.cells import Cell, PolyhedralComplex
from tropcrit.errors import DimensionMismatch, ZeroPolynomial
from tropcrit.novikov import NovikovSeries, T
from tropcrit.polytope import Polytope
from tropcrit.potential import LaurentPoly, SubtorusSpec, critical_system
from tropcrit.presets import cp2_blowup1, cp2_blowup2
from tropcrit.tropical import (
    TropPoly,
    argmin_terms,
    crit_trop,
    crit_trop_result,
    grid_completeness,
    hypersurface_cells,
    intersect_complexes,
    is_on_variety,
    soundness_violations,
    tropicalize,
)

F = Fraction


def trop_of(P, *column):
    (f,) = critical_system(P, SubtorusSpec.from_columns(P.dim, [column]))
    return tropicalize(f)


def nodes_of(complex_):
    return {node.u: node.included for node in complex_.nodes()}


def test_tropicalize_cp2_generic(cp2):
    tp = trop_of(cp2, 1, 2)
    assert sorted(tp.terms) == [((-1, -1), 1), ((0, 1), 0), ((1, 0), 0)]
    assert tp((F(1, 10), F(1, 10))) == F(1, 10)
    assert str(tp) == "min{u1, u2, 1 - u1 - u2}"


def test_tropicalize_s2xs2(s2xs2):
    tp = trop_of(s2xs2, 1, 2)
    assert str(tp) == "min{u1, u2, 1 - u1, 2 - u2}"


def test_tropicalize_monomial_and_zero():
    f = LaurentPoly.monomial((1, 0), NovikovSeries.monomial(1, 2))
    assert tropicalize(f).terms == (((1, 0), 2),)
    with pytest.raises(ZeroPolynomial):
        tropicalize(LaurentPoly.zero(2))


def test_argmin_terms(cp2):
    tp = trop_of(cp2, 1, 2)
    index = {c: i for i, (c, _) in enumerate(tp.terms)}
    assert argmin_terms(tp, (F(1, 3), F(1, 3))) == frozenset(range(3))
    assert argmin_terms(tp, (F(1, 10), F(1, 10))) == frozenset({index[(1, 0)], index[(0, 1)]})
    assert argmin_terms(tp, (F(1, 10), F(1, 2))) == frozenset({index[(1, 0)]})


def test_is_on_variety(cp2):
    assert is_on_variety(trop_of(cp2, 0, 1), (F(1, 4), F(1, 2)))
    assert not is_on_variety(trop_of(cp2, 1, 2), (F(1, 10), F(1, 2)))
    assert not is_on_variety(TropPoly(2, (((1, 0), F(0)),)), (1, 2))


def test_hypersurface_cp2_generic(cp2):
    complex_ = hypersurface_cells(trop_of(cp2, 1, 2), cp2)
    assert len(complex_) == 3
    assert all(cell.dim == 1 for cell in complex_)
    assert nodes_of(complex_) == {
        (0, 0): False,
        (0, 1): False,
        (1, 0): False,
        (F(1, 3), F(1, 3)): True,
    }


def test_hypersurface_cp2_coordinate_subtorus(cp2):
    complex_ = hypersurface_cells(trop_of(cp2, 0, 1), cp2)
    (cell,) = complex_.cells
    assert cell.dim == 1
    assert cell.vertices == ((0, 1), (F(1, 2), 0))
    assert cell.excluded_vertices() == [(0, 1), (F(1, 2), 0)]
    assert cell.contains((F(1, 4), F(1, 2)))


def test_hypersurface_closed_clip_keeps_endpoints(cp2):
    complex_ = hypersurface_cells(trop_of(cp2, 0, 1), cp2, open=False)
    assert complex_.contains((0, 1))
    assert complex_.contains((F(1, 2), 0))


def test_hypersurface_s2xs2_generic(s2xs2):
    complex_ = hypersurface_cells(trop_of(s2xs2, 1, 2), s2xs2)
    assert len(complex_) == 5
    vertical = [c for c in complex_ if c.vertices == ((F(1, 2), F(1, 2)), (F(1, 2), F(3, 2)))]
    assert len(vertical) == 1
    assert vertical[0].contains((F(1, 2), 1))
    assert set(nodes_of(complex_)) == {(0, 0), (0, 2), (1, 0), (1, 2), (F(1, 2), F(1, 2)), (F(1, 2), F(3, 2))}


def test_hypersurface_dimension_mismatch(cp2):
    with pytest.raises(DimensionMismatch):
        hypersurface_cells(TropPoly(3, (((1, 0, 0), F(0)), ((0, 1, 0), F(0)))), cp2)


def test_intersect_transverse_lines():
    box = Polytope.box(2, 2)
    vertical = hypersurface_cells(TropPoly(2, (((1, 0), F(0)), ((0, 0), F(1)))), box)
    horizontal = hypersurface_cells(TropPoly(2, (((0, 1), F(0)), ((0, 0), F(1)))), box)
    meet = intersect_complexes([vertical, horizontal])
    (cell,) = meet.cells
    assert cell.dim == 0
    assert cell.vertices == ((1, 1),)
    assert intersect_complexes([vertical]) == vertical


def test_crit_trop_cp2_generic(cp2):
    result = crit_trop_result(cp2, SubtorusSpec.from_columns(2, [(1, 2)]))
    assert result.exact
    assert result.equations == 1
    assert not result.used_circuits
    assert len(result.complex) == 3
    assert nodes_of(result.complex)[(F(1, 3), F(1, 3))] is True


def test_crit_trop_cp2_equal_weights(cp2):
    (cell,) = crit_trop(cp2, SubtorusSpec.from_columns(2, [(1, 1)])).cells
    assert cell.vertices == ((0, 0), (F(1, 2), F(1, 2)))
    assert cell.excluded_vertices() == [(0, 0), (F(1, 2), F(1, 2))]


def test_crit_trop_one_point_blowup():
    P = cp2_blowup1(F(1, 4))
    complex_ = crit_trop(P, SubtorusSpec.from_columns(2, [(1, 2)]))
    assert len(complex_) == 5
    nodes = nodes_of(complex_)
    assert nodes[(F(1, 4), F(1, 2))] is True
    assert nodes[(F(1, 3), F(1, 3))] is True


def test_crit_trop_two_point_blowup_coordinate_subtorus():
    P = cp2_blowup2(F(0))
    complex_ = crit_trop(P, SubtorusSpec.from_columns(2, [(0, 1)]))
    assert len(complex_) == 3
    assert nodes_of(complex_) == {
        (F(-1, 2), 1): False,
        (0, -1): False,
        (0, 0): True,
        (1, 0): False,
    }
    assert complex_.contains((F(-1, 4), F(1, 2)))
    assert complex_.contains((0, F(-1, 2)))
    assert complex_.contains((F(1, 2), 0))


def test_crit_trop_full_torus_is_a_point(cp2):
    result = crit_trop_result(cp2, SubtorusSpec.from_columns(2, []))
    assert not result.exact
    assert result.used_circuits
    assert len(result.circuits) == 3
    (cell,) = result.complex.cells
    assert cell == Cell.point((F(1, 3), F(1, 3)))


def test_crit_trop_without_equations_is_the_open_polytope():
    P = Polytope.simplex(1)
    result = crit_trop_result(P, SubtorusSpec.from_columns(1, [(1,)]))
    assert result.equations == 0
    (cell,) = result.complex.cells
    assert cell.dim == 1
    assert not cell.contains((0,))


def test_crit_trop_cp3_rank_one_is_a_curve():
    P = Polytope.simplex(3)
    result = crit_trop_result(P, SubtorusSpec.from_columns(3, [(1, 2, 4)]))
    assert not result.exact
    assert result.complex.max_dim() == 1


def test_result_json(cp2):
    data = crit_trop_result(cp2, SubtorusSpec.from_columns(2, [(1, 2)])).to_json()
    assert data["exact"] is True
    assert data["equations"] == 1
    assert data["system"] == ["2*y1 - y2 - T^1*y1^-1*y2^-1"]
    assert len(data["cells"]) == 3
    assert {"u": ["1/3", "1/3"], "included": True} in data["nodes"]


def test_grid_and_soundness_checks(cp2):
    tp = trop_of(cp2, 1, 2)
    complex_ = hypersurface_cells(tp, cp2)
    assert grid_completeness([tp], complex_, cp2, step=F(1, 12)) == []
    assert soundness_violations([tp], complex_) == []
    partial = PolyhedralComplex.from_cells(2, complex_.cells[:2])
    assert grid_completeness([tp], partial, cp2, step=F(1, 12))
