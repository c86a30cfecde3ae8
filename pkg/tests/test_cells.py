import random
from fractions import Fraction

import pytest

from tropcrit.cells import Cell, Node, PolyhedralComplex, normalize_form
from tropcrit.errors import DimensionMismatch, ParseError

F = Fraction


def open_triangle():
    # 0 < u1, 0 < u2, u1 + u2 < 1
    return Cell.build(2, (), [(((1, 0), 0), True), (((0, 1), 0), True), (((-1, -1), 1), True)])


def test_normalize_form():
    assert normalize_form((F(1, 2), F(-1, 2)), F(3, 2)) == ((1, -1), 3)
    assert normalize_form((2, 4), 0) == ((1, 2), 0)
    assert normalize_form((0, 0), 0) == ((0, 0), 0)


def test_open_triangle():
    cell = open_triangle()
    assert cell.dim == 2
    assert cell.vertices == ((0, 0), (0, 1), (1, 0))
    assert cell.contains((F(1, 3), F(1, 3)))
    assert not cell.contains((0, F(1, 2)))
    assert cell.excluded_vertices() == [(0, 0), (0, 1), (1, 0)]


def test_empty_cells():
    # u1 = 2 misses the triangle
    assert Cell.build(2, [((1, 0), -2)], [(((1, 0), 0), False), (((0, 1), 0), False), (((-1, -1), 1), False)]) is None
    # strict inequality against its own boundary
    assert Cell.build(2, [((1, 0), 0)], [(((1, 0), 0), True), (((0, 1), 0), False), (((0, -1), 1), False)]) is None
    # inconsistent equalities
    assert Cell.build(2, [((1, 0), 0), ((1, 0), -1)]) is None


def test_implicit_equality_is_detected():
    # u2 >= 0 and -u2 >= 0 force u2 = 0
    cell = Cell.build(
        2, (), [(((1, 0), 0), False), (((-1, 0), 1), False), (((0, 1), 0), False), (((0, -1), 0), False)]
    )
    assert cell.dim == 1
    assert cell.equalities == (((0, 1), 0),)
    assert cell.vertices == ((0, 0), (1, 0))


def test_half_open_segment():
    # u1 = u2 with 0 < u1 <= 1/3
    cell = Cell.build(2, [((1, -1), 0)], [(((1, 0), 0), True), (((-3, 0), 1), False)])
    assert cell.dim == 1
    assert cell.contains((F(1, 3), F(1, 3)))
    assert not cell.contains((0, 0))
    assert [v for v in cell.vertices if cell.contains(v)] == [(F(1, 3), F(1, 3))]


def test_excluded_vertex_of_closed_facets():
    # closed square minus its corner (0, 0), cut away by a strict form through the corner only
    cell = Cell.build(
        2,
        (),
        [
            (((1, 0), 0), False),
            (((0, 1), 0), False),
            (((-1, 0), 1), False),
            (((0, -1), 1), False),
            (((1, 1), 0), True),
        ],
    )
    assert cell.dim == 2
    assert not cell.contains((0, 0))
    assert cell.contains((0, F(1, 2)))
    assert cell.contains((1, 1))


def test_equal_sets_have_equal_keys():
    a = Cell.build(2, [((2, -2), 0)], [(((1, 0), 0), True), (((-1, 0), F(1, 2)), True)])
    b = Cell.build(2, [((-1, 1), 0)], [(((2, 0), 0), True), (((-2, -2), 2), True), (((-4, 0), 2), True)])
    assert a.key() == b.key()


def test_point_cell():
    cell = Cell.point((F(1, 3), F(1, 3)))
    assert cell.dim == 0
    assert cell.contains((F(1, 3), F(1, 3)))
    assert cell.vertices == ((F(1, 3), F(1, 3)),)


def test_intersect_and_issubset():
    triangle = open_triangle()
    diagonal = Cell.build(2, [((1, -1), 0)], [(((1, 0), 0), False), (((-1, 0), 1), False)])
    meet = triangle.intersect(diagonal)
    assert meet.dim == 1
    assert meet.vertices == ((0, 0), (F(1, 2), F(1, 2)))
    assert meet.excluded_vertices() == [(0, 0), (F(1, 2), F(1, 2))]
    assert meet.issubset(triangle)
    assert meet.issubset(diagonal)
    assert not diagonal.issubset(triangle)
    assert Cell.point((F(1, 4), F(1, 4))).issubset(meet)
    assert not Cell.point((0, 0)).issubset(meet)


def test_closure():
    assert open_triangle().closure().contains((0, 0))


def test_sample_is_relative_interior():
    triangle = open_triangle()
    rng = random.Random(3)
    assert all(triangle.contains(triangle.sample(rng)) for _ in range(20))
    assert triangle.relative_interior_point() == (F(1, 3), F(1, 3))


def test_cell_json():
    cell = Cell.build(2, [((1, -1), 0)], [(((1, 0), 0), True), (((-3, 0), 1), False)])
    data = cell.to_json()
    assert data["eq"] == [{"a": ["1/1", "-1/1"], "b": "0/1"}]
    assert data["dim"] == 1
    assert {"u": ["1/3", "1/3"], "included": True} in data["vertices"]
    assert {"u": ["0/1", "0/1"], "included": False} in data["vertices"]
    assert Cell.from_json(2, data) == cell
    with pytest.raises(ParseError):
        Cell.from_json(2, {"eq": []})


def test_complex_keeps_maximal_cells():
    triangle = open_triangle()
    inside = Cell.point((F(1, 4), F(1, 4)))
    outside = Cell.point((1, 1))
    complex_ = PolyhedralComplex.from_cells(2, [inside, triangle, triangle, None, outside])
    assert len(complex_) == 2
    assert complex_.max_dim() == 2
    assert complex_.contains((F(1, 4), F(1, 4)))
    assert complex_.contains((1, 1))
    assert not complex_.contains((0, 0))


def test_complex_nodes():
    triangle = open_triangle()
    complex_ = PolyhedralComplex.from_cells(2, [triangle, Cell.point((0, 0))])
    assert complex_.nodes() == [Node((0, 0), True), Node((0, 1), False), Node((1, 0), False)]


def test_complex_json_and_dimension_check():
    complex_ = PolyhedralComplex.from_cells(2, [open_triangle()], exact=False)
    data = complex_.to_json()
    assert data["exact"] is False
    assert len(data["nodes"]) == 3
    assert PolyhedralComplex.from_json(data) == complex_
    with pytest.raises(DimensionMismatch):
        PolyhedralComplex.from_cells(3, [open_triangle()])
    assert PolyhedralComplex.from_cells(2, []).is_empty()
