"""
Relatively open polyhedral cells and complexes over Q.

A cell is cut out by affine equalities and by inequalities that are either
strict or not. Cells are always bounded (they are clipped by a moment
polytope), so everything is decided exactly from the vertices of the
closure: emptiness, dimension, implicit equalities and the canonical form
used for duplicate elimination.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import DimensionMismatch, ParseError
from .lattice import rational_rank, rref, solve_rational
from .novikov import format_fraction, to_fraction

logger = logging.getLogger(__name__)

# An affine form (a, b) stands for u -> <a, u> + b.
Form = tuple


def form_value(form: Form, u: Sequence[Fraction]) -> Fraction:
    a, b = form
    return sum((x * y for x, y in zip(a, u)), Fraction(0)) + b


def normalize_form(a: Sequence[Any], b: Any) -> Form:
    """Positive rescaling to coprime integers, so equal half-spaces compare equal."""
    values = [Fraction(x) for x in a] + [Fraction(b)]
    denominator = math.lcm(*(x.denominator for x in values))
    ints = [int(x * denominator) for x in values]
    g = math.gcd(*ints)
    if g:
        ints = [x // g for x in ints]
    return tuple(Fraction(x) for x in ints[:-1]), Fraction(ints[-1])


def _reduce(form: Form, equalities: Sequence[list[Fraction]], pivots: Sequence[int]) -> Form:
    """Eliminate the pivot coordinates of RREF equality rows [a | b] from a form."""
    a = list(form[0])
    b = form[1]
    for row, p in zip(equalities, pivots):
        if a[p] != 0:
            f = a[p]
            a = [x - f * y for x, y in zip(a, row[:-1])]
            b = b - f * row[-1]
    return tuple(a), b


def _affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    if not points:
        return -1
    base = points[0]
    return rational_rank([[x - y for x, y in zip(p, base)] for p in points[1:]])


def _enumerate_vertices(n: int, eq_rows: list[list[Fraction]], forms: list[Form]) -> list[tuple]:
    """Vertices of {E u + e = 0, form(u) >= 0 for all forms}, assumed bounded."""
    need = n - len(eq_rows)
    found = set()
    for combo in itertools.combinations(range(len(forms)), need):
        A = [row[:-1] for row in eq_rows] + [list(forms[i][0]) for i in combo]
        rhs = [-row[-1] for row in eq_rows] + [-forms[i][1] for i in combo]
        u = solve_rational(A, rhs)
        if u is not None and all(form_value(f, u) >= 0 for f in forms):
            found.add(tuple(u))
    return sorted(found)


@dataclass(frozen=True)
class Cell:
    """
    Nonempty relatively open polyhedral cell in canonical form.

    Attributes:
        n: ambient dimension
        equalities: primitive integer forms vanishing on the cell (RREF of the affine hull)
        inequalities: (form, strict) pairs; facets of the closure plus strict
            forms cutting away lower dimensional boundary faces
        dim: dimension of the affine hull
        vertices: closure vertices, sorted
    """

    n: int
    equalities: tuple
    inequalities: tuple
    dim: int
    vertices: tuple = field(default=(), compare=False, repr=False)

    @classmethod
    def build(
        cls,
        n: int,
        equalities: Iterable[Form] = (),
        inequalities: Iterable[tuple[Form, bool]] = (),
    ) -> "Cell | None":
        """Canonical cell for the given constraints, or None when the set is empty."""
        equalities = [(tuple(Fraction(x) for x in a), Fraction(b)) for a, b in equalities]
        inequalities = [((tuple(Fraction(x) for x in a), Fraction(b)), bool(s)) for (a, b), s in inequalities]
        for a, _ in equalities + [f for f, _ in inequalities]:
            if len(a) != n:
                raise DimensionMismatch(f"Form of length {len(a)} in a cell of dimension {n}")

        while True:
            eq_rows, pivots = rref([list(a) + [b] for a, b in equalities]) if equalities else ([], [])
            if any(p == n for p in pivots):
                return None
            reduced = []
            for form, strict in inequalities:
                a, b = _reduce(form, eq_rows, pivots)
                if not any(a):
                    if b < 0 or (strict and b == 0):
                        return None
                    continue
                reduced.append(((a, b), strict))
            forms = [f for f, _ in reduced]
            vertices = _enumerate_vertices(n, eq_rows, forms)
            if not vertices:
                return None
            centroid = [sum(v[j] for v in vertices) / len(vertices) for j in range(n)]
            implicit = []
            for form, strict in reduced:
                if form_value(form, centroid) == 0:
                    if strict:
                        return None
                    implicit.append(form)
            if not implicit:
                break
            equalities = equalities + implicit
            inequalities = reduced

        dim = n - len(eq_rows)
        canonical_eqs = tuple(sorted(normalize_form(row[:-1], row[-1]) for row in eq_rows))
        if dim == 0:
            return cls(n, canonical_eqs, (), 0, tuple(vertices))

        facets: dict[frozenset, Form] = {}
        for form, _ in reduced:
            tight = frozenset(i for i, v in enumerate(vertices) if form_value(form, v) == 0)
            if tight and tight not in facets and _affine_rank([vertices[i] for i in tight]) == dim - 1:
                facets[tight] = normalize_form(*form)

        excluded: list[frozenset] = []
        for form, strict in reduced:
            if not strict:
                continue
            tight = frozenset(i for i, v in enumerate(vertices) if form_value(form, v) == 0)
            if tight:
                excluded.append(tight)
        maximal = [s for s in set(excluded) if not any(s < t for t in excluded)]

        strict_facets = set()
        extra = []
        for face in maximal:
            if face in facets:
                strict_facets.add(face)
                continue
            containing = [f for tight, f in facets.items() if face <= tight]
            a = [sum(f[0][j] for f in containing) for j in range(n)]
            b = sum(f[1] for f in containing)
            extra.append((normalize_form(a, b), True))

        ineqs = [(form, tight in strict_facets) for tight, form in facets.items()] + extra
        return cls(n, canonical_eqs, tuple(sorted(set(ineqs))), dim, tuple(vertices))

    @classmethod
    def point(cls, u: Sequence[Any]) -> "Cell":
        n = len(u)
        eqs = [(tuple(Fraction(int(i == j)) for j in range(n)), -to_fraction(x)) for i, x in enumerate(u)]
        return cls.build(n, eqs)

    # Queries

    def key(self) -> tuple:
        return self.equalities, self.inequalities

    def contains(self, u: Sequence[Any]) -> bool:
        if len(u) != self.n:
            raise DimensionMismatch(f"Expected a point of length {self.n}, got {len(u)}")
        u = [to_fraction(x) if not isinstance(x, Fraction) else x for x in u]
        if any(form_value(f, u) != 0 for f in self.equalities):
            return False
        for form, strict in self.inequalities:
            value = form_value(form, u)
            if value < 0 or (strict and value == 0):
                return False
        return True

    def closure_vertices(self) -> list[tuple]:
        return list(self.vertices)

    def relative_interior_point(self) -> tuple:
        """Centroid of the closure vertices."""
        return tuple(sum(v[j] for v in self.vertices) / len(self.vertices) for j in range(self.n))

    def excluded_vertices(self) -> list[tuple]:
        return [v for v in self.vertices if not self.contains(v)]

    def is_empty(self) -> bool:
        return False

    def closure(self) -> "Cell":
        return Cell.build(self.n, self.equalities, [(f, False) for f, _ in self.inequalities])

    def intersect(self, other: "Cell") -> "Cell | None":
        if other.n != self.n:
            raise DimensionMismatch(f"Cannot intersect cells in dimensions {self.n} and {other.n}")
        return Cell.build(
            self.n,
            self.equalities + other.equalities,
            self.inequalities + other.inequalities,
        )

    def issubset(self, other: "Cell") -> bool:
        """Exact inclusion test."""
        if other.n != self.n or self.dim > other.dim:
            return False
        for v in self.vertices:
            if any(form_value(f, v) != 0 for f in other.equalities):
                return False
            if any(form_value(f, v) < 0 for f, _ in other.inequalities):
                return False
        for form, strict in other.inequalities:
            if strict and Cell.build(self.n, self.equalities + (form,), self.inequalities) is not None:
                return False
        return True

    def sample(self, rng: random.Random, parts: int = 12) -> tuple:
        """
        Random rational point of the relative interior: positive convex
        weights k/parts on the vertices, keeping denominators small.
        """
        total = max(parts, len(self.vertices))
        cuts = sorted(rng.sample(range(1, total), len(self.vertices) - 1))
        weights = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        return tuple(
            Fraction(sum(w * v[j] for w, v in zip(weights, self.vertices)), total)
            for j in range(self.n)
        )

    # Serialization

    def to_json(self) -> dict:
        def form_json(form: Form) -> dict:
            return {"a": [format_fraction(x) for x in form[0]], "b": format_fraction(form[1])}

        return {
            "eq": [form_json(f) for f in self.equalities],
            "ineq": [dict(form_json(f), strict=s) for f, s in self.inequalities],
            "dim": self.dim,
            "vertices": [
                {"u": [format_fraction(x) for x in v], "included": self.contains(v)}
                for v in self.vertices
            ],
        }

    @classmethod
    def from_json(cls, n: int, data: dict) -> "Cell":
        try:
            eqs = [([to_fraction(x) for x in f["a"]], to_fraction(f["b"])) for f in data["eq"]]
            ineqs = [
                (([to_fraction(x) for x in f["a"]], to_fraction(f["b"])), bool(f["strict"]))
                for f in data["ineq"]
            ]
        except (KeyError, TypeError) as e:
            raise ParseError(f"Malformed cell: {e}") from e
        cell = cls.build(n, eqs, ineqs)
        if cell is None:
            raise ParseError("Cell is empty")
        return cell

    def __str__(self) -> str:
        parts = [f"{_format_form(f)} = 0" for f in self.equalities]
        parts += [f"{_format_form(f)} {'>' if s else '>='} 0" for f, s in self.inequalities]
        return "{" + ", ".join(parts) + "}"


def _format_form(form: Form) -> str:
    a, b = form
    text = ""
    for j, x in enumerate(a):
        if x == 0:
            continue
        coeff = "" if abs(x) == 1 else f"{abs(x)}*"
        sign = "-" if x < 0 else "+"
        text += f" {sign} {coeff}u{j + 1}" if text else f"{'-' if x < 0 else ''}{coeff}u{j + 1}"
    if b or not text:
        text += f" {'-' if b < 0 else '+'} {abs(b)}" if text else str(b)
    return text


@dataclass(frozen=True)
class Node:
    """A closure vertex of a complex; included when some cell contains it."""

    u: tuple
    included: bool


@dataclass(frozen=True)
class PolyhedralComplex:
    """
    Inclusion-maximal cells of a polyhedral set.

    Attributes:
        n: ambient dimension
        cells: canonical cells, pairwise distinct, none contained in another
        exact: False when the set is only an outer approximation of what it models
    """

    n: int
    cells: tuple = ()
    exact: bool = True

    @classmethod
    def from_cells(cls, n: int, cells: Iterable["Cell | None"], exact: bool = True) -> "PolyhedralComplex":
        unique: dict[tuple, Cell] = {}
        for cell in cells:
            if cell is None:
                continue
            if cell.n != n:
                raise DimensionMismatch(f"Cell of dimension {cell.n} in a complex of dimension {n}")
            unique.setdefault(cell.key(), cell)
        candidates = sorted(unique.values(), key=lambda c: (-c.dim, c.key()))
        maximal: list[Cell] = []
        for cell in candidates:
            if not any(cell.issubset(other) for other in maximal):
                maximal.append(cell)
        maximal.sort(key=lambda c: (c.dim, c.vertices, c.key()))
        return cls(n, tuple(maximal), exact)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def is_empty(self) -> bool:
        return not self.cells

    def max_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def contains(self, u: Sequence[Any]) -> bool:
        return any(c.contains(u) for c in self.cells)

    def nodes(self) -> list[Node]:
        """All closure vertices, flagged by membership."""
        points = sorted({v for c in self.cells for v in c.vertices})
        return [Node(v, self.contains(v)) for v in points]

    def closure(self) -> "PolyhedralComplex":
        return PolyhedralComplex.from_cells(self.n, (c.closure() for c in self.cells), self.exact)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "cells": [c.to_json() for c in self.cells],
            "exact": self.exact,
            "nodes": [{"u": [format_fraction(x) for x in node.u], "included": node.included} for node in self.nodes()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolyhedralComplex":
        try:
            n = int(data["n"])
            cells = [Cell.from_json(n, c) for c in data["cells"]]
            exact = bool(data.get("exact", True))
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Malformed complex: {e}") from e
        return cls.from_cells(n, cells, exact)
