"""Delzant moment polytopes in H-representation."""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, InvalidPolytope, ParseError, UnsupportedDimension
from .lattice import IntMatrix, det, rational_rank, rref, solve_rational
from .novikov import NovikovSeries, format_fraction, to_fraction

logger = logging.getLogger(__name__)

MAX_EXACT_DIM = 3


@dataclass(frozen=True)
class Facet:
    """One inequality <u, normal> - offset >= 0."""

    normal: tuple
    offset: Fraction

    def value(self, u: Sequence[Fraction]) -> Fraction:
        return sum((Fraction(c) * x for c, x in zip(self.normal, u)), Fraction(0)) - self.offset


def nullspace_vector(rows: Sequence[Sequence[Fraction]], n: int) -> list[Fraction] | None:
    """A nonzero vector orthogonal to the given rows when their kernel is a line, else None."""
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [j for j in range(n) if j not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    vec = [Fraction(0)] * n
    vec[f] = Fraction(1)
    for row, p in zip(reduced, pivots):
        vec[p] = -row[f]
    return vec


@dataclass(frozen=True)
class Polytope:
    """
    Moment polytope {u : <u, v_i> - lambda_i >= 0 for all facets i}.

    Validated on construction for dim <= 3: bounded, nonempty interior and
    no redundant facet. Higher dimensions are accepted unchecked.
    """

    dim: int
    facets: tuple = ()
    _vertices: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        for facet in self.facets:
            if len(facet.normal) != self.dim:
                raise DimensionMismatch(f"Facet normal {facet.normal} is not of length {self.dim}")
        if self.dim <= MAX_EXACT_DIM:
            object.__setattr__(self, "_vertices", tuple(self._validate()))
        else:
            logger.debug("Skipping exact validation of a %d-dimensional polytope", self.dim)

    @classmethod
    def from_facets(cls, facets: Sequence[tuple[Sequence[int], Any]]) -> "Polytope":
        """Build from (normal, offset) pairs."""
        facets = [Facet(tuple(int(x) for x in v), to_fraction(lam)) for v, lam in facets]
        if not facets:
            raise InvalidPolytope("A polytope needs facets")
        return cls(len(facets[0].normal), tuple(facets))

    @classmethod
    def simplex(cls, n: int, size: Any = 1) -> "Polytope":
        """Moment polytope of CP^n: u_i >= 0 and size - sum(u) >= 0."""
        facets = [([int(i == j) for j in range(n)], 0) for i in range(n)]
        facets.append(([-1] * n, -to_fraction(size)))
        return cls.from_facets(facets)

    @classmethod
    def box(cls, c: Any, d: Any) -> "Polytope":
        """Moment polytope of S^2(c/2) x S^2(d/2): 0 <= u1 <= c, 0 <= u2 <= d."""
        return cls.from_facets([([1, 0], 0), ([0, 1], 0), ([-1, 0], -to_fraction(c)), ([0, -1], -to_fraction(d))])

    @property
    def m(self) -> int:
        return len(self.facets)

    def normal_matrix(self) -> IntMatrix:
        return IntMatrix.from_rows([f.normal for f in self.facets], self.dim)

    # Operations

    def facet_value(self, i: int, u: Sequence[Any]) -> Fraction:
        """l_i(u) = <u, v_i> - lambda_i."""
        if not 0 <= i < self.m:
            raise IndexOutOfRange(f"Facet index {i} out of range for {self.m} facets")
        return self.facets[i].value(self._point(u))

    def contains(self, u: Sequence[Any], strict: bool = False) -> bool:
        u = self._point(u)
        if strict:
            return all(f.value(u) > 0 for f in self.facets)
        return all(f.value(u) >= 0 for f in self.facets)

    def vertices(self) -> list[tuple]:
        """All 0-faces, sorted lexicographically."""
        if self.dim > MAX_EXACT_DIM:
            raise UnsupportedDimension(f"Exact vertex enumeration supports dim <= {MAX_EXACT_DIM}")
        return list(self._vertices)

    def tight_facets(self, u: Sequence[Any]) -> list[int]:
        u = self._point(u)
        return [i for i, f in enumerate(self.facets) if f.value(u) == 0]

    def delzant_check(self) -> bool:
        """True iff at every vertex exactly dim facets are tight and their normals form a Z-basis."""
        for vertex in self.vertices():
            tight = self.tight_facets(vertex)
            if len(tight) != self.dim:
                return False
            normals = IntMatrix.from_rows([self.facets[i].normal for i in tight], self.dim)
            if abs(det(normals)) != 1:
                return False
        return True

    def interior_point(self) -> tuple:
        """Centroid of the vertices."""
        vertices = self.vertices()
        return tuple(sum(v[j] for v in vertices) / len(vertices) for j in range(self.dim))

    def in_polytopal_domain(self, y: Sequence[NovikovSeries], strict: bool = False) -> bool:
        """True iff the valuation vector of y lies in the polytope (its interior when strict)."""
        if len(y) != self.dim:
            raise DimensionMismatch(f"Expected {self.dim} coordinates, got {len(y)}")
        if any(s.is_zero() for s in y):
            return False
        return self.contains([s.val() for s in y], strict=strict)

    # Serialization

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "facets": [{"v": list(f.normal), "lambda": format_fraction(f.offset)} for f in self.facets],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Polytope":
        try:
            dim = int(data["dim"])
            facets = [(f["v"], f["lambda"]) for f in data["facets"]]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Malformed polytope: {e}") from e
        polytope = cls.from_facets(facets)
        if polytope.dim != dim:
            raise ParseError(f"Declared dim {dim} but normals have length {polytope.dim}")
        return polytope

    # Internals

    def _point(self, u: Sequence[Any]) -> list[Fraction]:
        if len(u) != self.dim:
            raise DimensionMismatch(f"Expected a point of length {self.dim}, got {len(u)}")
        return [to_fraction(x) for x in u]

    def _validate(self) -> list[tuple]:
        n = self.dim
        normals = [[Fraction(x) for x in f.normal] for f in self.facets]
        if rational_rank(normals) < n:
            raise InvalidPolytope("Facet normals do not span: polytope is unbounded")
        for rows in itertools.combinations(normals, n - 1):
            d = nullspace_vector(list(rows), n)
            if d is None:
                continue
            for direction in (d, [-x for x in d]):
                if all(sum(a * b for a, b in zip(v, direction)) >= 0 for v in normals):
                    raise InvalidPolytope(f"Polytope is unbounded along {direction}")

        vertices = set()
        for combo in itertools.combinations(range(self.m), n):
            A = [normals[i] for i in combo]
            b = [self.facets[i].offset for i in combo]
            u = solve_rational(A, b)
            if u is not None and all(f.value(u) >= 0 for f in self.facets):
                vertices.add(tuple(u))
        if not vertices:
            raise InvalidPolytope("Polytope is empty")
        vertices = sorted(vertices)
        centroid = [sum(v[j] for v in vertices) / len(vertices) for j in range(n)]
        if not all(f.value(centroid) > 0 for f in self.facets):
            raise InvalidPolytope("Polytope has empty interior")

        for i, facet in enumerate(self.facets):
            on_facet = [v for v in vertices if facet.value(v) == 0]
            if not on_facet or rational_rank([[a - b for a, b in zip(v, on_facet[0])] for v in on_facet[1:]]) < n - 1:
                raise InvalidPolytope(f"Facet {i} {facet.normal} >= {facet.offset} is redundant")
            for j in range(i):
                if self._same_halfspace(self.facets[j], facet):
                    raise InvalidPolytope(f"Facet {i} duplicates facet {j}")
        return vertices

    @staticmethod
    def _same_halfspace(a: Facet, b: Facet) -> bool:
        ratios = {Fraction(x, y) for x, y in zip(a.normal, b.normal) if y}
        if len(ratios) != 1 or any((x == 0) != (y == 0) for x, y in zip(a.normal, b.normal)):
            return False
        ratio = ratios.pop()
        return ratio > 0 and a.offset == ratio * b.offset


def facet_value(P: Polytope, i: int, u: Sequence[Any]) -> Fraction:
    return P.facet_value(i, u)


def contains(P: Polytope, u: Sequence[Any], strict: bool = False) -> bool:
    return P.contains(u, strict=strict)


def vertices(P: Polytope) -> list[tuple]:
    return P.vertices()


def delzant_check(P: Polytope) -> bool:
    return P.delzant_check()
