"""
Tropical polynomials, tropical hypersurfaces and the tropical critical locus.

trop(f)(u) = min over terms of val(a_c) + <u, c>. Its hypersurface is where
the minimum is attained at least twice; cells are enumerated pair by pair
and clipped by the moment polytope.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .cells import Cell, PolyhedralComplex
from .conf import get_conf, run_parallel
from .errors import DimensionMismatch, UnsupportedDimension, ZeroPolynomial
from .novikov import to_fraction
from .polytope import MAX_EXACT_DIM, Polytope
from .potential import CorrectionTerm, LaurentPoly, SubtorusSpec, circuit_system, critical_system, potential

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TropPoly:
    """
    Tropicalization of a Laurent polynomial.

    Attributes:
        n: number of variables
        terms: (exponent tuple, weight) pairs, weight = val of the coefficient
    """

    n: int
    terms: tuple = ()

    def __post_init__(self):
        exponents = [c for c, _ in self.terms]
        if len(set(exponents)) != len(exponents):
            raise ValueError(f"Duplicate exponents in {exponents}")
        for c in exponents:
            if len(c) != self.n:
                raise DimensionMismatch(f"Exponent {c} is not of length {self.n}")

    def term_values(self, u: Sequence[Any]) -> list[Fraction]:
        if len(u) != self.n:
            raise DimensionMismatch(f"Expected a point of length {self.n}, got {len(u)}")
        u = [to_fraction(x) for x in u]
        return [w + sum((x * y for x, y in zip(c, u)), Fraction(0)) for c, w in self.terms]

    def __call__(self, u: Sequence[Any]) -> Fraction:
        return min(self.term_values(u))

    def shift(self, q: Any) -> "TropPoly":
        """Tropicalization of T^q * f."""
        q = to_fraction(q)
        return TropPoly(self.n, tuple((c, w + q) for c, w in self.terms))

    def __str__(self) -> str:
        pieces = []
        for c, w in self.terms:
            text = str(w) if w else ""
            for j, x in enumerate(c):
                if x == 0:
                    continue
                coeff = "" if abs(x) == 1 else f"{abs(x)}*"
                if text:
                    text += f" {'-' if x < 0 else '+'} {coeff}u{j + 1}"
                else:
                    text = f"{'-' if x < 0 else ''}{coeff}u{j + 1}"
            pieces.append(text or "0")
        return "min{" + ", ".join(pieces) + "}"


def tropicalize(f: LaurentPoly) -> TropPoly:
    if f.is_zero():
        raise ZeroPolynomial("Cannot tropicalize the zero polynomial")
    return TropPoly(f.n, tuple((c, a.val()) for c, a in f.terms))


def argmin_terms(tp: TropPoly, u: Sequence[Any]) -> frozenset:
    """Indices of the terms attaining the minimum at u."""
    values = tp.term_values(u)
    low = min(values)
    return frozenset(i for i, v in enumerate(values) if v == low)


def is_on_variety(tp: TropPoly, u: Sequence[Any]) -> bool:
    return len(argmin_terms(tp, u)) >= 2


def _clip_forms(clip: Polytope, open: bool) -> list[tuple]:
    return [((facet.normal, -facet.offset), open) for facet in clip.facets]


def polytope_cell(clip: Polytope, open: bool = True) -> Cell:
    """The (open) polytope as a single top-dimensional cell."""
    return Cell.build(clip.dim, (), _clip_forms(clip, open))


def _pair_cell(tp: TropPoly, pair: tuple[int, int], clip_forms: list[tuple]) -> Cell | None:
    k, l = pair
    ck, wk = tp.terms[k]
    cl, wl = tp.terms[l]
    equality = (tuple(x - y for x, y in zip(ck, cl)), wk - wl)
    inequalities = [
        ((tuple(x - y for x, y in zip(cm, ck)), wm - wk), False)
        for m, (cm, wm) in enumerate(tp.terms)
        if m not in pair
    ]
    return Cell.build(tp.n, [equality], inequalities + clip_forms)


def hypersurface_cells(tp: TropPoly, clip: Polytope, open: bool = True) -> PolyhedralComplex:
    """Cells of the tropical hypersurface of tp inside the (open) polytope."""
    if tp.n != clip.dim:
        raise DimensionMismatch(f"Tropical polynomial in {tp.n} variables, polytope of dimension {clip.dim}")
    if tp.n > MAX_EXACT_DIM:
        raise UnsupportedDimension(f"Exact cell enumeration supports n <= {MAX_EXACT_DIM}")
    clip_forms = _clip_forms(clip, open)
    cells = [_pair_cell(tp, pair, clip_forms) for pair in itertools.combinations(range(len(tp.terms)), 2)]
    result = PolyhedralComplex.from_cells(tp.n, cells)
    logger.debug("Hypersurface of %s: %d cells", tp, len(result))
    return result


def intersect_complexes(cs: Sequence[PolyhedralComplex]) -> PolyhedralComplex:
    """Pairwise cell intersections, folded over the list."""
    if not cs:
        raise ValueError("Need at least one complex to intersect")
    n = cs[0].n
    if any(c.n != n for c in cs):
        raise DimensionMismatch("Complexes live in different dimensions")
    result = cs[0]
    for other in cs[1:]:
        cells = [a.intersect(b) for a in result.cells for b in other.cells]
        result = PolyhedralComplex.from_cells(n, cells, result.exact and other.exact)
    return result


@dataclass(frozen=True)
class CritResult:
    """The tropical critical locus together with how it was obtained."""

    complex: PolyhedralComplex
    system: tuple = ()
    circuits: tuple = ()
    tropical: tuple = ()
    exact: bool = True
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def equations(self) -> int:
        return len(self.system)

    @property
    def used_circuits(self) -> bool:
        return bool(self.circuits)

    def lifting_equations(self) -> tuple:
        """Polynomials spanning the same Q-space as the system, to pick a square subsystem from."""
        return self.circuits or self.system

    def to_json(self) -> dict:
        data = self.complex.to_json()
        data.update(
            {
                "exact": self.exact,
                "equations": self.equations,
                "circuits": self.used_circuits,
                "system": [str(f) for f in self.system],
                "tropical": [str(tp) for tp in self.tropical],
            }
        )
        data.update(self.meta)
        return data


def crit_trop_result(P: Polytope, S: SubtorusSpec, cs: Sequence[CorrectionTerm] = ()) -> CritResult:
    """
    Run the full pipeline: critical system, tropicalization, hypersurface
    cells clipped to int P, intersection.

    With one equation the answer is exact. With more, the intersection over
    the minimal-support combinations of the equations is reported as an
    outer approximation.
    """
    system = [f for f in critical_system(P, S, cs) if not f.is_zero()]
    exact = len(system) <= 1
    circuits = circuit_system(potential(P, cs), S.A) if len(system) >= 2 else []
    equations = circuits or system
    if not equations:
        complex_ = PolyhedralComplex.from_cells(P.dim, [polytope_cell(P, open=True)], exact)
        return CritResult(complex_, tuple(system), tuple(circuits), (), exact)

    tropical = [tropicalize(f) for f in equations]
    hypersurfaces = run_parallel(lambda tp: hypersurface_cells(tp, P, open=True), tropical)
    complex_ = intersect_complexes(hypersurfaces)
    complex_ = PolyhedralComplex(complex_.n, complex_.cells, exact)
    logger.info(
        "Tropical critical locus for K=%s: %d cells of dimension %d%s",
        S.K, len(complex_), complex_.max_dim(), "" if exact else " (outer approximation)",
    )
    return CritResult(complex_, tuple(system), tuple(circuits), tuple(tropical), exact)


def crit_trop(P: Polytope, S: SubtorusSpec, cs: Sequence[CorrectionTerm] = ()) -> PolyhedralComplex:
    return crit_trop_result(P, S, cs).complex


def _grid_points(P: Polytope, step: Fraction):
    vertices = P.vertices()
    lows = [min(v[j] for v in vertices) for j in range(P.dim)]
    highs = [max(v[j] for v in vertices) for j in range(P.dim)]
    axes = []
    for low, high in zip(lows, highs):
        start = math.ceil(low / step)
        stop = math.floor(high / step)
        axes.append([k * step for k in range(start, stop + 1)])
    for u in itertools.product(*axes):
        if P.contains(u, strict=True):
            yield u


def grid_completeness(
    tps: Sequence[TropPoly],
    complex_: PolyhedralComplex,
    P: Polytope,
    step: Any = None,
) -> list[tuple]:
    """Grid points of int P on every hypersurface but outside the complex; empty means complete."""
    step = to_fraction(step) if step is not None else get_conf().grid_step
    missing = []
    for u in _grid_points(P, step):
        if all(is_on_variety(tp, u) for tp in tps) and not complex_.contains(u):
            missing.append(u)
    if missing:
        logger.warning("%d grid points on the variety are missing from the complex", len(missing))
    return missing


def soundness_violations(tps: Sequence[TropPoly], complex_: PolyhedralComplex, samples: int = 4, seed: int = 0) -> list[tuple]:
    """Sampled cell points that are off some hypersurface; empty means sound."""
    rng = random.Random(seed)
    bad = []
    for cell in complex_.cells:
        points = [cell.relative_interior_point()] + [cell.sample(rng) for _ in range(samples)]
        points += [v for v in cell.vertices if cell.contains(v)]
        bad.extend(u for u in points if not all(is_on_variety(tp, u) for tp in tps))
    return bad
