"""
Laurent polynomials over the Novikov field and the potential function.

The potential of a toric manifold has one monomial per facet of its moment
polytope. Critical points along a subtorus G = K T^r are the common zeros of
the derivatives of PO along the annihilator directions of K.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, LengthMismatch, ParseError, ZeroCoordinate
from .lattice import IntMatrix, annihilator_basis, rref
from .novikov import INF, NovikovSeries, format_scalar, to_fraction, to_scalar
from .polytope import Polytope, nullspace_vector

logger = logging.getLogger(__name__)


def _term_key(c: tuple) -> tuple:
    # graded: higher total degree first, then larger absolute exponents, then lex
    return (-sum(c), tuple(-abs(x) for x in c), tuple(-x for x in c))


def _coerce_coefficient(value: Any) -> NovikovSeries:
    if isinstance(value, NovikovSeries):
        return value
    return NovikovSeries.constant(value)


@dataclass(frozen=True)
class LaurentPoly:
    """
    Sparse Laurent polynomial in y1..yn with NovikovSeries coefficients.

    Attributes:
        n: number of variables
        terms: (exponent tuple, coefficient) pairs in printing order; no zero coefficients
    """

    n: int
    terms: tuple = ()

    def __post_init__(self):
        for c, coeff in self.terms:
            if len(c) != self.n:
                raise DimensionMismatch(f"Exponent {c} is not of length {self.n}")
            if coeff.is_zero():
                raise ValueError(f"Zero coefficient stored at exponent {c}")

    @classmethod
    def from_terms(cls, n: int, pairs: Iterable[tuple[Sequence[int], Any]]) -> "LaurentPoly":
        """Merge (exponent, coefficient) pairs; cancelled terms are dropped."""
        acc: dict[tuple, NovikovSeries] = {}
        for c, coeff in pairs:
            c = tuple(int(x) for x in c)
            coeff = _coerce_coefficient(coeff)
            acc[c] = acc[c] + coeff if c in acc else coeff
        terms = tuple((c, acc[c]) for c in sorted(acc, key=_term_key) if not acc[c].is_zero())
        return cls(n, terms)

    @classmethod
    def zero(cls, n: int) -> "LaurentPoly":
        return cls(n, ())

    @classmethod
    def monomial(cls, c: Sequence[int], coeff: Any = 1) -> "LaurentPoly":
        return cls.from_terms(len(c), [(c, coeff)])

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, c: Sequence[int]) -> NovikovSeries:
        c = tuple(c)
        for exponent, coeff in self.terms:
            if exponent == c:
                return coeff
        return NovikovSeries.zero()

    def support(self) -> list[tuple]:
        return [c for c, _ in self.terms]

    # Arithmetic

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if other.n != self.n:
            raise DimensionMismatch(f"Cannot add polynomials in {self.n} and {other.n} variables")
        return LaurentPoly.from_terms(self.n, self.terms + other.terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.n, tuple((c, -a) for c, a in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def scale(self, factor: Any) -> "LaurentPoly":
        """Multiply every coefficient by a series or scalar."""
        factor = _coerce_coefficient(factor)
        return LaurentPoly.from_terms(self.n, [(c, a * factor) for c, a in self.terms])

    def __mul__(self, factor: Any) -> "LaurentPoly":
        if isinstance(factor, LaurentPoly):
            if factor.n != self.n:
                raise DimensionMismatch(f"Cannot multiply polynomials in {self.n} and {factor.n} variables")
            return LaurentPoly.from_terms(
                self.n,
                [
                    (tuple(x + y for x, y in zip(c, d)), a * b)
                    for c, a in self.terms
                    for d, b in factor.terms
                ],
            )
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms)))

    # Calculus

    def _check_index(self, j: int):
        if not 0 <= j < self.n:
            raise IndexOutOfRange(f"Variable index {j} out of range for {self.n} variables")

    def log_derivative(self, j: int) -> "LaurentPoly":
        """y_j d/dy_j: each term a*y^c becomes c_j*a*y^c."""
        self._check_index(j)
        return LaurentPoly.from_terms(self.n, [(c, a.scale(c[j])) for c, a in self.terms if c[j]])

    def partial(self, j: int) -> "LaurentPoly":
        """Ordinary derivative d/dy_j."""
        self._check_index(j)
        return LaurentPoly.from_terms(
            self.n,
            [
                (tuple(x - (k == j) for k, x in enumerate(c)), a.scale(c[j]))
                for c, a in self.terms
                if c[j]
            ],
        )

    def substitute_monomial_scaling(self, u: Sequence[Any]) -> "LaurentPoly":
        """The polynomial in x obtained by putting y_j = T^{u_j} x_j."""
        if len(u) != self.n:
            raise DimensionMismatch(f"Expected {self.n} weights, got {len(u)}")
        u = [to_fraction(x) for x in u]
        return LaurentPoly.from_terms(
            self.n,
            [(c, a.shift(sum((x * w for x, w in zip(c, u)), Fraction(0)))) for c, a in self.terms],
        )

    # Evaluation

    def eval(self, y: Sequence[NovikovSeries], order: Any) -> NovikovSeries:
        """
        Value at y, truncated at the absolute order.

        Negative powers are computed by series inversion with enough relative
        precision that every term is known up to order.
        """
        if len(y) != self.n:
            raise DimensionMismatch(f"Expected {self.n} coordinates, got {len(y)}")
        order = to_fraction(order)
        y = [_coerce_coefficient(s) for s in y]
        for j, s in enumerate(y):
            if s.is_zero() and any(c[j] < 0 for c, _ in self.terms):
                raise ZeroCoordinate(f"Coordinate y{j + 1} is zero but appears with a negative exponent")

        total = NovikovSeries.zero(order)
        inverses: dict[tuple[int, Fraction], NovikovSeries] = {}
        for c, a in self.terms:
            if any(y[j].is_zero() for j in range(self.n) if c[j] > 0):
                continue
            term_val = a.val() + sum(c[j] * y[j].val() for j in range(self.n) if c[j])
            rel = order - term_val
            if rel <= 0:
                continue
            value = a.truncate(a.val() + rel)
            for j, k in enumerate(c):
                if k == 0:
                    continue
                base = y[j]
                if k < 0:
                    key = (j, rel)
                    if key not in inverses:
                        inverses[key] = base.invert(rel)
                    base = inverses[key]
                power = base.pow(abs(k), abs(k) * base.val() + rel)
                value = value * power
            total = total + value.truncate(order)
        return total.truncate(order)

    # Serialization

    def to_json(self) -> dict:
        return {"n": self.n, "terms": [{"c": list(c), "coeff": a.to_json()} for c, a in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        try:
            n = int(data["n"])
            pairs = [(term["c"], NovikovSeries.from_json(term["coeff"])) for term in data["terms"]]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Malformed polynomial: {e}") from e
        return cls.from_terms(n, pairs)

    def __str__(self) -> str:
        return format_poly(self)


def _format_monomial(c: tuple) -> list[str]:
    parts = []
    for j, k in enumerate(c):
        if k == 1:
            parts.append(f"y{j + 1}")
        elif k:
            parts.append(f"y{j + 1}^{k}")
    return parts


def format_term(c: tuple, coeff: NovikovSeries) -> str:
    """One term as "a*T^w*y1^a*y2^b"; unit coefficients and T^0 are left out."""
    variables = _format_monomial(c)
    if len(coeff.terms) != 1 or not coeff.is_exact():
        return "*".join([f"({coeff})"] + variables)
    w, a = coeff.terms[0]
    parts = ([f"T^{w}"] if w != 0 else []) + variables
    if not parts:
        return format_scalar(a)
    if isinstance(a, Fraction) and a == 1:
        return "*".join(parts)
    if isinstance(a, Fraction) and a == -1:
        return "-" + "*".join(parts)
    return "*".join([format_scalar(a)] + parts)


def format_poly(f: LaurentPoly) -> str:
    """Pretty print, e.g. "y1 + y2 + T^1*y1^-1*y2^-1"."""
    if f.is_zero():
        return "0"
    text = ""
    for i, (c, a) in enumerate(f.terms):
        term = format_term(c, a)
        if i == 0:
            text = term
        elif term.startswith("-"):
            text += " - " + term[1:]
        else:
            text += " + " + term
    return text


@dataclass(frozen=True)
class CorrectionTerm:
    """
    Higher-order correction r * prod_i (y^{v_i} T^{-lambda_i})^{e_i} * T^rho of a non-Fano potential.
    """

    r: Any
    e: tuple
    rho: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", to_scalar(self.r))
        object.__setattr__(self, "e", tuple(int(x) for x in self.e))
        object.__setattr__(self, "rho", to_fraction(self.rho))
        if self.rho <= 0:
            raise ValueError(f"Correction energy rho must be positive, got {self.rho}")
        if sum(self.e) <= 0:
            raise ValueError(f"Correction exponents must have positive sum, got {self.e}")

    def to_json(self) -> dict:
        r = self.r
        return {
            "r": f"{r.numerator}/{r.denominator}" if isinstance(r, Fraction) else [r.real, r.imag],
            "e": list(self.e),
            "rho": f"{self.rho.numerator}/{self.rho.denominator}",
        }

    @classmethod
    def from_json(cls, data: dict) -> "CorrectionTerm":
        try:
            r = data["r"]
            r = complex(*r) if isinstance(r, list) else to_fraction(r)
            return cls(r, tuple(data["e"]), to_fraction(data["rho"]))
        except (KeyError, TypeError) as e:
            raise ParseError(f"Malformed correction term: {e}") from e


@dataclass(frozen=True)
class SubtorusSpec:
    """
    Subtorus G = K T^r of T^n given by an n x r integer matrix of rank r.

    A holds the annihilator directions alpha_{r+1}..alpha_n as rows.
    """

    K: IntMatrix
    A: IntMatrix = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "A", annihilator_basis(self.K))

    @classmethod
    def from_columns(cls, n: int, columns: Sequence[Sequence[int]]) -> "SubtorusSpec":
        """Build K from its columns; no columns means the trivial subtorus (r = 0)."""
        for col in columns:
            if len(col) != n:
                raise DimensionMismatch(f"Subtorus column {list(col)} is not of length {n}")
        if not columns:
            return cls(IntMatrix.zeros(n, 0))
        return cls(IntMatrix.from_rows(columns, n).transpose())

    @property
    def n(self) -> int:
        return self.K.rows

    @property
    def r(self) -> int:
        return self.K.cols

    def columns(self) -> list[list[int]]:
        return [list(self.K.column(j)) for j in range(self.r)]


# Operations

def leading_potential(P: Polytope) -> LaurentPoly:
    """PO = sum over facets of T^{-lambda_i} y^{v_i}."""
    return LaurentPoly.from_terms(
        P.dim,
        [(facet.normal, NovikovSeries.monomial(1, -facet.offset)) for facet in P.facets],
    )


def with_corrections(f: LaurentPoly, P: Polytope, cs: Sequence[CorrectionTerm]) -> LaurentPoly:
    """Add the correction monomials; terms with equal exponents merge and may cancel."""
    pairs = list(f.terms)
    for correction in cs:
        if len(correction.e) != P.m:
            raise LengthMismatch(f"Correction has {len(correction.e)} exponents for {P.m} facets")
        c = tuple(
            sum(e * facet.normal[j] for e, facet in zip(correction.e, P.facets))
            for j in range(P.dim)
        )
        energy = correction.rho - sum((e * facet.offset for e, facet in zip(correction.e, P.facets)), Fraction(0))
        pairs.append((c, NovikovSeries.monomial(correction.r, energy)))
    return LaurentPoly.from_terms(f.n, pairs)


def potential(P: Polytope, cs: Sequence[CorrectionTerm] = ()) -> LaurentPoly:
    return with_corrections(leading_potential(P), P, cs)


def log_derivative(f: LaurentPoly, j: int) -> LaurentPoly:
    return f.log_derivative(j)


def critical_system(P: Polytope, S: SubtorusSpec, cs: Sequence[CorrectionTerm] = ()) -> list[LaurentPoly]:
    """f_i = sum_j a_ij * y_j dPO/dy_j for each annihilator row alpha_i."""
    if S.n != P.dim:
        raise DimensionMismatch(f"Subtorus lives in T^{S.n} but the polytope has dimension {P.dim}")
    po = potential(P, cs)
    derivatives = [po.log_derivative(j) for j in range(P.dim)]
    system = []
    for i in range(S.A.rows):
        f = LaurentPoly.zero(P.dim)
        for j, a in enumerate(S.A.row(i)):
            if a:
                f = f + derivatives[j].scale(a)
        system.append(f)
    logger.debug("Critical system for K=%s: %s", S.K, [str(f) for f in system])
    return system


def eval_poly(f: LaurentPoly, y: Sequence[NovikovSeries], order: Any) -> NovikovSeries:
    return f.eval(y, order)


def _primitive(vec: Sequence[Fraction]) -> tuple:
    denominator = math.lcm(*(x.denominator for x in vec))
    ints = [int(x * denominator) for x in vec]
    g = math.gcd(*ints)
    ints = [x // g for x in ints] if g else ints
    first = next((x for x in ints if x), 0)
    return tuple(-x for x in ints) if first < 0 else tuple(ints)


def circuit_system(po: LaurentPoly, A: IntMatrix) -> list[LaurentPoly]:
    """
    Polynomials of minimal support in the Q-span of the critical system.

    The coefficient matrix of the system is N * diag(a_c) with the integer
    N[i][c] = <alpha_i, c>, so the span is read off from the row space of N.
    A vector of the row space has minimal support when its zero set is
    spanned by rank(N) - 1 columns.
    """
    support = po.support()
    N = [[Fraction(sum(a * x for a, x in zip(A.row(i), c))) for c in support] for i in range(A.rows)]
    basis, _ = rref(N)
    k = len(basis)
    if k == 0:
        return []
    vectors: list[tuple] = []
    for zeros in itertools.combinations(range(len(support)), k - 1):
        columns = [[basis[i][z] for i in range(k)] for z in zeros]
        lam = nullspace_vector(columns, k) if columns else [Fraction(1)] + [Fraction(0)] * (k - 1)
        if lam is None:
            continue
        vec = _primitive([sum(lam[i] * basis[i][c] for i in range(k)) for c in range(len(support))])
        if any(vec) and vec not in vectors:
            vectors.append(vec)
    circuits = [
        LaurentPoly.from_terms(po.n, [(c, a.scale(x)) for (c, a), x in zip(po.terms, vec) if x])
        for vec in vectors
    ]
    logger.debug("%d circuits from a system of rank %d", len(circuits), k)
    return circuits
