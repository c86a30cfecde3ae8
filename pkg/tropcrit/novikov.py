"""
Truncated arithmetic in the Novikov field.

A NovikovSeries is a finite sum of terms a*T^e with exact rational exponents
e and coefficients that are either exact rationals (Fraction) or complex
floats. Every series carries its truncation order: nothing is known about
exponents at or above it. Exact series (polynomial data, monomials) carry
an infinite truncation.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Union

from .conf import get_conf
from .errors import NegativeValuation, NovikovZeroDivision, ParseError

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, complex]
INF = math.inf


def to_fraction(value: Any) -> Fraction:
    """Parse an exact rational from an int, Fraction or "p/q" string."""
    if isinstance(value, bool):
        raise ParseError(f"Not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"Not a rational: {value!r}") from e
    raise ParseError(f"Not a rational: {value!r}")


def format_fraction(value: Fraction) -> str:
    """Serialize a rational as "p/q"."""
    return f"{value.numerator}/{value.denominator}"


def to_scalar(value: Any) -> Scalar:
    """Coerce to a Scalar: ints and Fractions stay exact, floats become complex."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, (float, complex)):
        return complex(value)
    # numpy scalars and friends
    try:
        return complex(value)
    except TypeError as e:
        raise TypeError(f"Not a scalar: {value!r}") from e


def scalar_exp(value: Scalar) -> Scalar:
    """e^value; exact only for 0."""
    if isinstance(value, Fraction) and value == 0:
        return Fraction(1)
    return cmath.exp(complex(value))


def cancels(total: Scalar, magnitude: float, tol: float | None = None) -> bool:
    """
    True if a sum of summands no larger than magnitude is zero: exactly for
    rationals, within tol relative to the summands for complex floats.
    """
    if isinstance(total, Fraction):
        return total == 0
    return abs(total) <= (get_conf().zero_tol if tol is None else tol) * magnitude


def _merge(pairs: Iterable[tuple[Fraction, Scalar]], trunc) -> tuple:
    acc: dict[Fraction, Scalar] = {}
    largest: dict[Fraction, float] = {}
    for exp, coeff in pairs:
        if exp >= trunc:
            continue
        if exp in acc:
            acc[exp] += coeff
            largest[exp] = max(largest[exp], abs(coeff))
        else:
            acc[exp] = coeff
            largest[exp] = abs(coeff)
    tol = get_conf().zero_tol
    return tuple((e, c) for e, c in sorted(acc.items()) if not cancels(c, largest[e], tol))


@dataclass(frozen=True)
class NovikovSeries:
    """
    Truncated element of the Novikov field.

    Attributes:
        terms: (exponent, coefficient) pairs, exponents strictly increasing
        trunc: truncation order (Fraction, or INF for exact series)
    """

    terms: tuple = ()
    trunc: Any = INF

    def __post_init__(self):
        previous = None
        for exp, coeff in self.terms:
            if previous is not None and exp <= previous:
                raise ValueError(f"Exponents not strictly increasing: {self.terms}")
            if coeff == 0:
                raise ValueError(f"Zero coefficient stored at T^{exp}")
            if exp >= self.trunc:
                raise ValueError(f"Term T^{exp} at or above truncation {self.trunc}")
            previous = exp

    # Construction

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Any, Any]], trunc: Any = INF) -> "NovikovSeries":
        """Build a series from unsorted (exponent, coefficient) pairs; merges and drops zeros."""
        trunc = trunc if trunc == INF else to_fraction(trunc)
        pairs = [(to_fraction(e), to_scalar(c)) for e, c in pairs]
        return cls(_merge(pairs, trunc), trunc)

    @classmethod
    def monomial(cls, coeff: Any = 1, exponent: Any = 0, trunc: Any = INF) -> "NovikovSeries":
        return cls.from_terms([(exponent, coeff)], trunc)

    @classmethod
    def constant(cls, coeff: Any, trunc: Any = INF) -> "NovikovSeries":
        return cls.from_terms([(0, coeff)], trunc)

    @classmethod
    def zero(cls, trunc: Any = INF) -> "NovikovSeries":
        return cls((), trunc)

    @classmethod
    def one(cls) -> "NovikovSeries":
        return cls(((Fraction(0), Fraction(1)),))

    # Inspection

    def val(self):
        """Least exponent with a nonzero coefficient; INF for the empty sum."""
        return self.terms[0][0] if self.terms else INF

    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return self.trunc == INF

    def is_exact_rational(self) -> bool:
        return all(isinstance(c, Fraction) for _, c in self.terms)

    def leading_term(self) -> tuple[Fraction, Scalar]:
        if not self.terms:
            raise NovikovZeroDivision("Zero series has no leading term")
        return self.terms[0]

    def leading_coefficient(self) -> Scalar:
        return self.leading_term()[1]

    def coefficient(self, exponent: Any) -> Scalar:
        exponent = to_fraction(exponent)
        for e, c in self.terms:
            if e == exponent:
                return c
        return Fraction(0)

    # Arithmetic

    @staticmethod
    def _coerce(other: Any) -> "NovikovSeries":
        if isinstance(other, NovikovSeries):
            return other
        return NovikovSeries.constant(other)

    def __add__(self, other: Any) -> "NovikovSeries":
        other = self._coerce(other)
        trunc = min(self.trunc, other.trunc)
        return NovikovSeries(_merge(self.terms + other.terms, trunc), trunc)

    __radd__ = __add__

    def __neg__(self) -> "NovikovSeries":
        return NovikovSeries(tuple((e, -c) for e, c in self.terms), self.trunc)

    def __sub__(self, other: Any) -> "NovikovSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "NovikovSeries":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "NovikovSeries":
        other = self._coerce(other)
        va, vb = self.val(), other.val()
        trunc = min(self.trunc + vb, other.trunc + va, self.trunc + other.trunc)
        pairs = [
            (ea + eb, ca * cb)
            for ea, ca in self.terms
            for eb, cb in other.terms
            if ea + eb < trunc
        ]
        return NovikovSeries(_merge(pairs, trunc), trunc)

    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, NovikovSeries):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms and self.trunc == other.trunc

    def __hash__(self) -> int:
        return hash((self.terms, self.trunc))

    def scale(self, scalar: Any) -> "NovikovSeries":
        """Multiply by a residue-field scalar."""
        scalar = to_scalar(scalar)
        return NovikovSeries(_merge(((e, c * scalar) for e, c in self.terms), self.trunc), self.trunc)

    def shift(self, q: Any) -> "NovikovSeries":
        """Multiply by T^q."""
        q = to_fraction(q)
        return NovikovSeries(tuple((e + q, c) for e, c in self.terms), self.trunc + q)

    def truncate(self, order: Any) -> "NovikovSeries":
        """Forget everything at exponents >= order."""
        if order == INF:
            return self
        order = to_fraction(order)
        trunc = min(self.trunc, order)
        return NovikovSeries(tuple((e, c) for e, c in self.terms if e < trunc), trunc)

    def conjugate(self) -> "NovikovSeries":
        return NovikovSeries(
            tuple((e, c if isinstance(c, Fraction) else c.conjugate()) for e, c in self.terms),
            self.trunc,
        )

    def invert(self, order: Any) -> "NovikovSeries":
        """
        Inverse b with self*b = 1 + O(T^order).

        The leading term is factored out, leaving a unit 1 + O(T^g). Its
        inverse is refined by Newton's iteration b <- b*(2 - unit*b), which
        doubles the known relative precision g, 2g, 4g, ... per step.
        """
        if not self.terms:
            raise NovikovZeroDivision("Cannot invert the zero series")
        order = to_fraction(order)
        v, c = self.terms[0]
        inv_c = 1 / c
        if len(self.terms) == 1 and self.is_exact():
            return NovikovSeries(((-v, inv_c),))
        rel = min(order, self.trunc - v)
        unit = NovikovSeries(_merge(((e - v, ci * inv_c) for e, ci in self.terms), rel), rel)
        inverse = NovikovSeries.one()
        reached = unit.terms[1][0] if len(unit.terms) > 1 else rel
        while reached < rel:
            reached = min(2 * reached, rel)
            product = (unit.truncate(reached) * inverse).truncate(reached)
            # exact copy so the next product is not capped at the old precision
            inverse = NovikovSeries((inverse * (2 - product)).truncate(reached).terms)
        return inverse.truncate(rel).scale(inv_c).shift(-v)

    def pow(self, k: int, order: Any = INF) -> "NovikovSeries":
        """k-th power for k >= 0 by repeated squaring, truncated at order."""
        if k < 0:
            raise ValueError("Use invert() for negative powers")
        result = NovikovSeries.one()
        base = self
        while k:
            if k & 1:
                result = (result * base).truncate(order)
            k >>= 1
            if k:
                base = (base * base).truncate(order)
        return result

    def exp(self, order: Any) -> "NovikovSeries":
        """
        exp of a series with nonnegative valuation.

        Split b = b0 + b_plus with b0 the T^0 coefficient; the result is
        e^b0 * sum b_plus^k / k! truncated at order.
        """
        if self.val() < 0:
            raise NegativeValuation(f"exp needs val >= 0, got {self.val()}")
        order = to_fraction(order)
        b0 = self.coefficient(0)
        plus = NovikovSeries(tuple((e, c) for e, c in self.terms if e > 0), self.trunc)
        factor = scalar_exp(b0)
        if plus.is_zero() and plus.is_exact():
            return NovikovSeries.constant(factor)
        rel = min(order, self.trunc)
        total = NovikovSeries.one().truncate(rel)
        power = total
        k = 0
        while True:
            k += 1
            power = (power * plus).truncate(rel).scale(Fraction(1, k))
            if power.is_zero():
                break
            total = total + power
        return total.scale(factor)

    # Serialization

    def to_json(self) -> dict:
        terms = []
        for e, c in self.terms:
            if isinstance(c, Fraction):
                terms.append({"exp": format_fraction(e), "re": format_fraction(c), "im": "0/1"})
            else:
                terms.append({"exp": format_fraction(e), "re": c.real, "im": c.imag})
        trunc = "inf" if self.trunc == INF else format_fraction(self.trunc)
        return {"terms": terms, "trunc": trunc}

    @classmethod
    def from_json(cls, data: dict) -> "NovikovSeries":
        try:
            trunc = data.get("trunc", "inf")
            trunc = INF if trunc == "inf" else to_fraction(trunc)
            pairs = []
            for term in data["terms"]:
                exponent = to_fraction(term["exp"])
                re = term["re"]
                im = term.get("im", "0/1" if isinstance(re, str) else 0)
                if isinstance(re, str):
                    if to_fraction(im) != 0:
                        raise ParseError("Exact coefficients must be real rationals")
                    coeff = to_fraction(re)
                else:
                    coeff = complex(float(re), float(im))
                pairs.append((exponent, coeff))
        except ParseError:
            raise
        except (KeyError, TypeError, AttributeError, ValueError) as e:
            raise ParseError(f"Malformed series: {data!r}") from e
        return cls.from_terms(pairs, trunc)

    def __str__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(format_term(c, e) for e, c in self.terms).replace("+ -", "- ")
        if self.trunc != INF:
            body += f" + O(T^{self.trunc})"
        return body


def format_scalar(value: Scalar) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if abs(value.imag) <= get_conf().zero_tol:
        return f"{value.real:.12g}"
    return f"({value.real:.12g}{value.imag:+.12g}j)"


def format_term(coeff: Scalar, exponent: Fraction) -> str:
    """Format coeff*T^exponent, dropping unit coefficients and T^0."""
    if exponent == 0:
        return format_scalar(coeff)
    power = f"T^{exponent}"
    if isinstance(coeff, Fraction) and coeff == 1:
        return power
    if isinstance(coeff, Fraction) and coeff == -1:
        return f"-{power}"
    return f"{format_scalar(coeff)}*{power}"


# Functional spellings used across the pipeline

def val(s: NovikovSeries):
    return s.val()


def add(a: NovikovSeries, b: NovikovSeries) -> NovikovSeries:
    return a + b


def mul(a: NovikovSeries, b: NovikovSeries) -> NovikovSeries:
    return a * b


def neg(a: NovikovSeries) -> NovikovSeries:
    return -a


def invert(a: NovikovSeries, order: Any) -> NovikovSeries:
    return a.invert(order)


def exp_novikov(b: NovikovSeries, order: Any) -> NovikovSeries:
    return b.exp(order)


T = NovikovSeries.monomial(1, 1)
