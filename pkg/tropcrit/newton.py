"""
Lifting residue-field solutions to Novikov-field solutions.

At a tropical point u the substitution y_j = T^{u_j} x_j followed by
division by T^{trop f_i(u)} turns every equation into one over the
valuation ring whose reduction is the initial form in_u(f_i). A simple root
of the initial-form system then lifts by Newton iteration, the residual
valuation doubling at every step.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .cells import PolyhedralComplex
from .conf import ProbeConf, TropcritConf, get_conf, run_parallel
from .errors import DimensionMismatch, NoRoot, SingularJacobian, ZeroPolynomial
from .novikov import INF, NovikovSeries, format_fraction, to_fraction, to_scalar
from .polytope import Polytope
from .potential import CorrectionTerm, LaurentPoly, SubtorusSpec
from .tropical import TropPoly, argmin_terms, crit_trop_result, is_on_variety, tropicalize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InitialForm:
    """
    Residue-field polynomial of the min-attaining terms of f at u.

    Attributes:
        n: number of variables
        terms: (exponent tuple, leading coefficient) pairs
    """

    n: int
    terms: tuple = ()

    def is_monomial(self) -> bool:
        return len(self.terms) <= 1

    def __call__(self, x: Sequence[complex]) -> complex:
        return sum(complex(a) * np.prod([x[j] ** k for j, k in enumerate(c)]) for c, a in self.terms)

    def gradient(self, x: Sequence[complex]) -> np.ndarray:
        grad = np.zeros(self.n, dtype=complex)
        for c, a in self.terms:
            for j, k in enumerate(c):
                if k:
                    shifted = [e - (i == j) for i, e in enumerate(c)]
                    grad[j] += complex(a) * k * np.prod([x[i] ** e for i, e in enumerate(shifted)])
        return grad

    def scale_of(self, x: Sequence[complex]) -> float:
        """Size of the largest term at x, for relative residual tests."""
        return max(
            (abs(complex(a) * np.prod([x[j] ** k for j, k in enumerate(c)])) for c, a in self.terms),
            default=0.0,
        )

    def __str__(self) -> str:
        return str(LaurentPoly.from_terms(self.n, self.terms))


def initial_form(f: LaurentPoly, u: Sequence[Any]) -> InitialForm:
    if f.is_zero():
        raise ZeroPolynomial("The zero polynomial has no initial form")
    tp = tropicalize(f)
    chosen = argmin_terms(tp, u)
    return InitialForm(f.n, tuple((c, a.leading_coefficient()) for i, (c, a) in enumerate(f.terms) if i in chosen))


# Residue field

def _residuals(forms: Sequence[InitialForm], x: np.ndarray) -> np.ndarray:
    return np.array([form(x) for form in forms], dtype=complex)


def _jacobian(forms: Sequence[InitialForm], x: np.ndarray, columns: Sequence[int]) -> np.ndarray:
    return np.array([[form.gradient(x)[j] for j in columns] for form in forms], dtype=complex)


def _is_root(forms: Sequence[InitialForm], x: np.ndarray, tol: float) -> bool:
    if np.any(np.abs(x) < 1e-8):
        return False
    return all(abs(form(x)) <= tol * max(1.0, form.scale_of(x)) for form in forms)


def _dedupe(points: list[np.ndarray]) -> list[np.ndarray]:
    unique: list[np.ndarray] = []
    for p in points:
        if not any(np.allclose(p, q, atol=1e-8) for q in unique):
            unique.append(p)
    unique.sort(key=lambda p: tuple((round(z.real, 8), round(z.imag, 8)) for z in p))
    return unique


def _polish(forms, x: np.ndarray, unknowns: Sequence[int], steps: int = 100) -> np.ndarray | None:
    """Damped Newton on the square residue-field system in the unknown coordinates."""
    x = x.astype(complex)
    norm = np.linalg.norm(_residuals(forms, x))
    for _ in range(steps):
        if norm < 1e-14:
            break
        J = _jacobian(forms, x, unknowns)
        try:
            step = np.linalg.lstsq(J, _residuals(forms, x), rcond=None)[0]
        except np.linalg.LinAlgError:
            return None
        damping = 1.0
        while damping > 1e-6:
            trial = x.copy()
            trial[list(unknowns)] -= damping * step
            if np.all(np.isfinite(trial)) and np.all(trial != 0):
                trial_norm = np.linalg.norm(_residuals(forms, trial))
                if trial_norm < norm:
                    x, norm = trial, trial_norm
                    break
            damping /= 2
        else:
            break
    return x


def residue_roots(
    forms: Sequence[InitialForm],
    unknowns: Sequence[int],
    fixed: dict[int, complex],
    conf: TropcritConf | None = None,
    rng: random.Random | None = None,
    restarts: int = 24,
) -> list[np.ndarray]:
    """
    Nonzero common roots of the initial forms, the fixed coordinates held.

    One unknown: companion-matrix roots of the first form that is not
    constant in it. Several unknowns: damped Newton from random starts.
    Returns full coordinate vectors, sorted and deduplicated.
    """
    conf = conf or get_conf()
    rng = rng or random.Random(0)
    n = forms[0].n if forms else len(unknowns) + len(fixed)
    base = np.zeros(n, dtype=complex)
    for j, value in fixed.items():
        base[j] = complex(value)

    candidates: list[np.ndarray] = []
    if len(unknowns) == 1:
        (j,) = unknowns
        for form in forms:
            coefficients: dict[int, complex] = {}
            for c, a in form.terms:
                weight = complex(a) * np.prod([base[i] ** k for i, k in enumerate(c) if i != j])
                coefficients[c[j]] = coefficients.get(c[j], 0) + weight
            coefficients = {k: v for k, v in coefficients.items() if abs(v) > conf.zero_tol}
            if len(coefficients) < 2:
                continue
            low, high = min(coefficients), max(coefficients)
            poly = [coefficients.get(k, 0) for k in range(high, low - 1, -1)]
            for root in np.roots(poly):
                x = base.copy()
                x[j] = root
                candidates.append(x)
            break
    else:
        np_rng = np.random.default_rng(rng.randrange(2**32))
        for _ in range(restarts):
            x = base.copy()
            radius = np_rng.uniform(0.5, 2.0, len(unknowns))
            phase = np_rng.uniform(0, 2 * np.pi, len(unknowns))
            x[list(unknowns)] = radius * np.exp(1j * phase)
            polished = _polish(forms, x, unknowns)
            if polished is not None:
                candidates.append(polished)

    roots = []
    for x in candidates:
        polished = _polish(forms, x, unknowns, steps=8)
        if polished is not None and _is_root(forms, polished, conf.seed_tol):
            roots.append(polished)
    return _dedupe(roots)


def choose_free_coordinates(forms: Sequence[InitialForm], seed: Sequence[complex], r: int) -> list[int]:
    """
    The r coordinates to hold fixed: the complement of the columns with the
    largest Jacobian minor at the seed. Ties go to the lexicographically
    first choice.
    """
    _, free = choose_square_subsystem(forms, seed, r, len(seed) - r)
    return free


def choose_square_subsystem(
    forms: Sequence[InitialForm],
    seed: Sequence[complex],
    r: int,
    size: int,
) -> tuple[list[int], list[int]]:
    """
    Pick `size` of the forms and the r free coordinates maximizing the
    Jacobian minor of the chosen forms in the remaining coordinates.

    Returns (form indices, free coordinates).
    """
    n = len(seed)
    if r >= n or not forms:
        return [], list(range(n))
    x = np.asarray(seed, dtype=complex)
    best, best_value = None, -1.0
    for rows in itertools.combinations(range(len(forms)), size):
        chosen = [forms[i] for i in rows]
        for bound in itertools.combinations(range(n), n - r):
            value = abs(np.linalg.det(_jacobian(chosen, x, bound)))
            if value > best_value * (1 + 1e-9):
                best, best_value = (list(rows), bound), value
    rows, bound = best
    return rows, [j for j in range(n) if j not in bound]


# Dense series on the exponent lattice

def lattice_denominator(polys: Sequence[LaurentPoly], u: Sequence[Any], values: Sequence[NovikovSeries] = ()) -> int:
    """Least D with u, every coefficient exponent and every given series on (1/D)Z."""
    denominators = [to_fraction(x).denominator for x in u]
    series = [a for f in polys for _, a in f.terms] + list(values)
    for s in series:
        denominators.extend(e.denominator for e, _ in s.terms)
        if not s.is_exact():
            denominators.append(s.trunc.denominator)
    return math.lcm(1, *denominators)


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)[: len(a)]


def _inverse(a: np.ndarray) -> np.ndarray:
    """Inverse of a dense unit series by Newton doubling."""
    b = np.array([1 / a[0]], dtype=complex)
    size = 1
    while size < len(a):
        size = min(2 * size, len(a))
        correction = -np.convolve(a[:size], b)[:size]
        correction[0] += 2
        b = np.convolve(b, correction)[:size]
    return b


def _subtract(x: np.ndarray, delta: np.ndarray, tol: float) -> np.ndarray:
    result = x - delta
    result[np.abs(result) <= tol * np.maximum(np.abs(x), np.abs(delta))] = 0
    return result


def _leading_index(value: np.ndarray, scale: np.ndarray, tol: float) -> int | None:
    """First entry that does not cancel against the size of its summands."""
    hits = np.flatnonzero(np.abs(value) > tol * scale)
    return int(hits[0]) if hits.size else None


class _Powers:
    """Cached powers x_j^k of dense series with x_j[0] != 0."""

    def __init__(self, x: Sequence[np.ndarray]):
        self.x = x
        self.one = np.zeros(len(x[0]), dtype=complex)
        self.one[0] = 1
        self.cache: dict[tuple[int, int], np.ndarray] = {}

    def __call__(self, j: int, k: int) -> np.ndarray:
        if k == 0:
            return self.one
        if (j, k) not in self.cache:
            if k == 1:
                value = self.x[j]
            elif k == -1:
                value = _inverse(self.x[j])
            else:
                step = 1 if k > 0 else -1
                value = _mul(self(j, k - step), self(j, step))
            self.cache[j, k] = value
        return self.cache[j, k]

    def monomial(self, c: Sequence[int]) -> np.ndarray:
        result = self.one
        for j, k in enumerate(c):
            if k:
                result = self(j, k) if result is self.one else _mul(result, self(j, k))
        return result


class _LatticeSystem:
    """
    The rescaled equations g_i(x) = T^(-t_i) f_i(T^u x), t_i = trop f_i(u),
    as dense coefficient arrays: entry k is the coefficient of T^(k/D), for
    k below size.
    """

    def __init__(self, polys: Sequence[LaurentPoly], u: Sequence[Fraction], D: int, size: int):
        self.D = D
        self.size = size
        self.shifts = [tropicalize(f)(u) for f in polys]
        self.known = size
        self.rows: list[list[tuple[tuple, np.ndarray]]] = []
        for f, t in zip(polys, self.shifts):
            row = []
            for c, a in f.terms:
                offset = sum(x * k for x, k in zip(u, c)) - t
                coeff = np.zeros(size, dtype=complex)
                for e, value in a.terms:
                    k = (e + offset) * D
                    if k < size:
                        coeff[int(k)] += complex(value)
                if not a.is_exact():
                    self.known = min(self.known, int((a.trunc + offset) * D))
                row.append((c, coeff))
            self.rows.append(row)

    def needs(self, order: Fraction) -> list[int]:
        """Lattice index each residual must reach for valuation >= order."""
        return [max(0, math.ceil((order - t) * self.D)) for t in self.shifts]

    def evaluate(self, powers: _Powers) -> tuple[list[np.ndarray], list[np.ndarray]]:
        """Values of g_i and the sizes of their summands, entrywise."""
        values, scales = [], []
        for row in self.rows:
            value = np.zeros(self.size, dtype=complex)
            scale = np.zeros(self.size)
            for c, coeff in row:
                term = powers.monomial(c)
                value += _mul(coeff, term)
                scale += _mul(np.abs(coeff), np.abs(term))
            values.append(value)
            scales.append(scale)
        return values, scales

    def jacobian(self, powers: _Powers, columns: Sequence[int]) -> np.ndarray:
        """dg_i/dx_j as an array of shape (equations, columns, size)."""
        J = np.zeros((len(self.rows), len(columns), self.size), dtype=complex)
        for i, row in enumerate(self.rows):
            for col, j in enumerate(columns):
                for c, coeff in row:
                    if c[j]:
                        lowered = tuple(k - (l == j) for l, k in enumerate(c))
                        J[i, col] += c[j] * _mul(coeff, powers.monomial(lowered))
        return J

    def dense(self, solution: Sequence[NovikovSeries], u: Sequence[Fraction]) -> list[np.ndarray]:
        """x_j = T^(-u_j) y_j as dense arrays."""
        x = []
        for y, shift in zip(solution, u):
            arr = np.zeros(self.size, dtype=complex)
            for e, c in y.terms:
                k = (e - shift) * self.D
                if k < self.size:
                    arr[int(k)] = complex(c)
            x.append(arr)
        return x


def _solve_series(J: np.ndarray, rhs: np.ndarray, tol: float) -> np.ndarray:
    """
    Solve J(T) delta = rhs over the lattice series, degree by degree:
    delta_k = J_0^-1 (rhs_k - sum_{l>=1} J_l delta_{k-l}).
    """
    m, _, size = J.shape
    J0_inv = np.linalg.inv(J[:, :, 0])
    delta = np.zeros((m, size), dtype=complex)
    for k in range(size):
        acc = rhs[:, k].copy()
        bound = np.abs(acc)
        if k:
            terms = np.einsum("ijl,jl->il", J[:, :, 1 : k + 1], delta[:, k - 1 :: -1])
            acc -= terms.sum(axis=1)
            bound = bound + np.abs(terms).sum(axis=1)
        acc[np.abs(acc) <= tol * bound] = 0
        delta[:, k] = J0_inv @ acc
    return delta


# Jacobians are compared at T = _RANK_POINT, where a term of order T^q has size _RANK_POINT^q
_RANK_POINT = 0.05


def _evaluated_rank(J: np.ndarray, D: int) -> int:
    """
    Numerical rank of a dense series matrix at T = _RANK_POINT. Singular
    values below _RANK_POINT^(p/2) relative to the largest, p the known
    precision, are taken as truncation noise.
    """
    size = J.shape[2]
    M = J @ (_RANK_POINT ** (np.arange(size) / D))
    sv = np.linalg.svd(M, compute_uv=False)
    if not sv.size or sv[0] == 0:
        return 0
    return int(np.sum(sv > sv[0] * _RANK_POINT ** (size / D / 2)))


def local_dimension(
    system: Sequence[LaurentPoly],
    solution: Sequence[NovikovSeries],
    order: Any = None,
    conf: TropcritConf | None = None,
) -> int:
    """
    Dimension of the solution set of system near a lifted point: the number
    of coordinates minus the numerical rank of the Jacobian at the point.
    """
    conf = conf or get_conf()
    order = to_fraction(order) if order is not None else conf.order
    u = tuple(y.val() for y in solution)
    if any(v == INF for v in u):
        raise ValueError("Solution has a zero coordinate")
    n = len(solution)
    if not system:
        return n
    precision = min([order] + [y.trunc - y.val() for y in solution if not y.is_exact()])
    D = lattice_denominator(system, u, solution)
    lattice = _LatticeSystem(system, u, D, max(1, math.ceil(precision * D)))
    J = lattice.jacobian(_Powers(lattice.dense(solution, u)), range(n))
    return n - _evaluated_rank(J, D)


# Novikov Newton

@dataclass
class LiftReport:
    """Outcome of one Newton lift."""

    u: tuple
    order: Fraction
    solution: list = field(default_factory=list)
    residual_vals: list = field(default_factory=list)
    free_coords: list = field(default_factory=list)
    steps: int = 0
    residual_history: list = field(default_factory=list)
    local_dim: int | None = None
    error: str | None = None

    @property
    def success(self) -> bool:
        return self.error is None and bool(self.solution) and all(v >= self.order for v in self.residual_vals)

    def valuations(self) -> tuple:
        return tuple(y.val() for y in self.solution)

    def to_json(self) -> dict:
        def val_json(v):
            return "inf" if v == INF else format_fraction(v)

        return {
            "u": [format_fraction(x) for x in self.u],
            "order": format_fraction(self.order),
            "success": self.success,
            "solution": [y.to_json() for y in self.solution],
            "residual_vals": [val_json(v) for v in self.residual_vals],
            "free_coords": [{"index": j, "value": y.to_json()} for j, y in self.free_coords],
            "steps": self.steps,
            "residual_history": [val_json(v) for v in self.residual_history],
            "local_dim": self.local_dim,
            "error": self.error,
        }


def newton_lift(
    system: Sequence[LaurentPoly],
    u: Sequence[Any],
    free: dict[int, NovikovSeries],
    seed: Sequence[Any],
    order: Any = None,
    conf: TropcritConf | None = None,
    check: Sequence[LaurentPoly] | None = None,
) -> LiftReport:
    """
    Lift a residue-field root at u to a solution with val(y) = u.

    seed gives the leading coefficients x_j of every coordinate, or of the
    non-free coordinates only. Residual valuations are reported for check
    (default: the system itself). Raises NoRoot when the seed does not solve
    the initial forms and SingularJacobian when the root is not simple.

    All series live on the lattice T^(k/D), D the common denominator of u,
    the coefficient exponents and the free values, so every Newton step is
    dense array arithmetic. residual_history holds the valuations of the
    rescaled residuals, which at least double per step.
    """
    conf = conf or get_conf()
    order = to_fraction(order) if order is not None else conf.order
    n = system[0].n if system else len(u)
    u = tuple(to_fraction(x) for x in u)
    if len(u) != n:
        raise DimensionMismatch(f"Expected a point of length {n}, got {len(u)}")
    bound = [j for j in range(n) if j not in free]
    if len(bound) != len(system):
        raise DimensionMismatch(f"{len(system)} equations for {len(bound)} unknown coordinates")
    for j, value in free.items():
        if value.val() != u[j]:
            raise ValueError(f"Free coordinate y{j + 1} has valuation {value.val()}, expected {u[j]}")
    seed = [to_scalar(s) for s in seed]
    if len(seed) == n:
        seed = [seed[j] for j in bound]
    if len(seed) != len(bound):
        raise DimensionMismatch(f"Seed of length {len(seed)} for {len(bound)} unknowns")

    report = LiftReport(u, order, free_coords=sorted(free.items()))
    forms = [initial_form(f, u) for f in system]
    point = np.zeros(n, dtype=complex)
    for j, value in free.items():
        point[j] = complex(value.leading_coefficient())
    point[bound] = [complex(s) for s in seed]
    if not _is_root(forms, point, conf.seed_tol):
        raise NoRoot(f"Seed {point} does not solve the initial forms at {u}")
    if bound and abs(np.linalg.det(_jacobian(forms, point, bound))) <= conf.seed_tol:
        raise SingularJacobian(f"Initial-form Jacobian is singular at {point}")

    check = list(check) if check is not None else list(system)
    D = lattice_denominator([*system, *check], u, list(free.values()))
    size = max(
        [1]
        + [math.ceil((order - tropicalize(f)(u)) * D) for f in [*system, *check]]
    )
    lifted = _LatticeSystem(system, u, D, size)
    needs = lifted.needs(order)
    if lifted.known < max(needs, default=0):
        report.error = f"coefficients known only below T^{Fraction(lifted.known, D)} after rescaling"
        return report

    start = [NovikovSeries.monomial(1, u[j]) for j in range(n)]
    x = lifted.dense([free.get(j, start[j]) for j in range(n)], u)
    for j, s in zip(bound, seed):
        x[j][0] = complex(s)

    tol = conf.zero_tol
    for step in range(conf.max_newton_steps + 1):
        powers = _Powers(x)
        values, scales = lifted.evaluate(powers)
        leads = [_leading_index(v, s, tol) for v, s in zip(values, scales)]
        report.residual_history.append(min((INF if k is None else Fraction(k, D) for k in leads), default=INF))
        if all(k is None or k >= need for k, need in zip(leads, needs)):
            break
        if step == conf.max_newton_steps:
            report.error = f"no convergence after {step} Newton steps"
            break
        rhs = np.array([np.where(np.abs(v) > tol * s, v, 0) for v, s in zip(values, scales)])
        delta = _solve_series(lifted.jacobian(powers, bound), rhs, tol)
        for row, j in enumerate(bound):
            x[j] = _subtract(x[j], delta[row], tol)
        report.steps = step + 1

    if report.steps == 0 and not any(np.any(x[j][1:]) for j in bound) and all(v.is_exact() for v in free.values()):
        # the seed monomials already solve the system up to the lattice precision
        leading = dict(zip(bound, seed))
        report.solution = [
            free[j] if j in free else NovikovSeries.monomial(leading[j], u[j]) for j in range(n)
        ]
        report.residual_vals = [f.eval(report.solution, order).val() for f in check]
    else:
        trunc = Fraction(size, D)
        report.solution = [
            free[j] if j in free else NovikovSeries.from_terms(
                ((u[j] + Fraction(int(k), D), x[j][k]) for k in np.flatnonzero(x[j])), u[j] + trunc
            )
            for j in range(n)
        ]
        checked = _LatticeSystem(check, u, D, size)
        values, scales = checked.evaluate(_Powers(x))
        report.residual_vals = [
            INF if k is None else t + Fraction(k, D)
            for t, k in zip(checked.shifts, (_leading_index(v, s, tol) for v, s in zip(values, scales)))
        ]
    if report.success:
        report.local_dim = local_dimension(check, report.solution, order, conf)
    logger.debug("Lift at %s: %d steps, residual valuations %s", u, report.steps, report.residual_vals)
    return report


# Univariate roots

def newton_polygon_slopes(f: LaurentPoly) -> list[tuple[Fraction, int]]:
    """
    (root valuation, number of roots) per edge of the lower Newton polygon
    of a univariate polynomial, in increasing order of valuation.
    """
    if f.n != 1:
        raise DimensionMismatch("Newton polygons are computed for one variable")
    points = sorted((c[0], Fraction(a.val())) for c, a in f.terms)
    hull: list[tuple[int, Fraction]] = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    edges = [
        ((y1 - y2) / (x2 - x1), x2 - x1)
        for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    ]
    return sorted(edges)


def puiseux_roots(f: LaurentPoly, order: Any = None, conf: TropcritConf | None = None) -> list[LiftReport]:
    """All simple nonzero roots of a univariate Laurent polynomial, lifted to the given order."""
    conf = conf or get_conf()
    order = to_fraction(order) if order is not None else conf.order
    reports = []
    for valuation, count in newton_polygon_slopes(f):
        u = (valuation,)
        forms = [initial_form(f, u)]
        seeds = residue_roots(forms, [0], {}, conf)
        if len(seeds) < count:
            logger.debug("Slope %s: %d distinct seeds for %d roots", valuation, len(seeds), count)
        for seed in seeds:
            try:
                reports.append(newton_lift([f], u, {}, seed, order, conf))
            except (SingularJacobian, NoRoot) as e:
                reports.append(LiftReport(u, order, error=str(e)))
    return reports


# Dimension probes

@dataclass
class ProbeReport:
    """Counts and lift reports of one dimension probe."""

    r: int
    samples: int
    successes: int = 0
    failures: int = 0
    singular: int = 0
    off_complex: int = 0
    local_dims: list = field(default_factory=list)
    reports: list = field(default_factory=list)

    @property
    def probed_dim(self) -> int | None:
        """Measured local dimension when every sample lifted and all agree."""
        if not self.samples or self.successes != self.samples or len(set(self.local_dims)) != 1:
            return None
        return self.local_dims[0]

    @property
    def unexplained(self) -> int:
        """Failed lifts not accounted for by a singular Jacobian."""
        return self.failures - self.singular

    @property
    def ok(self) -> bool:
        return self.unexplained == 0 and self.off_complex == 0

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "samples": self.samples,
            "successes": self.successes,
            "failures": self.failures,
            "singular": self.singular,
            "off_complex": self.off_complex,
            "local_dims": self.local_dims,
            "probed_dim": self.probed_dim,
            "reports": [report.to_json() for report in self.reports],
        }


def _random_unit(rng: random.Random) -> Fraction:
    value = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    return value if rng.random() < 0.5 else -value


def _lift_sample(
    system: Sequence[LaurentPoly],
    equations: Sequence[LaurentPoly],
    u: tuple,
    rng: random.Random,
    order: Fraction,
    probe: ProbeConf,
    conf: TropcritConf,
) -> tuple[LiftReport, bool]:
    n = len(u)
    size = len(system)
    r = n - size
    forms = [initial_form(f, u) for f in equations]

    seed = None
    fixed: dict[int, Any] = {}
    for candidate in itertools.combinations(range(n), r):
        fixed = {j: _random_unit(rng) for j in candidate}
        unknowns = [j for j in range(n) if j not in fixed]
        roots = residue_roots(forms, unknowns, fixed, conf, rng, probe.restarts)
        if roots:
            seed = roots[rng.randrange(len(roots))]
            break
    if seed is None:
        return LiftReport(u, order, error=f"no residue-field root at {u}"), False

    rows, chosen = choose_square_subsystem(forms, seed, r, size)
    values = {j: (fixed[j] if set(chosen) == set(fixed) else complex(seed[j])) for j in chosen}
    free = {j: NovikovSeries.monomial(values[j], u[j]) for j in chosen}
    try:
        report = newton_lift([equations[i] for i in rows], u, free, seed, order, conf, check=system)
    except SingularJacobian as e:
        return LiftReport(u, order, error=f"singular: {e}"), True
    except NoRoot as e:
        return LiftReport(u, order, error=str(e)), False
    return report, False


def _sample(
    system: Sequence[LaurentPoly],
    equations: Sequence[LaurentPoly],
    complex_: PolyhedralComplex,
    rng: random.Random,
    order: Fraction,
    probe: ProbeConf,
    conf: TropcritConf,
) -> tuple[LiftReport, bool]:
    top = [c for c in complex_.cells if c.dim == complex_.max_dim()]
    u = rng.choice(top).sample(rng, probe.sample_parts)
    try:
        return _lift_sample(system, equations, u, rng, order, probe, conf)
    except (ArithmeticError, ValueError, np.linalg.LinAlgError) as e:
        logger.warning("Lift at %s failed: %s", [format_fraction(x) for x in u], e)
        return LiftReport(u, order, error=f"{type(e).__name__}: {e}"), False


def dimension_probe(
    P: Polytope,
    S: SubtorusSpec,
    cs: Sequence[CorrectionTerm] = (),
    samples: int | None = None,
    order: Any = None,
    probe: ProbeConf | None = None,
) -> ProbeReport:
    """
    Lift random points of the tropical critical locus to actual critical
    points and measure the local dimension of the critical locus there.

    When the system has several equations, each lift solves a square
    subsystem of its minimal-support combinations, chosen for the largest
    Jacobian minor at the seed; residuals and the local dimension are
    measured on the system itself.
    """
    probe = probe or ProbeConf()
    conf = get_conf()
    samples = probe.samples if samples is None else samples
    order = to_fraction(order) if order is not None else probe.get_order()
    result = ProbeReport(S.r, max(samples, 0))
    if samples <= 0:
        return result
    crit = crit_trop_result(P, S, cs)
    complex_ = crit.complex
    if complex_.is_empty():
        logger.warning("Tropical critical locus of K=%s is empty, nothing to sample", S.K)
        return ProbeReport(S.r, 0)
    system = list(crit.system)
    equations = list(crit.lifting_equations())

    def run(k: int):
        rng = random.Random(probe.seed * 1_000_003 + k)
        return _sample(system, equations, complex_, rng, order, probe, conf)

    for report, singular in run_parallel(run, range(samples)):
        result.reports.append(report)
        if report.success:
            result.successes += 1
            result.local_dims.append(report.local_dim)
            if not complex_.contains(report.valuations()):
                result.off_complex += 1
        else:
            result.failures += 1
            result.singular += int(singular)
    logger.info(
        "Probe K=%s: %d/%d lifts, %d singular, probed_dim=%s",
        S.K, result.successes, samples, result.singular, result.probed_dim,
    )
    return result


def kapranov_check(tps: Sequence[TropPoly], reports: Sequence[LiftReport]) -> bool:
    """Every successful lift has its valuation vector on every tropical hypersurface."""
    return all(
        all(is_on_variety(tp, report.valuations()) for tp in tps)
        for report in reports
        if report.success
    )
