"""
tropcrit - tropical critical loci of potential functions of toric manifolds.

Computes, for a Delzant moment polytope and a subtorus G = K T^r, the
tropicalization of the equivariant critical locus of the potential PO, and
verifies it by lifting sample points to Novikov-field critical points.

Usage:
    1. Build a polytope and a subtorus:

        from tropcrit import Polytope, SubtorusSpec

        P = Polytope.simplex(2)
        S = SubtorusSpec.from_columns(2, [(1, 2)])

    2. Compute the tropical locus and probe its dimension:

        from tropcrit import crit_trop, dimension_probe

        complex_ = crit_trop(P, S)
        report = dimension_probe(P, S, samples=5)

    3. Or use the command line:

        tropcrit tropical cp2 --k 1,2 --svg cp2.svg
"""

from .cells import Cell, Node, PolyhedralComplex
from .conf import ProbeConf, TropcritConf, configure, get_conf, run_parallel
from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidPolytope,
    LengthMismatch,
    NegativeValuation,
    NoRoot,
    NovikovZeroDivision,
    ParseError,
    RankDeficient,
    SingularJacobian,
    TropcritError,
    UnsupportedDimension,
    ZeroCoordinate,
    ZeroPolynomial,
)
from .lattice import IntMatrix, annihilator_basis, det, hnf, is_saturated, smith_invariants
from .newton import (
    InitialForm,
    LiftReport,
    ProbeReport,
    choose_free_coordinates,
    dimension_probe,
    initial_form,
    local_dimension,
    newton_lift,
    puiseux_roots,
    residue_roots,
)
from .novikov import INF, T, NovikovSeries, exp_novikov, invert, val
from .polytope import Polytope, contains, delzant_check, facet_value, vertices
from .potential import (
    CorrectionTerm,
    LaurentPoly,
    SubtorusSpec,
    circuit_system,
    critical_system,
    format_poly,
    leading_potential,
    log_derivative,
    potential,
    with_corrections,
)
from .problem import ProblemSpec
from .tropical import (
    CritResult,
    TropPoly,
    argmin_terms,
    crit_trop,
    crit_trop_result,
    grid_completeness,
    hypersurface_cells,
    intersect_complexes,
    is_on_variety,
    tropicalize,
)

__all__ = [
    "Cell",
    "CorrectionTerm",
    "CritResult",
    "DimensionMismatch",
    "INF",
    "IndexOutOfRange",
    "InitialForm",
    "IntMatrix",
    "InvalidPolytope",
    "LaurentPoly",
    "LengthMismatch",
    "LiftReport",
    "NegativeValuation",
    "NoRoot",
    "Node",
    "NovikovSeries",
    "NovikovZeroDivision",
    "ParseError",
    "PolyhedralComplex",
    "Polytope",
    "ProbeConf",
    "ProbeReport",
    "ProblemSpec",
    "RankDeficient",
    "SingularJacobian",
    "SubtorusSpec",
    "T",
    "TropPoly",
    "TropcritConf",
    "TropcritError",
    "UnsupportedDimension",
    "ZeroCoordinate",
    "ZeroPolynomial",
    "annihilator_basis",
    "argmin_terms",
    "choose_free_coordinates",
    "circuit_system",
    "configure",
    "contains",
    "crit_trop",
    "crit_trop_result",
    "critical_system",
    "delzant_check",
    "det",
    "dimension_probe",
    "exp_novikov",
    "facet_value",
    "format_poly",
    "get_conf",
    "grid_completeness",
    "hnf",
    "hypersurface_cells",
    "initial_form",
    "intersect_complexes",
    "invert",
    "is_on_variety",
    "is_saturated",
    "leading_potential",
    "log_derivative",
    "local_dimension",
    "newton_lift",
    "potential",
    "puiseux_roots",
    "residue_roots",
    "run_parallel",
    "smith_invariants",
    "tropicalize",
    "val",
    "vertices",
    "with_corrections",
]
