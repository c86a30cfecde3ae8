"""Problem files: a polytope, a subtorus, corrections and run options."""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .errors import DimensionMismatch, ParseError
from .novikov import format_fraction, to_fraction
from .polytope import Polytope
from .potential import CorrectionTerm, SubtorusSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProblemSpec:
    """
    Everything one pipeline run needs.

    JSON layout:
        {"polytope": {...}, "K": [[k1, k2], ...] (columns, [] for r = 0),
         "corrections": [{"r": "1/1", "e": [...], "rho": "1/1"}],
         "order": "5/1", "samples": 5, "seed": 0}
    """

    polytope: Polytope
    subtorus: SubtorusSpec
    corrections: tuple = ()
    order: Fraction = Fraction(5)
    samples: int = 5
    seed: int = 0
    name: str = ""
    options: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.subtorus.n != self.polytope.dim:
            raise DimensionMismatch(
                f"Subtorus lives in T^{self.subtorus.n} but the polytope has dimension {self.polytope.dim}"
            )
        if self.order <= 0:
            raise ParseError(f"Truncation order must be positive, got {self.order}")
        for correction in self.corrections:
            if len(correction.e) != self.polytope.m:
                raise ParseError(f"Correction has {len(correction.e)} exponents for {self.polytope.m} facets")

    @classmethod
    def build(
        cls,
        polytope: Polytope,
        columns: Sequence[Sequence[int]],
        corrections: Sequence[CorrectionTerm] = (),
        **options: Any,
    ) -> "ProblemSpec":
        return cls(polytope, SubtorusSpec.from_columns(polytope.dim, columns), tuple(corrections), **options)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "polytope": self.polytope.to_json(),
            "K": self.subtorus.columns(),
            "corrections": [c.to_json() for c in self.corrections],
            "order": format_fraction(self.order),
            "samples": self.samples,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ProblemSpec":
        if not isinstance(data, dict):
            raise ParseError("A problem file must hold a JSON object")
        try:
            polytope = Polytope.from_json(data["polytope"])
            columns = data.get("K") or []
            corrections = tuple(CorrectionTerm.from_json(c) for c in data.get("corrections", []))
            return cls(
                polytope,
                SubtorusSpec.from_columns(polytope.dim, columns),
                corrections,
                order=to_fraction(data.get("order", "5")),
                samples=int(data.get("samples", 5)),
                seed=int(data.get("seed", 0)),
                name=str(data.get("name", "")),
            )
        except (KeyError, TypeError) as e:
            raise ParseError(f"Malformed problem file: {e}") from e
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(str(e)) from e

    @classmethod
    def load(cls, path: str | Path) -> "ProblemSpec":
        """Read a problem file. OSError propagates; bad content raises ParseError."""
        text = Path(path).read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}: {e}") from e
        return cls.from_json(data)
