"""
Named example polytopes and the gallery of worked cases.

Presets are registered by name with the parameters they accept, the same
way models are registered for live views: a module-level registry plus
lookup helpers.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .errors import ParseError
from .polytope import Polytope

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Preset:
    """A named polytope family and the parameters it takes."""

    name: str
    build: Callable[..., Polytope]
    params: tuple = ()
    defaults: dict = field(default_factory=dict)
    description: str = ""

    def polytope(self, **params: Any) -> Polytope:
        values = dict(self.defaults)
        values.update({k: v for k, v in params.items() if k in self.params and v is not None})
        missing = [p for p in self.params if p not in values]
        if missing:
            raise ParseError(f"Preset {self.name} needs {', '.join('--' + p for p in missing)}")
        return self.build(**{p: Fraction(values[p]) for p in self.params})


_presets: dict[str, Preset] = {}


def register_preset(preset: Preset) -> Preset:
    _presets[preset.name] = preset
    logger.debug("Registered preset %s", preset.name)
    return preset


def get_preset(name: str) -> Preset:
    try:
        return _presets[name]
    except KeyError:
        raise ParseError(f"Unknown preset {name!r}; choose from {', '.join(sorted(_presets))}") from None


def list_presets() -> list[Preset]:
    return [_presets[name] for name in sorted(_presets)]


def cp2() -> Polytope:
    return Polytope.simplex(2)


def cp2_blowup1(alpha: Fraction) -> Polytope:
    """CP^2 blown up at one point: the simplex with the corner u2 > 1 - alpha cut off."""
    return Polytope.from_facets([((1, 0), 0), ((0, 1), 0), ((-1, -1), -1), ((0, -1), alpha - 1)])


def cp2_blowup2(alpha: Fraction) -> Polytope:
    """CP^2 blown up at two points, centred on the square [-1, 1]^2 with one corner cut."""
    return Polytope.from_facets(
        [((1, 0), -1), ((0, 1), -1), ((-1, -1), -(1 + alpha)), ((-1, 0), -1), ((0, -1), -1)]
    )


def s2xs2(c: Fraction, d: Fraction) -> Polytope:
    return Polytope.box(c, d)


def cp3() -> Polytope:
    return Polytope.simplex(3)


register_preset(Preset("cp2", cp2, description="CP^2, standard simplex"))
register_preset(
    Preset("cp2-blowup1", cp2_blowup1, ("alpha",), {"alpha": Fraction(1, 4)}, "CP^2 blown up at one point, 0 < alpha < 1")
)
register_preset(
    Preset("cp2-blowup2", cp2_blowup2, ("alpha",), {"alpha": Fraction(0)}, "CP^2 blown up at two points, -1 < alpha < 1")
)
register_preset(Preset("s2xs2", s2xs2, ("c", "d"), {"c": Fraction(1), "d": Fraction(2)}, "S^2 x S^2, box [0,c] x [0,d]"))
register_preset(Preset("cp3", cp3, description="CP^3, standard simplex"))


@dataclass(frozen=True)
class GalleryCase:
    """One figure of the gallery: a preset, its parameters and a subtorus."""

    name: str
    preset: str
    columns: tuple
    params: dict = field(default_factory=dict)
    label: str = ""

    def polytope(self) -> Polytope:
        return get_preset(self.preset).polytope(**self.params)


def _case(preset: str, label: str, k: tuple, **params: Any) -> GalleryCase:
    suffix = "".join(f"-{key}{str(Fraction(v)).replace('/', '_')}" for key, v in params.items())
    return GalleryCase(f"{preset}-{label}{suffix}", preset, (k,), {p: Fraction(v) for p, v in params.items()}, label)


GALLERY: tuple = (
    _case("cp2", "generic", (1, 2)),
    _case("cp2", "k1-zero", (0, 1)),
    _case("cp2", "k2-zero", (1, 0)),
    _case("cp2", "k2-eq-k1", (1, 1)),
    _case("cp2-blowup1", "generic", (1, 2), alpha=Fraction(1, 4)),
    _case("cp2-blowup1", "generic", (1, 2), alpha=Fraction(1, 3)),
    _case("cp2-blowup1", "generic", (1, 2), alpha=Fraction(1, 2)),
    _case("cp2-blowup1", "k1-zero", (0, 1), alpha=Fraction(1, 4)),
    _case("cp2-blowup1", "k2-zero", (1, 0), alpha=Fraction(1, 4)),
    _case("cp2-blowup1", "k2-eq-k1", (1, 1), alpha=Fraction(1, 4)),
    _case("cp2-blowup2", "generic", (1, 2), alpha=Fraction(-1, 2)),
    _case("cp2-blowup2", "generic", (1, 2), alpha=0),
    _case("cp2-blowup2", "generic", (1, 2), alpha=Fraction(1, 2)),
    _case("cp2-blowup2", "k1-zero", (0, 1), alpha=0),
    _case("cp2-blowup2", "k2-zero", (1, 0), alpha=0),
    _case("cp2-blowup2", "k2-eq-k1", (1, 1), alpha=0),
    _case("s2xs2", "generic", (1, 2), c=1, d=2),
    _case("s2xs2", "k1-zero", (0, 1), c=1, d=2),
    _case("s2xs2", "k2-zero", (1, 0), c=1, d=2),
)


def gallery_cases(only: str | None = None) -> list[GalleryCase]:
    """Gallery cases, optionally restricted to one preset."""
    if only is None:
        return list(GALLERY)
    cases = [case for case in GALLERY if case.preset == only]
    if not cases:
        raise ParseError(f"No gallery cases for {only!r}")
    return cases
