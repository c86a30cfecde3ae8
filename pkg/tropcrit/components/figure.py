"""SVG figure of a planar complex inside its moment polytope."""

import math
from fractions import Fraction
from typing import Sequence

from markupsafe import Markup, escape

from ..cells import PolyhedralComplex
from ..conf import TropcritConf, get_conf
from ..errors import UnsupportedDimension
from ..polytope import Polytope

MARGIN = 20
CELL_COLOR = "red"


def _around(points: Sequence[tuple]) -> list[tuple]:
    """Vertices of a convex polygon in counterclockwise order."""
    cx = sum(float(p[0]) for p in points) / len(points)
    cy = sum(float(p[1]) for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(float(p[1]) - cy, float(p[0]) - cx))


class _Frame:
    """Maps polytope coordinates to pixels, y axis pointing up."""

    def __init__(self, polytope: Polytope, box: int):
        vertices = polytope.vertices()
        self.min_x = min(v[0] for v in vertices)
        self.min_y = min(v[1] for v in vertices)
        width = max(v[0] for v in vertices) - self.min_x
        height = max(v[1] for v in vertices) - self.min_y
        self.box = box
        self.scale = (box - 2 * MARGIN) / float(max(width, height))

    def __call__(self, u: Sequence[Fraction]) -> tuple[str, str]:
        x = MARGIN + float(u[0] - self.min_x) * self.scale
        y = self.box - MARGIN - float(u[1] - self.min_y) * self.scale
        return f"{x:.3f}", f"{y:.3f}"

    def points(self, us: Sequence[Sequence[Fraction]]) -> str:
        return " ".join(",".join(self(u)) for u in us)


def render_complex_svg(
    complex_: PolyhedralComplex,
    polytope: Polytope,
    title: str = "",
    conf: TropcritConf | None = None,
) -> Markup:
    """
    Render the complex for n = 2.

    Polytope outline black, cells red, nodes as circles: filled when the
    node belongs to the complex, hollow when it is an excluded endpoint.
    """
    if complex_.n != 2 or polytope.dim != 2:
        raise UnsupportedDimension(f"SVG figures are drawn for n = 2, got n = {complex_.n}")
    conf = conf or get_conf()
    box = conf.svg_box
    radius = conf.endpoint_radius
    frame = _Frame(polytope, box)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{box}" height="{box}" viewBox="0 0 {box} {box}">',
        f"<title>{escape(title)}</title>",
        f'<polygon points="{frame.points(_around(polytope.vertices()))}" fill="none" stroke="black" stroke-width="2"/>',
    ]
    for cell in complex_.cells:
        if cell.dim == 2:
            lines.append(
                f'<polygon points="{frame.points(_around(cell.vertices))}" '
                f'fill="{CELL_COLOR}" fill-opacity="0.25" stroke="{CELL_COLOR}" stroke-width="2"/>'
            )
        elif cell.dim == 1:
            (x1, y1), (x2, y2) = frame(cell.vertices[0]), frame(cell.vertices[-1])
            lines.append(
                f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{CELL_COLOR}" stroke-width="2"/>'
            )
    for node in complex_.nodes():
        x, y = frame(node.u)
        fill = CELL_COLOR if node.included else "white"
        lines.append(
            f'<circle cx="{x}" cy="{y}" r="{radius}" fill="{fill}" stroke="{CELL_COLOR}" stroke-width="1.5"/>'
        )
    lines.append("</svg>")
    return Markup("\n".join(lines) + "\n")
