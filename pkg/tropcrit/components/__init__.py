"""Renderers for figures and the gallery index."""

from .figure import render_complex_svg
from .summary import render_gallery_index, render_gallery_markdown

__all__ = [
    "render_complex_svg",
    "render_gallery_index",
    "render_gallery_markdown",
]
