from .figspec import FigureSpec, PanelSpec, SpecError, parse_figure_spec
from .render import MissingSeries, build_figure, render

__all__ = [
    "FigureSpec",
    "PanelSpec",
    "SpecError",
    "MissingSeries",
    "parse_figure_spec",
    "build_figure",
    "render",
]
__version__ = "0.1.0"
