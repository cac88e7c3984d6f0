"""Thickness and relative hyperbolicity of Coxeter groups."""

from .graph import Graph
from .racg import RacgReport, Status, classify_racg, is_thick_order0, oracle_in_T, thick_fixed_point

__all__ = [
    "Graph",
    "RacgReport",
    "Status",
    "classify_racg",
    "is_thick_order0",
    "oracle_in_T",
    "thick_fixed_point",
]
