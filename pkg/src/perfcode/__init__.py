"""Weighted efficient domination through MWIS on graph squares."""

__version__ = "0.1.0"

from perfcode.graph import Graph, WeightedGraph, square
from perfcode.mwis import Solution, mwis_chordal, mwis_exact, mwis_hole_banner_free, mwis_nearly_chordal
from perfcode.wed import Objective, Strategy, brute_force_eds, is_efficient_dominating, solve_wed

__all__ = [
    "Graph",
    "WeightedGraph",
    "square",
    "Solution",
    "mwis_exact",
    "mwis_chordal",
    "mwis_nearly_chordal",
    "mwis_hole_banner_free",
    "Objective",
    "Strategy",
    "brute_force_eds",
    "is_efficient_dominating",
    "solve_wed",
]
