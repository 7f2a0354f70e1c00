"""Finite windows of power graphs of torsion-free abelian groups, in exact arithmetic."""

from .graphs import WindowGraph, WindowSpec, build_window, directed_power_graph, power_graph
from .groups import Cyclic, Q, Qn, Unitary, Z, Zn, parse_group
from .heights import INF, HeightFunction

__version__ = "0.1.0"
