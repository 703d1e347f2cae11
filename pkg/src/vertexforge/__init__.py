"""Exact computations for the topological vertex, double Hurwitz numbers and
relative invariants of formal toric Calabi-Yau graphs."""

from .amplitudes import (
    AmplitudeTable, c_tilde, c_tilde_framed, f_graph_general, f_graph_regular, f_vertex,
    g_one, g_three, g_two, partition_function,
)
from .exact import ExactScalar, GaussianRational, I, ParseError, i_power, parse_q_expression, q_power, render
from .ftcy import EffectiveClass, FtcyGraph, GraphValidationError, effective_classes, load_graph, parse_graph
from .hurwitz import hurwitz_number, phi_q, phi_series
from .partitions import EMPTY, Partition, PartitionTriple, kappa, partitions, z
from .symchar import character, lr_coefficient, lr_double
from .vertex import w_one, w_three, w_tilde, w_two

__version__ = "0.1.0"

__all__ = [
    "AmplitudeTable", "EMPTY", "EffectiveClass", "ExactScalar", "FtcyGraph", "GaussianRational",
    "GraphValidationError", "I", "ParseError", "Partition", "PartitionTriple", "c_tilde",
    "c_tilde_framed", "character", "effective_classes", "f_graph_general", "f_graph_regular",
    "f_vertex", "g_one", "g_three", "g_two", "hurwitz_number", "i_power", "kappa", "load_graph",
    "lr_coefficient", "lr_double", "parse_graph", "parse_q_expression", "partition_function",
    "partitions", "phi_q", "phi_series", "q_power", "render", "w_one", "w_three", "w_tilde",
    "w_two", "z",
]
