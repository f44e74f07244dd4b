"""Spectra and exact Cheeger constants of Cayley graphs and Cayley sum graphs."""

from .analysis import AnalysisReport, CayleyAnalyzer
from .bounds import SHARP_TABLE, BoundParams, CheckReport, SharpTable
from .cheeger import CutWitness, cheeger_exact, edge_cheeger_exact, expander_epsilon, vertex_cheeger_exact
from .graphs import CountGraph, GeneratingSet, build_cayley, build_cayley_sum, build_pair_multigraph, validate
from .groups import ElementSet, FiniteGroup, cyclic, dihedral, direct_product, from_mul_table, quaternion8, symmetric
from .spectra import Spectrum, eig_symmetric

__all__ = [
    "AnalysisReport",
    "BoundParams",
    "CayleyAnalyzer",
    "CheckReport",
    "CountGraph",
    "CutWitness",
    "ElementSet",
    "FiniteGroup",
    "GeneratingSet",
    "SHARP_TABLE",
    "SharpTable",
    "Spectrum",
    "build_cayley",
    "build_cayley_sum",
    "build_pair_multigraph",
    "cheeger_exact",
    "cyclic",
    "dihedral",
    "direct_product",
    "edge_cheeger_exact",
    "eig_symmetric",
    "expander_epsilon",
    "from_mul_table",
    "quaternion8",
    "symmetric",
    "validate",
    "vertex_cheeger_exact",
]
