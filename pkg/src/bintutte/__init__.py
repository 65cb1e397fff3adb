"""Exact evaluation of the Tutte polynomial of binary matroids and related polynomials."""

from .errors import InputError, ParameterError, SizeError, SynthesisError
from .gf2 import Gf2Matrix, dual_representation, rank, row_reduce
from .matroid import BinaryMatroid, Graph, contract, delete, dual, from_graph, is_coloop, is_loop, rank_of
from .partition import (
    SatSpectrum,
    TwoPower,
    eval_spectrum_at,
    hypergraph_potts,
    ising,
    potts_matroid,
    random_cluster_graph,
    sat_spectrum,
    tutte_T,
    tutte_tilde,
)

__all__ = [
    "BinaryMatroid", "Gf2Matrix", "Graph", "InputError", "ParameterError", "SatSpectrum",
    "SizeError", "SynthesisError", "TwoPower", "contract", "delete", "dual",
    "dual_representation", "eval_spectrum_at", "from_graph", "hypergraph_potts", "ising",
    "is_coloop", "is_loop", "potts_matroid", "random_cluster_graph", "rank", "rank_of",
    "row_reduce", "sat_spectrum", "tutte_T", "tutte_tilde",
]

__version__ = "0.1.0"
