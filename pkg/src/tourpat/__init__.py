"""Exact and Monte Carlo workbench for Turan-type problems on tournaments
and 0/1 matrix patterns."""

from .core import (
    BinaryMatrix,
    CapExceeded,
    PatternWitness,
    SemiCompleteDigraph,
    SubgraphWitness,
    Tournament,
    UndirectedOrderedGraph,
    add_back_arcs,
    back_edge_graph,
    complete_digraph,
    make_circulant,
    make_delta,
    make_transitive,
    make_u5,
    make_xh_tree,
    random_tournament,
)

__all__ = [
    "BinaryMatrix",
    "CapExceeded",
    "PatternWitness",
    "SemiCompleteDigraph",
    "SubgraphWitness",
    "Tournament",
    "UndirectedOrderedGraph",
    "add_back_arcs",
    "back_edge_graph",
    "complete_digraph",
    "make_circulant",
    "make_delta",
    "make_transitive",
    "make_u5",
    "make_xh_tree",
    "random_tournament",
]

__version__ = "0.1.0"
