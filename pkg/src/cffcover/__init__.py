"""Cover-free families and d-biclique covers of bi-intersection graphs."""

from .errors import BudgetError, CffError, DomainError, ParseError, StructuralError, UnsupportedError
from .setsystem import SetSystem, is_cff, parse_incidence, emit_incidence
from .graphs import LabeledGraph, bi_intersection, build_graph, complete, kminus, subset_graph
from .cover import Biclique, BicliqueCover, exact_bcd, validate_cover
from .bounds import best_bounds, exact_value

__version__ = "0.1.0"

__all__ = [
    "BudgetError", "CffError", "DomainError", "ParseError", "StructuralError", "UnsupportedError",
    "SetSystem", "is_cff", "parse_incidence", "emit_incidence",
    "LabeledGraph", "bi_intersection", "build_graph", "complete", "kminus", "subset_graph",
    "Biclique", "BicliqueCover", "exact_bcd", "validate_cover",
    "best_bounds", "exact_value",
]
