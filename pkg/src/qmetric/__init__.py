"""Classification of edge-colored complete graphs by their quantum
permutation symmetry, diagram-space ranks, and exact matrix checks."""

from .classifier import Classification, Kind, classify
from .diagrams import FC, TL, gram_rank
from .permgroup import PermutationGroup, automorphism_group, orbit_count_on_tuples
from .space import ColoredSpace, Graph, canonical_form, parse_space

__all__ = [
    "Classification", "Kind", "classify", "FC", "TL", "gram_rank", "PermutationGroup",
    "automorphism_group", "orbit_count_on_tuples", "ColoredSpace", "Graph", "canonical_form",
    "parse_space",
]
