"""Reconstruction of normal phylogenetic networks from displayed
three- and four-leaf caterpillars.

The package models rooted binary phylogenetic networks, extracts the
triples and quads they display, recognizes reducible cherry structure from
those sets alone, and rebuilds the unique normal network that displays
them.  Generators and search utilities support property testing and the
companion ambiguity results.
"""

from .caterpillars import (
    CaterpillarSets,
    Quad,
    Triple,
    as_caterpillar,
    delete_leaf_from_sets,
    displays,
    extract_sets,
    restrict_tree,
    switchings,
)
from .enewick import ENewickParseError, parse_enewick, to_dot, write_enewick
from .generate import (
    GenSpec,
    UnsatisfiableSpecError,
    enumerate_networks,
    find_normal_rq_ambiguous_pair,
    find_treechild_rq_ambiguous_tuple,
    find_triple_ambiguous_pair,
    random_normal,
    random_temporal_normal,
)
from .network import (
    NetworkError,
    NotReducibleError,
    PhyloNetwork,
    ValidationReport,
    attach_cherry,
    attach_reticulated_cherry,
    canonical_colors,
    cluster_set,
    delete_leaf,
    has_shortcut,
    is_normal,
    is_temporal,
    is_tree_child,
    isomorphic,
    structural_cherries,
    structural_double_reticulated_cherries,
    structural_reticulated_cherries,
    tree_path_leaf,
    validate,
    visibility_set,
)
from .recognition import (
    CandidateSet,
    RecognitionResult,
    all_candidate_sets,
    candidate_set,
    find_reduction,
    is_cherry_by_sets,
    is_double_reticulated_cherry_by_sets,
    is_reticulated_cherry_by_sets,
)
from .reconstruct import (
    PlacementContext,
    ReconstructionError,
    ReconstructionTrace,
    TraceEntry,
    construct_normal,
    construct_temporal_normal,
    place_g_b,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateSet",
    "CaterpillarSets",
    "ENewickParseError",
    "GenSpec",
    "NetworkError",
    "NotReducibleError",
    "PhyloNetwork",
    "PlacementContext",
    "Quad",
    "RecognitionResult",
    "ReconstructionError",
    "ReconstructionTrace",
    "TraceEntry",
    "Triple",
    "UnsatisfiableSpecError",
    "ValidationReport",
    "all_candidate_sets",
    "as_caterpillar",
    "attach_cherry",
    "attach_reticulated_cherry",
    "candidate_set",
    "canonical_colors",
    "cluster_set",
    "construct_normal",
    "construct_temporal_normal",
    "delete_leaf",
    "delete_leaf_from_sets",
    "displays",
    "enumerate_networks",
    "extract_sets",
    "find_normal_rq_ambiguous_pair",
    "find_reduction",
    "find_treechild_rq_ambiguous_tuple",
    "find_triple_ambiguous_pair",
    "has_shortcut",
    "is_cherry_by_sets",
    "is_double_reticulated_cherry_by_sets",
    "is_normal",
    "is_reticulated_cherry_by_sets",
    "is_temporal",
    "is_tree_child",
    "isomorphic",
    "parse_enewick",
    "place_g_b",
    "random_normal",
    "random_temporal_normal",
    "restrict_tree",
    "structural_cherries",
    "structural_double_reticulated_cherries",
    "structural_reticulated_cherries",
    "switchings",
    "to_dot",
    "tree_path_leaf",
    "validate",
    "visibility_set",
    "write_enewick",
]
