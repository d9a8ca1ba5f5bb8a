"""Combinatorics of poset associahedra.

Proper tubings of a finite connected poset are the faces of a simple
polytope; this package enumerates them, computes f- and h-vectors and face
lattices, flips autonomous subsets, and carries tubings across flips with a
size-preserving bijection.
"""

from .comparability import (
    ComparabilityGraph,
    FlipSearchResult,
    FlipSequence,
    all_posets,
    autonomous_subsets,
    canonical_form,
    comparability_graph,
    connected_posets,
    flip_sequence,
    graphs_isomorphic,
    poset_isomorphism,
    replay_flips,
)
from .errors import (
    CyclicRelation,
    DisconnectedPoset,
    DomainError,
    DuplicateElement,
    ElementNotFound,
    EmptyComposition,
    LabelClash,
    MalformedDecomposition,
    MalformedInput,
    NotATubing,
    NotAutonomous,
    PosetTooLarge,
    QuotientNotPoset,
    StructureViolation,
    TooSmall,
    UnknownElement,
)
from .flips import (
    DecoratedSequence,
    Decomposition,
    TubeClassification,
    classify_tubes,
    decompose,
    flip_tubing,
    is_weakly_increasing,
    reconstruct,
)
from .lattice import (
    Face,
    FaceLattice,
    face_lattice,
    face_product_decomposition,
    lattices_equivalent,
    permutohedron_f_vector,
    permutohedron_lattice,
    polygon_census,
    quotient_with_map,
    two_face_census,
)
from .posets import (
    Poset,
    antichain,
    as_mask,
    chain,
    complete_graded,
    dual,
    flip,
    is_autonomous,
    mask_members,
    parse_poset,
    substitute,
)
from .tubings import (
    enumerate_tubes,
    enumerate_tubings,
    f_vector,
    h_vector,
    is_proper_tube,
    is_proper_tubing,
    maximal_tubings,
    tube_digraph,
    tubing_from_labels,
    tubing_to_labels,
)

__all__ = [
    "ComparabilityGraph",
    "CyclicRelation",
    "DecoratedSequence",
    "Decomposition",
    "DisconnectedPoset",
    "DomainError",
    "DuplicateElement",
    "ElementNotFound",
    "EmptyComposition",
    "Face",
    "FaceLattice",
    "FlipSearchResult",
    "FlipSequence",
    "LabelClash",
    "MalformedDecomposition",
    "MalformedInput",
    "NotATubing",
    "NotAutonomous",
    "Poset",
    "PosetTooLarge",
    "QuotientNotPoset",
    "StructureViolation",
    "TooSmall",
    "TubeClassification",
    "UnknownElement",
    "all_posets",
    "antichain",
    "as_mask",
    "autonomous_subsets",
    "canonical_form",
    "chain",
    "classify_tubes",
    "comparability_graph",
    "complete_graded",
    "connected_posets",
    "decompose",
    "dual",
    "enumerate_tubes",
    "enumerate_tubings",
    "f_vector",
    "face_lattice",
    "face_product_decomposition",
    "flip",
    "flip_sequence",
    "flip_tubing",
    "graphs_isomorphic",
    "h_vector",
    "is_autonomous",
    "is_proper_tube",
    "is_proper_tubing",
    "is_weakly_increasing",
    "lattices_equivalent",
    "mask_members",
    "maximal_tubings",
    "parse_poset",
    "permutohedron_f_vector",
    "permutohedron_lattice",
    "polygon_census",
    "poset_isomorphism",
    "quotient_with_map",
    "reconstruct",
    "replay_flips",
    "substitute",
    "tube_digraph",
    "tubing_from_labels",
    "tubing_to_labels",
    "two_face_census",
]
