"""Path-star graph classes, sail obstructions, and tree decompositions."""

from .errors import CapExceededError, ObstructionError
from .words import (
    InfiniteWordSpec,
    FiniteWord,
    ZeckendorfRep,
    NestednessReport,
    arithmetic_letter,
    power_letter,
    fibonacci_letter,
    prefix,
    power_iterate,
    fibonacci_iterate,
    zeckendorf,
    is_nested,
    find_increasing_intervals,
)
from .graphs import (
    LabeledGraph,
    SailWitness,
    VertexTag,
    ValidationResult,
    canonical_sail,
    complete_bipartite,
    complete_graph,
    contains_cycle_of_length,
    cycle_graph,
    girth,
    induced,
    is_t_sail_witness,
    line_graph,
    path_graph,
    path_star_graph,
    subdivide,
    wall,
    wall_vertex_id,
)
from .sails import (
    MinorModel,
    SailConstructionError,
    build_sail_from_intervals,
    clique_minor_model,
    find_sail_witness,
    sail_girth_surgery,
    validate_minor_model,
)
from .decomposition import (
    TreeDecomposition,
    build_arithmetic,
    build_fibonacci,
    build_power,
    exact_treewidth,
    heuristic_treewidth_upper,
    validate_decomposition,
    width,
)
from .obstructions import (
    SubdivisionEmbedding,
    contains_subdivision,
    kkw_scan,
    separator_check,
    validate_embedding,
    wall_surgery,
)

__all__ = [
    "CapExceededError",
    "ObstructionError",
    "InfiniteWordSpec",
    "FiniteWord",
    "ZeckendorfRep",
    "NestednessReport",
    "arithmetic_letter",
    "power_letter",
    "fibonacci_letter",
    "prefix",
    "power_iterate",
    "fibonacci_iterate",
    "zeckendorf",
    "is_nested",
    "find_increasing_intervals",
    "LabeledGraph",
    "SailWitness",
    "VertexTag",
    "ValidationResult",
    "canonical_sail",
    "complete_bipartite",
    "complete_graph",
    "contains_cycle_of_length",
    "cycle_graph",
    "girth",
    "induced",
    "is_t_sail_witness",
    "line_graph",
    "path_graph",
    "path_star_graph",
    "subdivide",
    "wall",
    "wall_vertex_id",
    "MinorModel",
    "SailConstructionError",
    "build_sail_from_intervals",
    "clique_minor_model",
    "find_sail_witness",
    "sail_girth_surgery",
    "validate_minor_model",
    "TreeDecomposition",
    "build_arithmetic",
    "build_fibonacci",
    "build_power",
    "exact_treewidth",
    "heuristic_treewidth_upper",
    "validate_decomposition",
    "width",
    "SubdivisionEmbedding",
    "contains_subdivision",
    "kkw_scan",
    "separator_check",
    "validate_embedding",
    "wall_surgery",
]
