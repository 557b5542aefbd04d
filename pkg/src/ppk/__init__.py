"""Planar presentations of groups: checking, enumeration and Cayley graphs."""

__version__ = "0.1.0"

from .blocked import block_chain, is_blocked
from .cayley import (
    ColoredGraph,
    CosetTable,
    Edge,
    ball,
    build_cayley_graph,
    color_isomorphic,
    coset_enumerate,
    cycle_space_dimension,
    relator_span_rank,
)
from .conditions import (
    Verdict,
    check_generic,
    check_special,
    check_special_as_generic_consistency,
    reversal_parity_even,
    search_special_decoration,
)
from .crossing import Alignment, decide_crossing, find_crossing
from .embedding import (
    RotationSystem,
    SpinReport,
    check_consistent,
    extract_special_presentation,
    hinge_separation,
    is_k_connected,
    planarity_test,
    two_separators,
    walk_crossing,
    well_separated,
)
from .enumeration import (
    Budget,
    PlanarItem,
    canonical_form,
    enumerate_decorations,
    enumerate_planar,
    enumerate_presentations,
)
from .oracle import crossing_oracle
from .presentation import (
    Presentation,
    parse_presentation,
    parse_word,
    remove_obviously_redundant,
)
from .spin import (
    CyclicOrder,
    GenericDecoration,
    SpecialDecoration,
    SpinStructure,
    hinges,
    validate_decoration,
    validate_spin_structure,
)
from .words import Letter, cyclic_reduce, free_product_reduce

__all__ = [
    "Alignment",
    "Budget",
    "ColoredGraph",
    "CosetTable",
    "CyclicOrder",
    "Edge",
    "GenericDecoration",
    "Letter",
    "PlanarItem",
    "Presentation",
    "RotationSystem",
    "SpecialDecoration",
    "SpinReport",
    "SpinStructure",
    "Verdict",
    "__version__",
    "ball",
    "block_chain",
    "build_cayley_graph",
    "canonical_form",
    "check_consistent",
    "check_generic",
    "check_special",
    "check_special_as_generic_consistency",
    "color_isomorphic",
    "coset_enumerate",
    "crossing_oracle",
    "cycle_space_dimension",
    "cyclic_reduce",
    "decide_crossing",
    "enumerate_decorations",
    "enumerate_planar",
    "enumerate_presentations",
    "extract_special_presentation",
    "find_crossing",
    "free_product_reduce",
    "hinge_separation",
    "hinges",
    "is_blocked",
    "is_k_connected",
    "parse_presentation",
    "parse_word",
    "planarity_test",
    "relator_span_rank",
    "remove_obviously_redundant",
    "reversal_parity_even",
    "search_special_decoration",
    "two_separators",
    "validate_decoration",
    "validate_spin_structure",
    "walk_crossing",
    "well_separated",
]
