"""Sierpiński products of graphs: construction, planarity, metrics and automorphisms."""

from .analysis import (
    connecting_edge_cycle_check,
    diameter_bound,
    embedding_condition_check,
    embedding_condition_report,
    genus_lower_bound,
    product_planarity,
)
from .config import Limits, limits
from .errors import (
    GraphError,
    LoopError,
    MapError,
    NotAutomorphismError,
    ParseError,
    SearchOverflow,
    UnknownEdgeError,
    UnknownVertexError,
)
from .graph import (
    Graph,
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    empty,
    house,
    named,
    path,
    two_triangles_edge,
)
from .groups import Permutation, PermGroup, check_semidirect, group_closure, is_automorphism
from .io import (
    emit_dot,
    emit_edge_list,
    emit_graph6,
    parse_edge_list,
    parse_graph6,
    parse_map_text,
)
from .iso import automorphisms, is_isomorphic, isomorphism
from .metrics import diameter, distance, distance_matrix, girth, is_biconnected, is_connected
from .planarity import RotationSystem, PlanarityVerdict, apex_extension, is_outerplanar, is_planar
from .product import (
    ChainSpec,
    ProductResult,
    VertexMap,
    binary_counts,
    chain_product,
    generalized_sierpinski,
    is_locally_injective,
    predicted_counts,
    sierpinski_product,
)
from .scan import conjecture_scan
from .symmetry import (
    LiftSpec,
    PartitionedAut,
    bar_a,
    hat_b,
    make_phi,
    make_psi,
    project,
    psi_bijection,
    respects_partition,
    tilde_a,
    verify_decomposition,
)

__version__ = "0.1.0"
