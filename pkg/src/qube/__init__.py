"""Structural analysis of Hamiltonian cycles in the n-dimensional hypercube.

The package models hypercube vertices as integers (entry i = bit i), and
provides: validated Hamiltonian cycles with per-dimension profiles and
balance checks (:mod:`qube.cycles`), inscribed-square detection and
square-forcing thresholds (:mod:`qube.squares`), exact maximum-independent
and balanced-independent set solvers with the pair-graph reduction
(:mod:`qube.independence`), exhaustive pruned enumeration and randomized
sampling of cycles (:mod:`qube.enumeration`), and a command-line interface
(:mod:`qube.cli`).
"""

from .cycles import (
    CycleError,
    DimensionUnused,
    DuplicateVertex,
    HamiltonianCycle,
    NonAdjacentStep,
    NotAMatching,
    NotClosed,
    WrongLength,
    check_balance,
    check_chromatic_conditions,
    check_segment_sums,
    chromatic_vector,
    color,
    dimension_profile,
    gray_cycle,
    matching_obstruction,
    normalize,
    permute_dims,
    validate_cycle,
)
from .enumeration import (
    PruneConfig,
    canonical_form,
    count_cycles,
    enumerate_cycles,
    path_prefixes,
    sample_cycles,
)
from .graphs import (
    BipartiteGraph,
    ReducedGraph,
    UndirectedGraph,
    format_bipartite,
    format_graph,
    hypercube_bipartite,
    hypercube_graph,
    is_balanced,
    is_independent,
    is_maximal_independent,
    parse_bipartite,
    parse_graph,
)
from .hypercube import (
    MAX_DIM,
    DimEdge,
    DimensionGraph,
    dim_edge_project,
    dimension_graph,
    drop_entry,
    edge_class,
    edge_dim,
    gray_code,
    insert_entry,
    neighbors,
    parity,
    parity_excluding,
)
from .independence import (
    SizeLimitExceeded,
    brute_force_equi,
    equi_independence,
    equi_reduction,
    lower_bound_set,
    max_independent_set,
    unpack_pair_witness,
)
from .squares import (
    ALPHA_EQUI_COMPUTED,
    ALPHA_EQUI_HYPERCUBE,
    EquiValueUnavailable,
    InscribedSquare,
    check_threshold_implication,
    find_squares,
    has_square,
    rim_threshold,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
