"""Weighted graphs: the covering calculus, Cayley graphs and the projected line."""

from .weighted import (
    CoveringReport,
    CoveringWitness,
    HeatSeriesResult,
    MeqReport,
    Partition,
    VertexMap,
    WeightedGraph,
    degree_transfer_check,
    from_edge_lines,
    heat_series,
    is_automorphism,
    is_covering,
    is_fiber_uniform,
    is_morphism,
    meq_check,
    poisson_tail,
    quotient,
    to_edge_lines,
)
from .line import (
    LineWindow,
    apply_projected_laplacian,
    line_degree,
    line_weight,
    mirror,
    mirror_index,
    projected_laplacian_entry,
    window_matrix,
    window_matrix_exact,
)
from .cayley import (
    GENERATOR_WEIGHTS,
    cayley_graph,
    fiber_partition,
    gamma_ball,
    projection_map,
    reflection_partition,
)

__all__ = [
    "CoveringReport",
    "CoveringWitness",
    "HeatSeriesResult",
    "MeqReport",
    "Partition",
    "VertexMap",
    "WeightedGraph",
    "degree_transfer_check",
    "from_edge_lines",
    "heat_series",
    "is_automorphism",
    "is_covering",
    "is_fiber_uniform",
    "is_morphism",
    "meq_check",
    "poisson_tail",
    "quotient",
    "to_edge_lines",
    "LineWindow",
    "apply_projected_laplacian",
    "line_degree",
    "line_weight",
    "mirror",
    "mirror_index",
    "projected_laplacian_entry",
    "window_matrix",
    "window_matrix_exact",
    "GENERATOR_WEIGHTS",
    "cayley_graph",
    "fiber_partition",
    "gamma_ball",
    "projection_map",
    "reflection_partition",
]
