"""Cayley graphs of the modular group and its quotients with the a-edges doubled."""

from typing import Callable, Dict, Hashable, Iterable, List, Optional, Tuple

from ..core.context import ComputeContext, default_context
from ..core.types import Letter
from ..groups.words import (
    NEIGHBOR_MOVES,
    ReducedWord,
    ball,
    orbit_partition,
    pi_project,
    swap_b,
)
from .weighted import Partition, VertexMap, WeightedGraph

# Weight of the edge from x to x·s; a has order 2 and its edges count twice
GENERATOR_WEIGHTS: Dict[Letter, int] = {Letter.A: 2, Letter.B: 1, Letter.B2: 1}
CAYLEY_DEGREE = 4


def cayley_graph(
    elements: Iterable[Hashable],
    right_multiply: Callable[[Hashable, Letter], Hashable],
    name: str = "",
) -> WeightedGraph:
    """
    Weighted Cayley graph on a finite set of group elements.

    Elements whose neighbors fall outside the set keep degree 4 and form the
    boundary of the truncation.

    Args:
        elements: Group elements (the whole group, or a ball)
        right_multiply: x, s ↦ x·s
        name: Graph label

    Returns:
        Graph with w(x, xa) = 2 and w(x, xb) = w(x, xb²) = 1
    """
    vertices = list(elements)
    members = set(vertices)
    weights: Dict[Tuple[Hashable, Hashable], int] = {}
    ambient: Dict[Hashable, int] = {}
    for x in vertices:
        total = 0
        for move in NEIGHBOR_MOVES:
            y = right_multiply(x, move)
            if y in members:
                weights[(x, y)] = weights.get((x, y), 0) + GENERATOR_WEIGHTS[move]
                total += GENERATOR_WEIGHTS[move]
        if total < CAYLEY_DEGREE:
            ambient[x] = CAYLEY_DEGREE
    return WeightedGraph(vertices, weights, ambient, name=name)


_LETTER_WORDS = {m: ReducedWord.model_construct(letters=(m,)) for m in NEIGHBOR_MOVES}


def gamma_ball(radius: int, ctx: Optional[ComputeContext] = None) -> WeightedGraph:
    """
    The ball of the given radius in the Cayley graph of PSL2(Z).

    Args:
        radius: Word-length radius
        ctx: Compute context (vertex budget)

    Returns:
        Truncated Cayley graph whose boundary is the outer sphere
    """
    ctx = ctx or default_context()
    words = ball(radius, ctx)
    g = cayley_graph(words, lambda x, s: x * _LETTER_WORDS[s], name=f"gamma_ball({radius})")
    ctx.logger.info(f"Built Cayley ball({radius}): {len(g)} vertices, {len(g.boundary)} on the boundary")
    return g


def projection_map(g: WeightedGraph) -> VertexMap:
    """The signed-length projection of a ball onto the line."""
    return VertexMap.from_function(g.vertices, pi_project)


def fiber_partition(g: WeightedGraph) -> Partition:
    """Partition of a ball into projection fibers, labelled by line vertex in increasing order."""
    part = Partition.by_key(g.vertices, pi_project)
    return Partition({n: part.block(n) for n in sorted(part.labels)})


def reflection_partition(g: WeightedGraph) -> Partition:
    """Orbits of the reflection exchanging b and b², labelled by their first word."""
    orbits: List[List[ReducedWord]] = orbit_partition(g.vertices, [swap_b])
    return Partition({orbit[0]: orbit for orbit in orbits})
