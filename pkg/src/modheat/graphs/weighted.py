"""Weighted graphs, their Laplacians, quotients, coverings and the truncated heat series."""

import math
from fractions import Fraction
from functools import cached_property
from typing import (
    Any,
    Callable,
    Dict,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

import networkx as nx
import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel
from scipy.special import gammainc

from ..core.context import ComputeContext, default_context
from ..core.errors import (
    ArgumentError,
    InvariantViolationError,
    PreconditionError,
)
from ..core.qsqrt2 import QSqrt2

Rational = Any  # int or Fraction


def _token(v: Hashable) -> str:
    token = getattr(v, "token", None)
    return token() if callable(token) else str(v)


class WeightedGraph:
    """A finite connected graph with a symmetric nonnegative rational weight function.

    Truncations of infinite graphs (balls, line windows) keep the true degree of
    their cut-off vertices through ``ambient_degrees``; such vertices are the
    graph's boundary.
    """

    def __init__(
        self,
        vertices: Sequence[Hashable],
        weights: Mapping[Tuple[Hashable, Hashable], Rational],
        ambient_degrees: Optional[Mapping[Hashable, Rational]] = None,
        name: str = "",
    ):
        """
        Initialize and validate a weighted graph.

        Args:
            vertices: Vertex ids in the order used for matrix rows
            weights: Weight per vertex pair; each unordered pair may be given in
                one or both orientations (values must then agree), loops once
            ambient_degrees: True degree of truncated vertices, at least the
                weight sum present in the graph
            name: Label used in logs

        Raises:
            ArgumentError: If a vertex is repeated or a weight names an unknown vertex
            InvariantViolationError: If weights are negative or asymmetric, a degree is
                zero, or the graph is disconnected
        """
        self.name = name
        self._vertices: Tuple[Hashable, ...] = tuple(vertices)
        self._index: Dict[Hashable, int] = {v: i for i, v in enumerate(self._vertices)}
        if len(self._index) != len(self._vertices):
            raise ArgumentError(f"graph {name!r} has repeated vertex ids")

        self._adj: Dict[Hashable, Dict[Hashable, Fraction]] = {v: {} for v in self._vertices}
        for (u, v), raw in weights.items():
            if u not in self._index or v not in self._index:
                raise ArgumentError(f"weight ({u}, {v}) names an unknown vertex")
            w = Fraction(raw)
            if w < 0:
                raise InvariantViolationError(f"negative weight w({u}, {v}) = {w}")
            if w == 0:
                continue
            known = self._adj[u].get(v)
            if known is not None and known != w:
                raise InvariantViolationError(
                    f"asymmetric weight: w({u}, {v}) = {known} but w({v}, {u}) = {w}"
                )
            self._adj[u][v] = w
            self._adj[v][u] = w

        self._degree: Dict[Hashable, Fraction] = {}
        self._truncated = set()
        ambient = ambient_degrees or {}
        for v in self._vertices:
            total = sum(self._adj[v].values(), Fraction(0))
            if v in ambient:
                declared = Fraction(ambient[v])
                if declared < total:
                    raise InvariantViolationError(
                        f"ambient degree {declared} of {v} is below its weight sum {total}"
                    )
                if declared > total:
                    self._truncated.add(v)
                total = declared
            if total <= 0:
                raise InvariantViolationError(f"vertex {v} has zero degree")
            self._degree[v] = total

        if len(self._vertices) > 1 and not nx.is_connected(self.to_networkx()):
            raise InvariantViolationError(f"graph {name!r} is disconnected")

    # Structure

    @property
    def vertices(self) -> Tuple[Hashable, ...]:
        return self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: Hashable) -> bool:
        return v in self._index

    def __repr__(self) -> str:
        return f"WeightedGraph({self.name!r}, {len(self)} vertices)"

    def index(self, v: Hashable) -> int:
        """Row index of a vertex."""
        try:
            return self._index[v]
        except KeyError:
            raise ArgumentError(f"unknown vertex {v!r}")

    def neighbors(self, v: Hashable) -> Mapping[Hashable, Fraction]:
        """Weights of all edges at v, loop included."""
        self.index(v)
        return self._adj[v]

    def weight(self, u: Hashable, v: Hashable) -> Fraction:
        self.index(u)
        self.index(v)
        return self._adj[u].get(v, Fraction(0))

    def degree(self, u: Hashable) -> Fraction:
        """
        Exact degree d_u = Σ_v w(u, v), or the ambient degree of a truncated vertex.

        Args:
            u: Vertex id

        Returns:
            Degree as a Fraction

        Raises:
            ArgumentError: If u is not a vertex
        """
        self.index(u)
        return self._degree[u]

    def is_truncated(self, v: Hashable) -> bool:
        return v in self._truncated

    @property
    def boundary(self) -> List[Hashable]:
        """Truncated vertices in row order."""
        return [v for v in self._vertices if v in self._truncated]

    def edges(self) -> Iterator[Tuple[Hashable, Hashable, Fraction]]:
        """Each edge once, as (u, v, w) with u not after v in row order."""
        for u in self._vertices:
            iu = self._index[u]
            for v, w in self._adj[u].items():
                if self._index[v] >= iu:
                    yield u, v, w

    def to_networkx(self) -> nx.Graph:
        """networkx view; edge weights are stored under ``w`` so path lengths count hops."""
        g = nx.Graph()
        g.add_nodes_from(self._vertices)
        g.add_edges_from((u, v, {"w": w}) for u, v, w in self.edges())
        return g

    @cached_property
    def boundary_distances(self) -> Dict[Hashable, float]:
        """Hop distance from each vertex to the boundary (infinite if there is none)."""
        if not self._truncated:
            return {v: math.inf for v in self._vertices}
        return dict(nx.multi_source_dijkstra_path_length(self.to_networkx(), self._truncated))

    # Matrices

    def _inv_sqrt_degrees(self) -> np.ndarray:
        return np.array([1.0 / math.sqrt(float(self._degree[v])) for v in self._vertices])

    def m_matrix(self, sparse: bool = False):
        """
        Matrix M(u, v) = w(u, v)/sqrt(d_u d_v), so that M = I − L.

        Args:
            sparse: Return a scipy CSR matrix instead of a dense array

        Returns:
            Symmetric matrix in row order
        """
        rows, cols, vals = [], [], []
        s = self._inv_sqrt_degrees()
        for u, v, w in self.edges():
            i, j = self._index[u], self._index[v]
            value = float(w) * s[i] * s[j]
            rows.append(i)
            cols.append(j)
            vals.append(value)
            if i != j:
                rows.append(j)
                cols.append(i)
                vals.append(value)
        n = len(self)
        matrix = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
        return matrix if sparse else matrix.toarray()

    def normalized_laplacian(self) -> np.ndarray:
        """Dense normalized Laplacian δ(u, v) − w(u, v)/sqrt(d_u d_v)."""
        return np.eye(len(self)) - self.m_matrix()

    def laplacian(self) -> np.ndarray:
        """Dense combinatorial Laplacian d_u δ(u, v) − w(u, v)."""
        n = len(self)
        lap = np.zeros((n, n))
        for u, v, w in self.edges():
            i, j = self._index[u], self._index[v]
            lap[i, j] -= float(w)
            if i != j:
                lap[j, i] -= float(w)
        for v, d in self._degree.items():
            lap[self._index[v], self._index[v]] += float(d)
        return lap

    def m_entry_exact(self, u: Hashable, v: Hashable) -> QSqrt2:
        """M(u, v) in Q[sqrt2]; needs d_u d_v to be a square or twice a square."""
        w = self.weight(u, v)
        if w == 0:
            return QSqrt2(0)
        return QSqrt2(w) * QSqrt2.sqrt_of(self._degree[u] * self._degree[v]).inverse

    def normalized_laplacian_exact(self) -> List[List[QSqrt2]]:
        """Dense normalized Laplacian with entries in Q[sqrt2]."""
        n = len(self)
        rows = [[QSqrt2(1 if i == j else 0) for j in range(n)] for i in range(n)]
        for u, v, _ in self.edges():
            i, j = self._index[u], self._index[v]
            value = self.m_entry_exact(u, v)
            rows[i][j] = rows[i][j] - value
            if i != j:
                rows[j][i] = rows[j][i] - value
        return rows


class VertexMap:
    """A map between vertex sets with finite fibers."""

    def __init__(self, assignment: Mapping[Hashable, Hashable]):
        self._assignment = dict(assignment)
        self._fibers: Dict[Hashable, List[Hashable]] = {}
        for x, v in self._assignment.items():
            self._fibers.setdefault(v, []).append(x)

    @staticmethod
    def from_function(vertices: Iterable[Hashable], f: Callable[[Hashable], Hashable]) -> "VertexMap":
        return VertexMap({x: f(x) for x in vertices})

    def __call__(self, x: Hashable) -> Hashable:
        try:
            return self._assignment[x]
        except KeyError:
            raise ArgumentError(f"vertex {x!r} is outside the domain of the map")

    @property
    def image(self) -> List[Hashable]:
        return list(self._fibers)

    def fiber(self, v: Hashable) -> List[Hashable]:
        return self._fibers.get(v, [])

    def fiber_size(self, v: Hashable) -> int:
        return len(self._fibers.get(v, ()))

    def domain(self) -> List[Hashable]:
        return list(self._assignment)

    def require_onto(self, src: WeightedGraph, dst: WeightedGraph) -> None:
        """Check that the map is total on src and surjective onto dst."""
        missing = [x for x in src.vertices if x not in self._assignment]
        if missing:
            raise ArgumentError(f"map is not total: {missing[0]!r} has no image")
        outside = [v for v in self._fibers if v not in dst]
        if outside:
            raise ArgumentError(f"map sends vertices to {outside[0]!r}, not in target")
        uncovered = [v for v in dst.vertices if v not in self._fibers]
        if uncovered:
            raise ArgumentError(f"map is not surjective: {uncovered[0]!r} has an empty fiber")


class Partition:
    """Disjoint labelled blocks covering a vertex set."""

    def __init__(self, blocks: Mapping[Hashable, Iterable[Hashable]]):
        self._blocks: Dict[Hashable, List[Hashable]] = {k: list(b) for k, b in blocks.items()}
        self._label: Dict[Hashable, Hashable] = {}
        for label, block in self._blocks.items():
            if not block:
                raise ArgumentError(f"partition block {label!r} is empty")
            for x in block:
                if x in self._label:
                    raise ArgumentError(f"vertex {x!r} lies in two blocks")
                self._label[x] = label

    @staticmethod
    def by_key(vertices: Iterable[Hashable], key: Callable[[Hashable], Hashable]) -> "Partition":
        """Group vertices by a key function, blocks in order of first appearance."""
        blocks: Dict[Hashable, List[Hashable]] = {}
        for x in vertices:
            blocks.setdefault(key(x), []).append(x)
        return Partition(blocks)

    @staticmethod
    def singletons(g: WeightedGraph) -> "Partition":
        return Partition({v: [v] for v in g.vertices})

    @property
    def labels(self) -> List[Hashable]:
        return list(self._blocks)

    def block(self, label: Hashable) -> List[Hashable]:
        return self._blocks[label]

    def label_of(self, x: Hashable) -> Hashable:
        return self._label[x]

    def validate_on(self, g: WeightedGraph) -> None:
        """
        Check that the blocks cover exactly the vertices of g.

        Raises:
            ArgumentError: If a vertex is missing or foreign
        """
        for x in self._label:
            if x not in g:
                raise ArgumentError(f"partition names {x!r}, which is not a vertex")
        if len(self._label) != len(g):
            missing = next(v for v in g.vertices if v not in self._label)
            raise ArgumentError(f"partition misses vertex {missing!r}")


def quotient(g: WeightedGraph, part: Partition) -> Tuple[WeightedGraph, VertexMap]:
    """
    Quotient graph: block weights sum all cross weights over ordered member pairs.

    Args:
        g: Graph to collapse
        part: Partition of its vertices

    Returns:
        The quotient graph (blocks as vertices, intra-block weight as a loop)
        and the canonical projection

    Raises:
        ArgumentError: If the partition does not match g
    """
    part.validate_on(g)
    sums: Dict[Tuple[Hashable, Hashable], Fraction] = {}
    for x in g.vertices:
        lx = part.label_of(x)
        for y, w in g.neighbors(x).items():
            key = (lx, part.label_of(y))
            sums[key] = sums.get(key, Fraction(0)) + w

    order = {label: i for i, label in enumerate(part.labels)}
    weights = {
        (u, v): w for (u, v), w in sums.items() if order[u] <= order[v]
    }
    ambient = {}
    for label in part.labels:
        members = part.block(label)
        if any(g.is_truncated(x) for x in members):
            ambient[label] = sum((g.degree(x) for x in members), Fraction(0))
    q = WeightedGraph(part.labels, weights, ambient, name=f"{g.name}/~")
    return q, VertexMap({x: part.label_of(x) for x in g.vertices})


class CoveringWitness(BaseModel):
    """First (x, u) pair at which a covering identity fails."""

    model_config = {"frozen": True}

    x: str
    u: str
    lhs: str
    rhs: str


class CoveringReport(BaseModel):
    """Outcome of an exact covering, morphism or fiber-uniformity check."""

    model_config = {"frozen": True}

    passed: bool
    checked: int
    witness: Optional[CoveringWitness] = None

    def __bool__(self) -> bool:
        return self.passed


def _fraction_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _fiber_sums(src: WeightedGraph, f: VertexMap, x: Hashable) -> Dict[Hashable, Fraction]:
    """Σ_{z∈f⁻¹(u)} w̃(z, x) for every u that receives weight from x."""
    sums: Dict[Hashable, Fraction] = {}
    for z, w in src.neighbors(x).items():
        u = f(z)
        sums[u] = sums.get(u, Fraction(0)) + w
    return sums


def is_covering(
    src: WeightedGraph,
    dst: WeightedGraph,
    f: VertexMap,
    vertices: Optional[Iterable[Hashable]] = None,
) -> CoveringReport:
    """
    Check Σ_{z∈f⁻¹(u)} w̃(z, x) = w(u, f(x))/|f⁻¹(f(x))| exactly.

    Args:
        src: Covering graph
        dst: Base graph
        f: Vertex map from src onto dst
        vertices: Source vertices to check (default: all non-truncated ones)

    Returns:
        Report with the first violating pair, if any
    """
    f.require_onto(src, dst)
    if vertices is None:
        vertices = [x for x in src.vertices if not src.is_truncated(x)]
    checked = 0
    for x in vertices:
        v = f(x)
        size = f.fiber_size(v)
        sums = _fiber_sums(src, f, x)
        candidates = sorted(set(dst.neighbors(v)) | set(sums), key=dst.index)
        for u in candidates:
            lhs = sums.get(u, Fraction(0))
            rhs = dst.weight(u, v) / size
            checked += 1
            if lhs != rhs:
                return CoveringReport(
                    passed=False,
                    checked=checked,
                    witness=CoveringWitness(
                        x=_token(x), u=_token(u), lhs=_fraction_text(lhs), rhs=_fraction_text(rhs)
                    ),
                )
    return CoveringReport(passed=True, checked=checked)


def is_fiber_uniform(
    src: WeightedGraph,
    dst: WeightedGraph,
    f: VertexMap,
    vertices: Optional[Iterable[Hashable]] = None,
) -> CoveringReport:
    """
    Check that Σ_{z∈f⁻¹(u)} w̃(z, x) depends on x only through f(x).

    This is the defining covering condition; for morphisms it is equivalent to
    ``is_covering``.
    """
    f.require_onto(src, dst)
    if vertices is None:
        vertices = [x for x in src.vertices if not src.is_truncated(x)]
    reference: Dict[Hashable, Tuple[Hashable, Dict[Hashable, Fraction]]] = {}
    checked = 0
    for x in vertices:
        sums = _fiber_sums(src, f, x)
        v = f(x)
        if v not in reference:
            reference[v] = (x, sums)
            continue
        y, ref = reference[v]
        for u in sorted(set(ref) | set(sums), key=dst.index):
            checked += 1
            lhs, rhs = sums.get(u, Fraction(0)), ref.get(u, Fraction(0))
            if lhs != rhs:
                return CoveringReport(
                    passed=False,
                    checked=checked,
                    witness=CoveringWitness(
                        x=_token(x), u=_token(u), lhs=_fraction_text(lhs), rhs=_fraction_text(rhs)
                    ),
                )
    return CoveringReport(passed=True, checked=checked)


def is_morphism(src: WeightedGraph, dst: WeightedGraph, f: VertexMap) -> CoveringReport:
    """
    Check the morphism condition w(a, b) = Σ_{x∈f⁻¹(a), y∈f⁻¹(b)} w̃(x, y) on finite graphs.

    Args:
        src: Source graph
        dst: Target graph
        f: Vertex map

    Returns:
        Report with the first violating (a, b) pair, if any
    """
    f.require_onto(src, dst)
    sums: Dict[Tuple[Hashable, Hashable], Fraction] = {}
    for x in src.vertices:
        for y, w in src.neighbors(x).items():
            key = (f(x), f(y))
            sums[key] = sums.get(key, Fraction(0)) + w
    checked = 0
    pairs = set(sums) | {(u, v) for u, v, _ in dst.edges()} | {(v, u) for u, v, _ in dst.edges()}
    for a, b in sorted(pairs, key=lambda ab: (dst.index(ab[0]), dst.index(ab[1]))):
        checked += 1
        lhs, rhs = sums.get((a, b), Fraction(0)), dst.weight(a, b)
        if lhs != rhs:
            return CoveringReport(
                passed=False,
                checked=checked,
                witness=CoveringWitness(
                    x=_token(a), u=_token(b), lhs=_fraction_text(lhs), rhs=_fraction_text(rhs)
                ),
            )
    return CoveringReport(passed=True, checked=checked)


def degree_transfer_check(
    src: WeightedGraph,
    dst: WeightedGraph,
    f: VertexMap,
    vertices: Optional[Iterable[Hashable]] = None,
    ctx: Optional[ComputeContext] = None,
) -> bool:
    """Check d̃_x = d_{f(x)}/|f⁻¹(f(x))| exactly for every source vertex."""
    ctx = ctx or default_context()
    f.require_onto(src, dst)
    for x in vertices if vertices is not None else src.vertices:
        v = f(x)
        if src.degree(x) != dst.degree(v) / f.fiber_size(v):
            ctx.logger.debug(
                f"Degree transfer fails at {_token(x)}: {src.degree(x)} vs "
                f"{dst.degree(v)}/{f.fiber_size(v)}"
            )
            return False
    return True


def is_automorphism(g: WeightedGraph, phi: Callable[[Hashable], Hashable]) -> bool:
    """Check that phi permutes the vertices and preserves every weight and degree."""
    images = {}
    for v in g.vertices:
        image = phi(v)
        if image not in g:
            return False
        images[v] = image
    if len(set(images.values())) != len(g):
        return False
    for u, v, w in g.edges():
        if g.weight(images[u], images[v]) != w:
            return False
    return all(g.degree(images[v]) == g.degree(v) for v in g.vertices)


class MeqReport(BaseModel):
    """Outcome of the fiber-summed matrix-power identity check."""

    model_config = {"frozen": True}

    passed: bool
    k_max: int
    sources: int
    max_error: float
    exact: bool

    def __bool__(self) -> bool:
        return self.passed


def _safe_sources(
    src: WeightedGraph,
    dst: WeightedGraph,
    f: VertexMap,
    k_max: int,
    sources: Optional[Iterable[Hashable]],
) -> List[Hashable]:
    dist_src, dist_dst = src.boundary_distances, dst.boundary_distances

    def safe(y: Hashable) -> bool:
        return dist_src[y] >= k_max and dist_dst[f(y)] >= k_max

    if sources is None:
        chosen = [y for y in src.vertices if safe(y)]
        if not chosen:
            raise PreconditionError(f"no source vertex is {k_max} steps from the boundary")
        return chosen
    chosen = list(sources)
    for y in chosen:
        if not safe(y):
            raise PreconditionError(
                f"source {_token(y)} is within {k_max} steps of the boundary",
                details={"source": _token(y), "k_max": k_max},
            )
    return chosen


def meq_check(
    src: WeightedGraph,
    dst: WeightedGraph,
    f: VertexMap,
    k_max: int,
    sources: Optional[Iterable[Hashable]] = None,
    exact: bool = False,
    tol: float = 1e-12,
    ctx: Optional[ComputeContext] = None,
) -> MeqReport:
    """
    Check Σ_{x∈f⁻¹(u)} M̃^k(x, y) = sqrt(|f⁻¹(u)|/|f⁻¹(v)|) M^k(u, v), v = f(y), for k <= k_max.

    Args:
        src: Covering graph
        dst: Base graph
        f: Covering map
        k_max: Largest power checked
        sources: Source vertices y (default: every boundary-safe vertex)
        exact: Compare in Q[sqrt2] instead of floating point
        tol: Floating-point tolerance
        ctx: Compute context

    Returns:
        Report with the largest observed discrepancy

    Raises:
        PreconditionError: If a source lies within k_max steps of a boundary
    """
    ctx = ctx or default_context()
    f.require_onto(src, dst)
    chosen = _safe_sources(src, dst, f, k_max, sources)
    ctx.logger.debug(f"meq_check: {len(chosen)} sources, k <= {k_max}, exact={exact}")
    if exact:
        ok = all(_meq_exact_source(src, dst, f, y, k_max) for y in chosen)
        return MeqReport(passed=ok, k_max=k_max, sources=len(chosen), max_error=0.0 if ok else math.inf, exact=True)

    m_src, m_dst = src.m_matrix(sparse=True), dst.m_matrix(sparse=True)
    collapse = sp.csr_matrix(
        (np.ones(len(src)), ([dst.index(f(x)) for x in src.vertices], np.arange(len(src)))),
        shape=(len(dst), len(src)),
    )
    fiber = np.array([f.fiber_size(u) for u in dst.vertices], dtype=float)
    worst = 0.0
    for y in chosen:
        v = f(y)
        scale = np.sqrt(fiber / f.fiber_size(v))
        vec_src = np.zeros(len(src))
        vec_src[src.index(y)] = 1.0
        vec_dst = np.zeros(len(dst))
        vec_dst[dst.index(v)] = 1.0
        for k in range(k_max + 1):
            if k:
                vec_src = m_src @ vec_src
                vec_dst = m_dst @ vec_dst
            worst = max(worst, float(np.max(np.abs(collapse @ vec_src - scale * vec_dst))))
    return MeqReport(passed=worst <= tol, k_max=k_max, sources=len(chosen), max_error=worst, exact=False)


def _propagate_exact(g: WeightedGraph, vec: Dict[Hashable, QSqrt2]) -> Dict[Hashable, QSqrt2]:
    out: Dict[Hashable, QSqrt2] = {}
    for x, value in vec.items():
        for z in g.neighbors(x):
            out[z] = out.get(z, QSqrt2(0)) + g.m_entry_exact(z, x) * value
    return out


def _meq_exact_source(src: WeightedGraph, dst: WeightedGraph, f: VertexMap, y: Hashable, k_max: int) -> bool:
    v = f(y)
    vec_src: Dict[Hashable, QSqrt2] = {y: QSqrt2(1)}
    vec_dst: Dict[Hashable, QSqrt2] = {v: QSqrt2(1)}
    for k in range(k_max + 1):
        if k:
            vec_src = _propagate_exact(src, vec_src)
            vec_dst = _propagate_exact(dst, vec_dst)
        collapsed: Dict[Hashable, QSqrt2] = {}
        for x, value in vec_src.items():
            collapsed[f(x)] = collapsed.get(f(x), QSqrt2(0)) + value
        for u in set(collapsed) | set(vec_dst):
            ratio = QSqrt2.sqrt_of(Fraction(f.fiber_size(u), f.fiber_size(v)))
            if collapsed.get(u, QSqrt2(0)) != ratio * vec_dst.get(u, QSqrt2(0)):
                return False
    return True


class HeatSeriesResult(BaseModel):
    """Truncated heat series h_t(·, x) on a finite graph with its Poisson tail bound."""

    model_config = {"frozen": True, "arbitrary_types_allowed": True}

    graph: WeightedGraph
    source: Any
    t: float
    terms: int
    values: np.ndarray
    tail_bound: float

    def __repr__(self) -> str:
        return (
            f"HeatSeriesResult(source={_token(self.source)}, t={self.t}, "
            f"terms={self.terms}, tail_bound={self.tail_bound:.3e})"
        )

    def at(self, y: Hashable) -> float:
        return float(self.values[self.graph.index(y)])

    def is_exact(self, y: Hashable) -> bool:
        """True when no path of at most ``terms`` steps from the source to y leaves the graph."""
        dist = self.graph.boundary_distances
        return self.terms < dist[self.source] + dist[y] + 2

    def exact_at(self, y: Hashable) -> float:
        """Value at y, refusing read-outs contaminated by the truncation boundary."""
        if not self.is_exact(y):
            raise PreconditionError(
                f"heat series from {_token(self.source)} is not exact at {_token(y)}",
                details={"terms": self.terms},
            )
        return self.at(y)


def poisson_tail(t: float, terms: int) -> float:
    """e^{−t} Σ_{k>terms} t^k/k!, the Poisson upper tail."""
    return float(gammainc(terms + 1, t)) if t > 0 else 0.0


def heat_series(
    g: WeightedGraph,
    x: Hashable,
    t: float,
    terms: int,
    ctx: Optional[ComputeContext] = None,
) -> HeatSeriesResult:
    """
    Evaluate e^{−t} Σ_{k<=terms} (t^k/k!) M^k(·, x).

    Args:
        g: Graph (possibly a truncation with declared ambient degrees)
        x: Source vertex
        t: Time, nonnegative
        terms: Highest power of M included
        ctx: Compute context

    Returns:
        Column of the truncated heat kernel with the tail bound

    Raises:
        ArgumentError: If t or terms is negative or x is unknown
    """
    ctx = ctx or default_context()
    if t < 0:
        raise ArgumentError(f"heat time must be nonnegative, got {t}")
    if terms < 0:
        raise ArgumentError(f"number of terms must be nonnegative, got {terms}")
    m = g.m_matrix(sparse=True)
    vec = np.zeros(len(g))
    vec[g.index(x)] = 1.0
    weight = math.exp(-t)
    acc = weight * vec
    for k in range(1, terms + 1):
        vec = m @ vec
        weight *= t / k
        acc = acc + weight * vec
    tail = poisson_tail(t, terms)
    ctx.logger.debug(f"heat_series on {g!r} from {_token(x)}: t={t}, terms={terms}, tail={tail:.3e}")
    return HeatSeriesResult(graph=g, source=x, t=t, terms=terms, values=acc, tail_bound=tail)


def to_edge_lines(g: WeightedGraph) -> List[str]:
    """Serialize edges as ``u v num/den`` lines, loops written once."""
    return [f"{_token(u)} {_token(v)} {_fraction_text(w)}" for u, v, w in g.edges()]


def from_edge_lines(
    lines: Iterable[str],
    parse_vertex: Callable[[str], Hashable] = int,
    ambient_degrees: Optional[Mapping[Hashable, Rational]] = None,
    name: str = "",
) -> WeightedGraph:
    """
    Parse the ``u v num/den`` edge format; blank lines and ``#`` comments are skipped.

    Raises:
        ArgumentError: If a line is malformed
    """
    vertices: Dict[Hashable, None] = {}
    weights: Dict[Tuple[Hashable, Hashable], Fraction] = {}
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if len(parts) != 3:
            raise ArgumentError(f"line {lineno}: expected 'u v w', got {text!r}")
        try:
            u, v, w = parse_vertex(parts[0]), parse_vertex(parts[1]), Fraction(parts[2])
        except ValueError as e:
            raise ArgumentError(f"line {lineno}: {e}")
        vertices.setdefault(u)
        vertices.setdefault(v)
        weights[(u, v)] = w
    return WeightedGraph(list(vertices), weights, ambient_degrees, name=name)
