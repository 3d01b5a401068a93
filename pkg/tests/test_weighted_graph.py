"""Tests for weighted graphs, quotients, coverings and the heat series."""

from fractions import Fraction
from unittest.mock import MagicMock

import numpy as np
import pytest

from modheat.core import (
    ArgumentError,
    ComputeContext,
    InvariantViolationError,
    PreconditionError,
    QSqrt2,
    RunConfig,
    SQRT2,
)
from modheat.graphs import (
    LineWindow,
    Partition,
    VertexMap,
    WeightedGraph,
    degree_transfer_check,
    fiber_partition,
    from_edge_lines,
    gamma_ball,
    heat_series,
    is_automorphism,
    is_covering,
    is_fiber_uniform,
    is_morphism,
    line_degree,
    line_weight,
    meq_check,
    poisson_tail,
    projection_map,
    quotient,
    reflection_partition,
    to_edge_lines,
    window_matrix_exact,
)
from modheat.groups import IDENTITY, fiber, fiber_size, pi_project, sphere_size, swap_b, word


def triangle() -> WeightedGraph:
    return WeightedGraph([0, 1, 2], {(0, 1): 1, (1, 2): 2, (0, 2): 3, (2, 2): 1}, name="triangle")


def square() -> WeightedGraph:
    return WeightedGraph([0, 1, 2, 3], {(0, 1): 1, (1, 2): 1, (2, 3): 1, (3, 0): 1}, name="square")


def broken_weight(i: int, j: int) -> int:
    """Line weights with w(0, 1) raised by one."""
    return line_weight(i, j) + (1 if (i, j) == (0, 1) else 0)


class TestConstruction:
    """Test validation of weighted graphs."""

    def test_degrees(self):
        """Test degrees count the loop once."""
        g = triangle()
        assert g.degree(0) == 4
        assert g.degree(1) == 3
        assert g.degree(2) == 6
        assert g.weight(2, 0) == 3
        assert g.weight(0, 0) == 0

    def test_repeated_vertex(self):
        """Test that repeated ids are refused."""
        with pytest.raises(ArgumentError):
            WeightedGraph([0, 0], {(0, 0): 1})

    def test_unknown_vertex_in_weights(self):
        """Test that weights must name vertices."""
        with pytest.raises(ArgumentError):
            WeightedGraph([0, 1], {(0, 2): 1})

    def test_negative_weight(self):
        """Test that negative weights are refused."""
        with pytest.raises(InvariantViolationError):
            WeightedGraph([0, 1], {(0, 1): -1})

    def test_asymmetric_weight(self):
        """Test that the two orientations must agree."""
        with pytest.raises(InvariantViolationError):
            WeightedGraph([0, 1], {(0, 1): 1, (1, 0): 2})

    def test_zero_degree(self):
        """Test that isolated vertices are refused."""
        with pytest.raises(InvariantViolationError):
            WeightedGraph([0, 1, 2], {(0, 1): 1})

    def test_disconnected(self):
        """Test that disconnected graphs are refused."""
        with pytest.raises(InvariantViolationError):
            WeightedGraph([0, 1, 2, 3], {(0, 1): 1, (2, 3): 1})

    def test_ambient_degree_below_sum(self):
        """Test that a declared degree cannot undercut the weights present."""
        with pytest.raises(InvariantViolationError):
            WeightedGraph([0, 1], {(0, 1): 2}, {0: 1})

    def test_unknown_vertex_query(self):
        """Test lookups of missing vertices."""
        with pytest.raises(ArgumentError):
            triangle().degree(99)


class TestMatrices:
    """Test Laplacians and M."""

    def test_normalized_from_combinatorial(self):
        """Test L = D^{-1/2} (D − W) D^{-1/2}."""
        g = triangle()
        s = np.diag([1.0 / np.sqrt(float(g.degree(v))) for v in g.vertices])
        assert np.allclose(g.normalized_laplacian(), s @ g.laplacian() @ s, atol=1e-15)
        assert np.allclose(g.m_matrix(), np.eye(3) - g.normalized_laplacian(), atol=1e-15)

    def test_sparse_matches_dense(self):
        """Test that both storage forms agree."""
        g = triangle()
        assert np.allclose(g.m_matrix(sparse=True).toarray(), g.m_matrix())

    def test_cayley_m_entries(self):
        """Test M(x, xa) = 1/2 and M(x, xb) = 1/4 on the Cayley ball."""
        g = gamma_ball(3)
        assert g.m_entry_exact(IDENTITY, word("a")) == QSqrt2(Fraction(1, 2))
        assert g.m_entry_exact(IDENTITY, word("b")) == QSqrt2(Fraction(1, 4))
        assert g.m_entry_exact(IDENTITY, word("ab")) == 0

    def test_exact_line_laplacian(self):
        """Test the exact Laplacian of a line window against its closed-form entries."""
        g = LineWindow.symmetric(3).graph()
        assert g.normalized_laplacian_exact() == window_matrix_exact(-3, 3)
        assert g.m_entry_exact(0, 1) == SQRT2 / 4


class TestCayleyBall:
    """Test the truncated Cayley graph of the modular group."""

    def test_regular_with_boundary(self, cover_ball):
        """Test that every vertex has degree 4 and the outer sphere is the boundary."""
        assert len(cover_ball) == 442
        assert all(cover_ball.degree(v) == 4 for v in cover_ball.vertices)
        assert len(cover_ball.boundary) == sphere_size(12)
        assert all(len(w) == 12 for w in cover_ball.boundary)

    def test_reflection_is_automorphism(self, cover_ball):
        """Test that exchanging b and b² preserves the ball."""
        assert is_automorphism(cover_ball, swap_b)
        assert is_automorphism(cover_ball, lambda w: w)

    def test_non_automorphism(self, cover_ball):
        """Test that swapping e and a is detected."""
        e, a = IDENTITY, word("a")
        assert not is_automorphism(cover_ball, lambda w: a if w == e else e if w == a else w)


class TestQuotient:
    """Test quotients by partitions."""

    def test_fiber_quotient_is_line(self, cover_ball, cover_line):
        """Test that collapsing fibers reproduces the weighted line."""
        q, f = quotient(cover_ball, fiber_partition(cover_ball))
        assert list(q.vertices) == list(range(-12, 13))
        for n in range(-12, 13):
            assert q.degree(n) == line_degree(n)
            assert q.weight(n, n) == line_weight(n, n)
            if n < 12:
                assert q.weight(n, n + 1) == line_weight(n, n + 1)
        assert f(word("bab")) == 3
        assert q.boundary == [-12, 12]

    def test_loop_from_intra_block_edge(self, cover_ball):
        """Test that the edge from b to b² becomes a loop of weight 2 at 1."""
        q, _ = quotient(cover_ball, fiber_partition(cover_ball))
        assert q.weight(1, 1) == 2

    def test_square_quotient(self):
        """Test block weights sum over ordered member pairs."""
        q, f = quotient(square(), Partition({"even": [0, 2], "odd": [1, 3]}))
        assert q.weight("even", "odd") == 4
        assert q.degree("even") == 4
        assert f(3) == "odd"

    def test_partition_errors(self):
        """Test overlapping, empty and mismatched partitions."""
        with pytest.raises(ArgumentError):
            Partition({"x": [0], "y": [0]})
        with pytest.raises(ArgumentError):
            Partition({"x": []})
        with pytest.raises(ArgumentError):
            quotient(square(), Partition({"x": [0, 1, 2]}))
        with pytest.raises(ArgumentError):
            quotient(square(), Partition({"x": [0, 1, 2, 3, 4]}))


class TestCovering:
    """Test the covering, morphism and degree-transfer checks."""

    def test_ball_covers_line(self, cover_ball, cover_line):
        """Test that the signed-length projection is a covering."""
        f = projection_map(cover_ball)
        report = is_covering(cover_ball, cover_line, f)
        assert report.passed
        assert report.checked > 0
        assert report.witness is None

    @pytest.mark.parametrize("radius", range(1, 15))
    def test_every_radius(self, radius):
        """Test the covering for each ball radius up to 14."""
        ball = gamma_ball(radius)
        line = LineWindow.symmetric(radius).graph()
        report = is_covering(ball, line, projection_map(ball))
        assert report.passed
        assert report.checked > 0

    def test_fiber_uniform(self, cover_ball, cover_line):
        """Test that fiber sums depend only on the fiber."""
        assert is_fiber_uniform(cover_ball, cover_line, projection_map(cover_ball))

    def test_degree_transfer(self, cover_ball, cover_line):
        """Test d̃_x = d_{f(x)}/|f⁻¹(f(x))|, boundary included."""
        assert degree_transfer_check(cover_ball, cover_line, projection_map(cover_ball))

    def test_degree_transfer_failure_logs_to_context(self, cover_ball):
        """Test that a failing degree transfer is reported through the given logger."""
        broken = LineWindow.symmetric(12).graph(weight=broken_weight)
        ctx = ComputeContext(RunConfig(), MagicMock())
        assert not degree_transfer_check(cover_ball, broken, projection_map(cover_ball), ctx=ctx)
        ctx.logger.debug.assert_called_once()
        assert "Degree transfer fails" in ctx.logger.debug.call_args[0][0]

    def test_broken_line_gives_witness(self, cover_ball):
        """Test that a perturbed weight is reported at the first violating pair."""
        broken = LineWindow.symmetric(12).graph(weight=broken_weight)
        report = is_covering(cover_ball, broken, projection_map(cover_ball))
        assert not report
        assert report.witness.x == "e"
        assert report.witness.u == "1"
        assert report.witness.lhs == "2/1"
        assert report.witness.rhs == "3/1"

    def test_reflection_quotient_is_covering(self, cover_ball):
        """Test that collapsing reflection orbits is a covering."""
        q, f = quotient(cover_ball, reflection_partition(cover_ball))
        assert is_covering(cover_ball, q, f)

    def test_morphism(self):
        """Test the morphism condition on a finite quotient."""
        g = square()
        q, f = quotient(g, Partition({"even": [0, 2], "odd": [1, 3]}))
        assert is_morphism(g, q, f)
        assert is_covering(g, q, f)

    def test_morphism_failure(self):
        """Test a target with the wrong block weight."""
        g = square()
        target = WeightedGraph(["even", "odd"], {("even", "odd"): 3})
        f = VertexMap({0: "even", 2: "even", 1: "odd", 3: "odd"})
        report = is_morphism(g, target, f)
        assert not report.passed
        assert (report.witness.x, report.witness.u) == ("even", "odd")
        assert (report.witness.lhs, report.witness.rhs) == ("4/1", "3/1")

    def test_map_must_be_onto(self):
        """Test that partial or non-surjective maps are refused."""
        g = square()
        target = WeightedGraph(["even", "odd"], {("even", "odd"): 4})
        with pytest.raises(ArgumentError):
            is_covering(g, target, VertexMap({0: "even", 1: "odd", 2: "even"}))
        with pytest.raises(ArgumentError):
            is_covering(g, target, VertexMap({v: "even" for v in range(4)}))


class TestMatrixPowers:
    """Test the fiber-summed identity for powers of M."""

    def test_float(self, cover_ball, cover_line):
        """Test powers up to 4 in floating point from every safe source."""
        report = meq_check(cover_ball, cover_line, projection_map(cover_ball), 4)
        assert report.passed
        assert report.max_error <= 1e-12
        assert report.sources > 100

    def test_exact(self, cover_ball, cover_line):
        """Test the identity in Q[sqrt2] from two sources."""
        report = meq_check(
            cover_ball,
            cover_line,
            projection_map(cover_ball),
            4,
            sources=[IDENTITY, word("ab")],
            exact=True,
        )
        assert report.passed
        assert report.exact

    def test_source_near_boundary(self, cover_ball, cover_line):
        """Test that sources the boundary can reach are refused."""
        with pytest.raises(PreconditionError):
            meq_check(cover_ball, cover_line, projection_map(cover_ball), 4, sources=[fiber(11)[0]])


class TestHeatSeries:
    """Test the truncated heat series."""

    def test_single_vertex(self):
        """Test that the series plus its tail is 1 when M = 1."""
        g = WeightedGraph([0], {(0, 0): 1})
        result = heat_series(g, 0, 1.0, 20)
        assert abs(result.at(0) + result.tail_bound - 1.0) < 1e-14

    def test_poisson_tail(self):
        """Test the tail against its closed form for small term counts."""
        assert abs(poisson_tail(1.0, 0) - (1.0 - np.exp(-1.0))) < 1e-14
        assert abs(poisson_tail(2.0, 1) - (1.0 - 3.0 * np.exp(-2.0))) < 1e-14
        assert poisson_tail(0.0, 3) == 0.0

    def test_initial_condition(self, small_ball):
        """Test h_0 is the indicator of the source."""
        result = heat_series(small_ball, IDENTITY, 0.0, 5)
        assert result.at(IDENTITY) == 1.0
        assert result.at(word("a")) == 0.0
        assert result.tail_bound == 0.0

    def test_semigroup(self, small_ball):
        """Test h_{1/2} * h_{1/2} = h_1 at an interior point."""
        ab = word("ab")
        half_e = heat_series(small_ball, IDENTITY, 0.5, 20)
        half_ab = heat_series(small_ball, ab, 0.5, 20)
        full = heat_series(small_ball, IDENTITY, 1.0, 30)
        assert abs(float(np.dot(half_e.values, half_ab.values)) - full.exact_at(ab)) < 1e-12

    def test_symmetric(self, small_ball):
        """Test h_t(e, ab) = h_t(ab, e)."""
        ab = word("ab")
        forward = heat_series(small_ball, IDENTITY, 1.0, 20).exact_at(ab)
        backward = heat_series(small_ball, ab, 1.0, 20).exact_at(IDENTITY)
        assert forward > 0.0
        assert abs(forward - backward) < 1e-13

    def test_nonnegative(self, small_ball):
        """Test that every entry of the series is nonnegative."""
        result = heat_series(small_ball, word("bab"), 2.0, 25)
        assert np.all(result.values >= 0.0)

    def test_mass(self, small_ball):
        """Test that the mass is 1 up to the tail while no walk can leave the ball."""
        result = heat_series(small_ball, IDENTITY, 1.0, 16)
        assert abs(float(np.sum(result.values)) - 1.0) <= result.tail_bound + 1e-12

    def test_fiber_sums_match_line(self, small_ball):
        """Test that fiber sums of the ball series give the line series, rescaled by fiber sizes."""
        source = word("bab")
        v = pi_project(source)
        ball_series = heat_series(small_ball, source, 1.0, 20)
        line_series = heat_series(LineWindow.symmetric(16).graph(), v, 1.0, 20)
        for u in range(-4, 5):
            lhs = sum(ball_series.exact_at(x) for x in fiber(u))
            rhs = np.sqrt(fiber_size(u) / fiber_size(v)) * line_series.exact_at(u)
            assert abs(lhs - rhs) < 1e-12, u

    def test_contaminated_readout(self):
        """Test that read-outs the boundary can reach are refused."""
        g = gamma_ball(4)
        result = heat_series(g, IDENTITY, 1.0, 20)
        assert not result.is_exact(fiber(4)[0])
        with pytest.raises(PreconditionError):
            result.exact_at(fiber(4)[0])

    def test_invalid_arguments(self):
        """Test negative time and term counts."""
        with pytest.raises(ArgumentError):
            heat_series(triangle(), 0, -1.0, 5)
        with pytest.raises(ArgumentError):
            heat_series(triangle(), 0, 1.0, -1)


class TestEdgeFormat:
    """Test the u v num/den text form."""

    def test_lines(self):
        """Test edge lines of a small graph and of a Cayley ball."""
        assert to_edge_lines(triangle()) == ["0 1 1/1", "0 2 3/1", "1 2 2/1", "2 2 1/1"]
        assert "e a 2/1" in to_edge_lines(gamma_ball(2))

    def test_parse(self):
        """Test that comments and blank lines are skipped."""
        g = from_edge_lines(["# triangle", "0 1 1", "", "1 2 2", "0 2 3/1", "2 2 1"])
        assert g.degree(2) == 6
        assert g.weight(0, 2) == 3

    def test_malformed(self):
        """Test malformed lines."""
        with pytest.raises(ArgumentError):
            from_edge_lines(["0 1"])
        with pytest.raises(ArgumentError):
            from_edge_lines(["0 1 x"])
