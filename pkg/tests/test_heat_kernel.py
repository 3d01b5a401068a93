"""Tests for the heat kernel of the modular group."""

import math
from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError

from modheat.core import ArgumentError, PrefactorReading, SpectralComponent
from modheat.graphs import heat_series
from modheat.groups import IDENTITY, word
from modheat.spectral import (
    HeatKernelValue,
    SpectrumSet,
    adjudicate_prefactor,
    coeff_alpha,
    coeff_beta,
    coeff_gamma,
    gamma_oracle_values,
    kernel_gamma,
    kernel_gamma_batch,
    kernel_on_gamma,
    kernel_transfer,
    line_oracle_values,
    mass_sum,
    prefactor,
    spectrum,
)
from modheat.spectral.heat_kernel import gamma_oracle_terms

TIMES = [0.5, 1.0, 2.0, 5.0]
NS = list(range(-8, 9))


class TestCoefficients:
    """Test the point-mass and density coefficients."""

    def test_alpha(self):
        """Test the weight of 3/4."""
        assert coeff_alpha(0) == Fraction(1, 6)
        assert coeff_alpha(1) == Fraction(-1, 12)
        assert coeff_alpha(-1) == Fraction(1, 6)
        assert coeff_alpha(-3) == Fraction(-1, 6)

    def test_beta(self):
        """Test the weight of 7/4."""
        assert coeff_beta(0) == Fraction(1, 6)
        assert coeff_beta(1) == Fraction(-1, 12)
        assert coeff_beta(2) == Fraction(1, 12)
        assert coeff_beta(-1) == Fraction(-1, 6)

    def test_prefactor_readings(self):
        """Test that the readings agree for n >= −1 and differ from n = −2."""
        for n in range(-1, 12):
            assert math.isclose(
                prefactor(n, PrefactorReading.PRINTED), prefactor(n, PrefactorReading.FIBER)
            )
        assert math.isclose(prefactor(-2, PrefactorReading.PRINTED), math.sqrt(2))
        assert math.isclose(prefactor(-2, PrefactorReading.FIBER), 1 / math.sqrt(2))

    def test_gamma_values(self):
        """Test the density at s = 0 and s = π/2."""
        for sign in (1, -1):
            assert coeff_gamma(0, sign, 0.0) == 0.0
            assert math.isclose(coeff_gamma(0, sign, math.pi / 2), 4 / (9 * math.pi))
            assert abs(coeff_gamma(3, sign, math.pi)) < 1e-12

    def test_gamma_array(self):
        """Test vectorized evaluation."""
        s = np.linspace(0.0, math.pi, 5)
        values = coeff_gamma(2, 1, s)
        assert values.shape == (5,)
        assert values[2] == pytest.approx(coeff_gamma(2, 1, s[2]))

    def test_gamma_arguments(self):
        """Test invalid sign and angle."""
        with pytest.raises(ArgumentError):
            coeff_gamma(0, 2, 1.0)
        with pytest.raises(ArgumentError):
            coeff_gamma(0, 1, 4.0)


class TestClosedForm:
    """Test the closed-form kernel against both routes and both oracles."""

    def test_initial_condition(self):
        """Test K_0 = δ_e."""
        for v in kernel_gamma_batch(0.0, range(-12, 13), with_transfer=False):
            assert abs(v.value - (1.0 if v.n == 0 else 0.0)) < 1e-9

    @pytest.mark.parametrize("t", TIMES)
    def test_transfer_route(self, t):
        """Test closed form = projected kernel carried up from the line."""
        for v in kernel_gamma_batch(t, NS):
            assert abs(v.value - v.transfer_value) < 1e-8

    @pytest.mark.parametrize("t", TIMES)
    def test_line_oracle(self, t):
        """Test closed form against the truncated series on the line window."""
        oracle = line_oracle_values(t, NS)
        for v in kernel_gamma_batch(t, NS, with_transfer=False):
            assert abs(v.value - oracle[v.n]) < 1e-8

    @pytest.mark.parametrize("t", TIMES)
    def test_ball_oracle(self, t, small_ball):
        """Test closed form against the truncated series on the Cayley ball."""
        oracle = gamma_oracle_values(t, NS, graph=small_ball)
        for v in kernel_gamma_batch(t, NS, with_transfer=False):
            assert abs(v.value - oracle[v.n]) < 1e-8

    def test_single_value(self):
        """Test the scalar entry points agree with the batch."""
        value = kernel_gamma(1.0, -2)
        assert value.reading is PrefactorReading.FIBER
        assert value.quad_error >= 0.0
        assert abs(value.value - kernel_transfer(1.0, -2)) < 1e-8
        assert kernel_on_gamma(1.0, word("ab")) == value.value

    def test_positive(self):
        """Test K_t(n) > 0 where the kernel is well above quadrature noise."""
        for t in (2.0, 5.0):
            assert all(v.value > 0 for v in kernel_gamma_batch(t, range(-4, 5), with_transfer=False))

    def test_decreasing_at_identity(self):
        """Test that K_t(0) decreases in t."""
        values = [kernel_gamma(t, 0).value for t in [0.5, 1.0, 2.0, 5.0, 10.0]]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_long_time(self):
        """Test that e^{λ0 t} K_t(0) stays below 1 and decays slowly."""
        lambda0 = spectrum().lambda0
        scaled = [math.exp(lambda0 * t) * kernel_gamma(t, 0).value for t in range(10, 51, 10)]
        assert all(0 < v < 1 for v in scaled)
        assert 0.02 < scaled[-1] / scaled[0] < 1

    def test_negative_time(self):
        """Test that negative times are refused."""
        with pytest.raises(ArgumentError):
            kernel_gamma(-1.0, 0)


class TestInverseSymmetry:
    """Test which fibers share a kernel value."""

    def test_even_fibers_are_inverses(self, small_ball):
        """Test K_t(2) = K_t(-2), since fiber(-2) is the set of inverses of fiber(2)."""
        series = heat_series(small_ball, IDENTITY, 1.0, 20)
        assert abs(series.exact_at(word("ba")) - series.exact_at(word("ac"))) < 1e-14
        assert abs(kernel_gamma(1.0, 2).value - kernel_gamma(1.0, -2).value) < 1e-8

    def test_first_fibers_differ(self, small_ball):
        """Test that K_t(1) and K_t(-1) differ; both fibers are closed under inversion."""
        series = heat_series(small_ball, IDENTITY, 1.0, 20)
        assert series.exact_at(word("a")) - series.exact_at(word("b")) > 0.01
        assert kernel_gamma(1.0, -1).value - kernel_gamma(1.0, 1).value > 0.01


class TestMass:
    """Test conservation of heat."""

    @pytest.mark.parametrize("t", TIMES)
    def test_mass_is_one(self, t):
        """Test Σ_n |fiber(n)| K_t(n) = 1."""
        report = mass_sum(t)
        assert report.radius == 70
        assert abs(report.total - 1.0) < 1e-6


class TestAdjudication:
    """Test the choice of prefactor for negative n."""

    def test_oracle_terms(self):
        """Test the term count that keeps ball read-outs exact."""
        assert gamma_oracle_terms(16, 8) == 25
        assert gamma_oracle_terms(3, 8) == 0
        assert gamma_oracle_terms(80, 0) == 65

    def test_fiber_reading_wins(self, small_ball):
        """Test that only the fiber reading matches the ball oracle."""
        report = adjudicate_prefactor(t_values=TIMES, graph=small_ball)
        assert report.verdict is PrefactorReading.FIBER
        assert report.consistent == [PrefactorReading.FIBER]
        assert report.max_error[PrefactorReading.FIBER] <= 1e-8
        assert report.max_error[PrefactorReading.PRINTED] > 1e-3
        assert len(report.rows) == len(TIMES) * 8

    def test_readings_agree_at_minus_one(self, small_ball):
        """Test that n = −1 cannot separate the readings."""
        report = adjudicate_prefactor(t_values=[1.0], ns=[-1], graph=small_ball)
        assert report.verdict is None
        assert set(report.consistent) == set(PrefactorReading)

    @pytest.mark.slow
    def test_full_radius(self):
        """Test the verdict on the radius-24 ball."""
        report = adjudicate_prefactor()
        assert report.verdict is PrefactorReading.FIBER


class TestSpectrum:
    """Test the spectrum of the modular-group Laplacian."""

    def test_components(self):
        """Test membership in bands and points."""
        s = spectrum()
        assert s.component(0.75) is SpectralComponent.POINT_THREE_QUARTERS
        assert s.component(1.75) is SpectralComponent.POINT_SEVEN_QUARTERS
        assert s.component(0.5) is SpectralComponent.LOWER_BAND
        assert s.component(1.2) is SpectralComponent.UPPER_BAND
        assert s.component(0.70) is None
        assert not s.contains(0.0)
        assert not s.contains(1.8)

    def test_band_edges(self):
        """Test the inner band edges 7/4 − λ1 and 7/4 − λ0."""
        s = spectrum()
        (a, b), (c, d) = s.intervals
        assert a == s.lambda0
        assert abs(b - 0.68246) < 1e-5
        assert c == s.lambda1
        assert abs(d - 1.73766) < 1e-5
        assert s.points == [0.75, 1.75]

    def test_overlap_rejected(self):
        """Test that overlapping components are refused."""
        with pytest.raises(ValidationError):
            SpectrumSet(lambda0=0.5, lambda1=1.0)


class TestValueModel:
    """Test the kernel value record."""

    def test_negative_value_rejected(self):
        """Test that clearly negative values are refused."""
        with pytest.raises(ValidationError):
            HeatKernelValue(t=1.0, n=0, value=-1.0, quad_error=0.0)

    def test_with_oracle(self):
        """Test that attaching an oracle records the discrepancy."""
        v = HeatKernelValue(t=1.0, n=0, value=0.5, quad_error=0.0).with_oracle(0.25)
        assert v.oracle_value == 0.25
        assert v.discrepancy == 0.25
