"""Tests for the spectral resolution of the projected line Laplacian."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from modheat.core import ArgumentError
from modheat.graphs import apply_projected_laplacian, mirror_index
from modheat.spectral import (
    DISCRETE_EIGENPAIRS,
    DiscreteEigenpair,
    GeneralizedEigenfunction,
    SpectralWeight,
    band_edges,
    completeness_entry,
    completeness_matrix,
    eval_discrete,
    kernel_pr,
    kernel_pr_batch,
    lambda_of,
    line_oracle,
    r_of,
    spectral_weight,
)

GRID = np.linspace(0.0, math.pi, 101)


class TestSpectralFunctions:
    """Test R_x, the eigenvalue branches and the spectral weights."""

    def test_r_decreasing(self):
        """Test that R_x is strictly decreasing."""
        assert np.all(np.diff(r_of(GRID)) < 0)
        assert math.isclose(float(r_of(0.0)), math.sqrt(25 / 16 + math.sqrt(2)))

    def test_angle_range(self):
        """Test that angles outside [0, π] are refused."""
        with pytest.raises(ArgumentError):
            r_of(4.0)
        with pytest.raises(ArgumentError):
            lambda_of(1, -0.5)

    def test_weights_positive(self):
        """Test H_± > 0 on the whole interval."""
        for epsilon in (1, -1):
            assert np.all(spectral_weight(epsilon, GRID) > 0)
            assert np.allclose(SpectralWeight(epsilon=epsilon)(GRID), spectral_weight(epsilon, GRID))

    def test_invalid_sign(self):
        """Test that signs other than ±1 are refused."""
        with pytest.raises(ArgumentError):
            spectral_weight(0, 1.0)
        with pytest.raises(ValidationError):
            SpectralWeight(epsilon=2)

    def test_band_edges(self):
        """Test λ0 and λ1 against their closed forms and printed digits."""
        lambda0, lambda1 = band_edges()
        assert f"{lambda0:.7f}".startswith("0.01234")
        assert f"{lambda1:.7f}".startswith("1.0675")
        assert math.isclose(lambda0, 7 / 8 - 0.5 * math.sqrt(25 / 16 + math.sqrt(2)), abs_tol=1e-15)
        assert math.isclose(lambda1, 7 / 8 + 0.5 * math.sqrt(25 / 16 - math.sqrt(2)), abs_tol=1e-15)


class TestDiscreteSpectrum:
    """Test the eigenvalues 3/4 and 7/4."""

    def test_eigenvalues(self):
        """Test the two point eigenvalues."""
        assert [pair.eigenvalue for pair in DISCRETE_EIGENPAIRS] == [0.75, 1.75]

    def test_eigen_equation(self):
        """Test L f = λ f at every vertex of a wide range."""
        for pair in DISCRETE_EIGENPAIRS:
            for m in range(-30, 31):
                assert abs(apply_projected_laplacian(pair, m) - pair.eigenvalue * pair(m)) < 1e-12

    def test_values(self):
        """Test f(0) = −1/sqrt(6) and the mirror parity."""
        assert math.isclose(eval_discrete(1, 0), -1 / math.sqrt(6))
        for epsilon in (1, -1):
            for m in range(10):
                assert eval_discrete(epsilon, mirror_index(m)) == pytest.approx(epsilon * eval_discrete(epsilon, m))

    def test_orthonormal(self):
        """Test unit norm and orthogonality over a range wide enough for the decay."""
        ms = range(-90, 90)
        plus = np.array([eval_discrete(1, m) for m in ms])
        minus = np.array([eval_discrete(-1, m) for m in ms])
        assert abs(float(plus @ plus) - 1.0) < 1e-12
        assert abs(float(minus @ minus) - 1.0) < 1e-12
        assert abs(float(plus @ minus)) < 1e-12

    def test_invalid_sign(self):
        """Test the validator."""
        with pytest.raises(ValidationError):
            DiscreteEigenpair(epsilon=0)


class TestContinuousSpectrum:
    """Test the generalized eigenfunctions."""

    @pytest.mark.parametrize("x", [0.0, 0.4, 1.3, 2.2, math.pi])
    def test_eigen_equation(self, x):
        """Test L f = λ f for all sign choices."""
        for mu in (1, -1):
            for epsilon in (1, -1):
                f = GeneralizedEigenfunction(x=x, mu=mu, epsilon=epsilon)
                for m in range(-20, 21):
                    assert abs(apply_projected_laplacian(f, m) - f.eigenvalue * f(m)) < 1e-10

    def test_parity(self):
        """Test f(−m − 1) = ε f(m)."""
        f = GeneralizedEigenfunction(x=1.0, mu=1, epsilon=-1)
        for m in range(10):
            assert f(mirror_index(m)) == pytest.approx(-f(m))

    def test_angle_validated(self):
        """Test the angle validator."""
        with pytest.raises(ValidationError):
            GeneralizedEigenfunction(x=-0.1, mu=1, epsilon=1)


class TestResolution:
    """Test completeness and the projected heat kernel."""

    def test_completeness(self):
        """Test that the spectral measure resolves the identity."""
        matrix, _ = completeness_matrix(range(-3, 4))
        assert np.allclose(matrix, np.eye(7), atol=1e-8)
        assert abs(completeness_entry(5, 5) - 1.0) < 1e-8

    def test_initial_condition(self):
        """Test h_0(0, n) = δ."""
        for n in range(-4, 5):
            assert abs(kernel_pr(0.0, n).value - (1.0 if n == 0 else 0.0)) < 1e-9

    def test_symmetric(self):
        """Test h_t(m, n) = h_t(n, m)."""
        assert abs(kernel_pr(1.0, 2, m=-1).value - kernel_pr(1.0, -1, m=2).value) < 1e-12

    def test_batch_matches_single(self):
        """Test that the shared quadrature returns the single values."""
        values, _ = kernel_pr_batch(1.0, [-2, 0, 3])
        for n, value in zip([-2, 0, 3], values):
            assert abs(value - kernel_pr(1.0, n).value) < 1e-12

    @pytest.mark.parametrize("t", [0.5, 2.0])
    def test_line_oracle(self, t):
        """Test the spectral kernel against the truncated series on the line window."""
        series = line_oracle(t)
        for n in range(-6, 7):
            assert abs(kernel_pr(t, n).value - series.exact_at(n)) < 1e-8

    def test_negative_time(self):
        """Test that negative times are refused."""
        with pytest.raises(ArgumentError):
            kernel_pr(-1.0, 0)
