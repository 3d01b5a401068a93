"""Shared test fixtures and configuration."""

import logging
import tempfile

import pytest

from modheat.core import ComputeContext, RunConfig
from modheat.graphs import LineWindow, gamma_ball

# Auto-load .env file for tests (MODHEAT_* overrides)
try:
    from dotenv import load_dotenv

    load_dotenv()  # Load .env file automatically
except ImportError:
    pass  # dotenv not available, use regular env vars

# Radius of the quick Cayley-ball oracle; the radius-24 ball is reserved for slow tests
SMALL_BALL_RADIUS = 16
COVER_RADIUS = 12


@pytest.fixture
def temp_dir():
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmp_dir:
        yield tmp_dir


@pytest.fixture
def ctx():
    """Compute context with default configuration and a test logger."""
    return ComputeContext(RunConfig(), logging.getLogger("modheat.tests"))


@pytest.fixture(scope="session")
def cover_ball():
    """Cayley ball of radius 12, compared with the line window [-12, 12]."""
    return gamma_ball(COVER_RADIUS)


@pytest.fixture(scope="session")
def cover_line():
    """Line window matching the cover ball."""
    return LineWindow.symmetric(COVER_RADIUS).graph()


@pytest.fixture(scope="session")
def small_ball():
    """Cayley ball of radius 16 (1786 words) for the quick oracle."""
    return gamma_ball(SMALL_BALL_RADIUS)
