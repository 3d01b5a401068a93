"""Version information for modheat."""

__version__ = "0.1.0"
