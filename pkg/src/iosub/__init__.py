"""IO-substitution over regular languages and factored Parikh images."""

__version__ = "0.1.0"
