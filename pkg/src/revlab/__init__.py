"""Reversible Turing machine toolkit and logical-depth laboratory."""

__version__ = "0.1.0"
