"""Mapping-class words, M-fibration models and their local numerics."""

__version__ = "0.1.0"
