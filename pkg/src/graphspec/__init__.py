"""Extremal linear combinations of graph adjacency eigenvalues."""
__version__ = "0.1.0"
