"""Exact enumeration of one-nodal rational curves in projective spaces."""

__version__ = "0.1.0"
