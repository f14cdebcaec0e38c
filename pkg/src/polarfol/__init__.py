"""Exact verification of codimension-two polar homogeneous foliations on
symmetric spaces of noncompact type."""

__version__ = "0.1.0"
