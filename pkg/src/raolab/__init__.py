"""Exact computations on Hartshorne-Rao modules of space curves."""

__version__ = "0.1.0"
