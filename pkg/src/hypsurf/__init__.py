"""Numerical laboratory for hyperbolic surfaces given by Fenchel-Nielsen data."""

__version__ = "0.1.0"
