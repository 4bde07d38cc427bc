"""Gruss - certified Grüss-type bounds for weighted sequences in normed spaces."""

__version__ = "1.0.0"
