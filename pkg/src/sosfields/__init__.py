"""Sums of squares in rings of integers of totally real number fields."""

__version__ = "0.1.0"
