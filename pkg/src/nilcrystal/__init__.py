"""Exact computational engine for Weyl-word combinatorics, nilpotent
preprojective-algebra modules, and their matching crystal-datum model."""

__version__ = "0.1.0"
