"""Exact-arithmetic workbench for the word Hopf algebras behind formal
multiple zeta values."""

__version__ = "0.1.0"
