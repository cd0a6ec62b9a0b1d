"""Exact-arithmetic workbench for the V(1)-homotopy of Q(2) at the prime 3."""

__version__ = "0.1.0"
