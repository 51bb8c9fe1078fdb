"""Exact computations with Schur+1 sigma-groups of odd prime order.

The package enumerates finite p-groups by power-commutator presentation,
classifies them with respect to a generator-inverting automorphism, and
evaluates the relator-tuple measures on the p-group descendant tree.
"""
__version__ = "0.1.0"
