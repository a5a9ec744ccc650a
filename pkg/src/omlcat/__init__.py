"""Finite workbench for orthomodular lattices, Galois connections, Foulis
semigroups and dagger kernel categories."""

__version__ = "0.1.0"
