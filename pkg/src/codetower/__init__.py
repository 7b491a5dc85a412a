"""Codes, lattices and lattice-VOA character bookkeeping."""

__version__ = "0.1.0"
