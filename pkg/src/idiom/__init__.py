"""Finite modular lattices: interval sets, nuclei, allocations, decompositions and filtrations."""

from .errors import IdiomError
from .lattice import FiniteLattice, Interval, build_lattice, chain, product

__all__ = ["FiniteLattice", "IdiomError", "Interval", "build_lattice", "chain", "product"]
__version__ = "0.1.0"
