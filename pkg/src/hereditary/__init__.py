"""Hereditary species, their incidence comodule bialgebras, and exhaustive checkers."""

from .species import GRAPHS, SETS, HereditarySpecies, HStructure, get_species
from .linear import LinComb

__all__ = ["GRAPHS", "SETS", "HereditarySpecies", "HStructure", "LinComb", "get_species"]
__version__ = "0.1.0"
