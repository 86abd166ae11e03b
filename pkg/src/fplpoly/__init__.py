"""Fully packed loop enumeration and exact polynomial formulas for A_X(m)."""

from . import codec, fpl_grid, lgv, region_fpl, zuber
from ._jit import backend
from .codec import Matching, compose, parse_matching

__version__ = "0.1.0"

__all__ = ["codec", "fpl_grid", "lgv", "region_fpl", "zuber", "backend",
           "Matching", "compose", "parse_matching"]
