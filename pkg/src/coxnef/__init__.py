"""Exact tools for Cox ring degrees of rational surfaces with nef anticanonical class."""

from .lattice import DivisorClass, PicardLattice, pairing, riemann_roch, square, validate_lattice
from .surface import SurfaceModel, negative_curves, preset, preset_names

__all__ = [
    "DivisorClass",
    "PicardLattice",
    "SurfaceModel",
    "negative_curves",
    "pairing",
    "preset",
    "preset_names",
    "riemann_roch",
    "square",
    "validate_lattice",
]

__version__ = "0.1.0"
