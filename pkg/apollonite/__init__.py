"""
Expose the public apollonite API.

"""

from .base_config import ApolloniteConfig, MissingConfigOptionException
from .exactmath import GaussInt, HalfGauss, RatGauss, RatSym2
from .latvec import Lattice2, QuadrupleVectors, VAPair, quadruple_vectors
from .odometer import (GlobalOdometer, PatternGrid, Rect, TileOdometer,
                       laplacian, odometer_for, tile_odometer_for)
from .packing import Circle, Quadruple, Window, enumerate_band
from .render import RenderFormat, RenderSpec, render
from .reports import CheckReport, ReportContainer
from .sandpile import ChipConfig, compare_patterns, stabilize
from .tiles import Tile, tile_for

__all__ = [
    "ApolloniteConfig",
    "MissingConfigOptionException",
    "GaussInt",
    "HalfGauss",
    "RatGauss",
    "RatSym2",
    "Lattice2",
    "QuadrupleVectors",
    "VAPair",
    "quadruple_vectors",
    "GlobalOdometer",
    "PatternGrid",
    "Rect",
    "TileOdometer",
    "laplacian",
    "odometer_for",
    "tile_odometer_for",
    "Circle",
    "Quadruple",
    "Window",
    "enumerate_band",
    "RenderFormat",
    "RenderSpec",
    "render",
    "CheckReport",
    "ReportContainer",
    "ChipConfig",
    "compare_patterns",
    "stabilize",
    "Tile",
    "tile_for",
]
