#! /usr/bin/env python3
"""
Rendering of Laplacian patterns as text, binary PGM or PNG.

"""
from __future__ import annotations

import dataclasses
import enum
import io
import types
from typing import Dict, Mapping, Optional

import numpy as np
from PIL import Image

from .exactmath import GaussInt
from .odometer import PATTERN_VALUES, PatternGrid, Rect
from .tiles import Tile


# Gray levels of the Laplacian values: black cells for 1 down to white
# cells for -2.
DEFAULT_PALETTE: Mapping[int, int] = types.MappingProxyType(
    {1: 0, 0: 85, -1: 170, -2: 255})

DEFAULT_GLYPHS: Mapping[int, str] = types.MappingProxyType(
    {1: "#", 0: "+", -1: ".", -2: " "})

OUTLINE_GRAY = 128
OUTLINE_GLYPH = "o"


class RenderFormat(enum.Enum):
    """
    The output formats of the renderer.

    """
    ascii = enum.auto()
    pgm = enum.auto()
    png = enum.auto()


@dataclasses.dataclass(eq=True, frozen=True)
class RenderSpec:
    """
    How to draw a PatternGrid: gray levels and glyphs per Laplacian value,
    the output format and whether to mark the outline vertices.

    """
    __slots__ = ("palette", "glyphs", "format", "outline",)

    palette: Mapping[int, int]
    glyphs: Mapping[int, str]
    format: RenderFormat
    outline: bool

    def __post_init__(self):
        for name, table in (("palette", self.palette),
                            ("glyphs", self.glyphs)):
            missing = [v for v in PATTERN_VALUES if v not in table]
            if missing:
                raise ValueError(f"The {name} has no entry for Laplacian "
                                 f"values {missing}")
        for value, gray in self.palette.items():
            if not 0 <= gray <= 255:
                raise ValueError(f"Gray level {gray} for {value} is not "
                                 "in [0, 255]")

    @classmethod
    def default(cls, fmt: RenderFormat = RenderFormat.pgm,
                outline: bool = False,
                palette: Optional[Mapping[int, int]] = None) -> RenderSpec:
        return cls(palette if palette is not None else DEFAULT_PALETTE,
                   DEFAULT_GLYPHS, fmt, outline)


def _lookup(values: np.ndarray, table: Mapping[int, int]) -> np.ndarray:
    out = np.zeros(values.shape, dtype=np.uint8)
    seen = np.zeros(values.shape, dtype=bool)
    for value, level in table.items():
        hit = values == value
        out[hit] = level
        seen |= hit
    if not seen.all():
        bad = sorted(set(int(v) for v in values[~seen]))
        raise ValueError(f"No palette entry for Laplacian values {bad}")
    return out


def _outline_mask(grid: PatternGrid) -> np.ndarray:
    mask = np.zeros(grid.values.shape, dtype=bool)
    window = grid.window
    for p in grid.outline:
        if window.contains(p):
            mask[p.im - window.y0, p.re - window.x0] = True
    return mask


def gray_image(grid: PatternGrid, spec: RenderSpec) -> np.ndarray:
    """
    The gray levels of the grid, one pixel per vertex, with the row of
    largest y at the top.

    Raises:
        ValueError

    """
    pixels = _lookup(grid.values, spec.palette)
    if spec.outline:
        pixels[_outline_mask(grid)] = OUTLINE_GRAY
    return np.ascontiguousarray(np.flipud(pixels))


def render_ascii(grid: PatternGrid, spec: RenderSpec) -> str:
    """
    One line per row of the grid, largest y first, each line terminated
    by a newline.

    """
    outline = _outline_mask(grid) if spec.outline else None
    lines = []
    for r in range(grid.values.shape[0] - 1, -1, -1):
        chars = []
        for c, value in enumerate(grid.values[r]):
            if outline is not None and outline[r, c]:
                chars.append(OUTLINE_GLYPH)
                continue
            try:
                chars.append(spec.glyphs[int(value)])
            except KeyError:
                raise ValueError(f"No glyph for Laplacian value {value}")
        lines.append("".join(chars) + "\n")
    return "".join(lines)


def render(grid: PatternGrid, spec: RenderSpec) -> bytes:
    """
    Renders a pattern. The output depends only on the grid and the spec.

    Args:
        grid (PatternGrid): The Laplacian values to draw.
        spec (RenderSpec): The palette, glyphs and format.

    Returns:
        The ASCII text encoded as UTF-8, or the binary P5 PGM or PNG image.

    Raises:
        ValueError

    """
    if spec.format is RenderFormat.ascii:
        return render_ascii(grid, spec).encode("utf-8")
    image = Image.fromarray(gray_image(grid, spec))
    buf = io.BytesIO()
    image.save(buf, format="PPM" if spec.format is RenderFormat.pgm
               else "PNG")
    return buf.getvalue()


def tile_ascii(tile: Tile) -> str:
    """
    Draws the squares of a tile, '#' for a square of the tile and '.' for
    the other squares of its bounding box, largest y first.

    """
    if not tile.squares:
        return ""
    box = Rect.around(tile.squares)
    lines = []
    for y in range(box.y1, box.y0 - 1, -1):
        row = "".join("#" if GaussInt(x, y) in tile.squares else "."
                      for x in range(box.x0, box.x1 + 1))
        lines.append(row + "\n")
    return "".join(lines)


def palette_from_config(palette: Mapping[str, int]) -> Dict[int, int]:
    """
    Converts a palette read from JSON, keyed by value strings, to the
    integer keyed form used by RenderSpec.

    """
    return {int(k): int(v) for k, v in palette.items()}
