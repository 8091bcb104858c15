#! /usr/bin/env python3
"""
This module provides some functions useful for visualizing the band packing
and the tiles of its circles.

"""
from typing import Optional, Sequence

from matplotlib.axes import Axes
import matplotlib.patches as mpatches
import matplotlib.pyplot as plt

from .packing import Circle, Window
from .tiles import Tile, boundary_vertices


CIRCLE_COLOR = "#4472C4"
LINE_COLOR = "#C00000"
TILE_COLOR = "#A0A0A0"
OUTLINE_COLOR = "black"

FONTSIZE = 12

SAVE_DPI = 300

# The band lines Re z = 0 and Re z = 2.
BAND_EDGES = (0, 2)


def _draw_circles(ax: Axes, circles: Sequence[Circle], window: Window):
    for circle in circles:
        if circle.is_line:
            continue
        center = circle.center
        ax.add_patch(mpatches.Circle(
            (float(center.re), float(center.im)), 1 / circle.c, fill=False,
            linewidth=0.5, color=CIRCLE_COLOR))
    for x in BAND_EDGES:
        if window.x0 <= x <= window.x1:
            ax.axvline(x, color=LINE_COLOR, linewidth=1)
    ax.set_xlim(float(window.x0), float(window.x1))
    ax.set_ylim(float(window.y0), float(window.y1))
    ax.set_aspect("equal")
    ax.set_title("Band packing", fontsize=FONTSIZE)


def _draw_tile(ax: Axes, tile: Tile):
    for x in tile.squares:
        ax.add_patch(mpatches.Rectangle((x.re, x.im), 1, 1, color=TILE_COLOR,
                                        linewidth=0))
    outline = sorted(boundary_vertices(tile))
    ax.scatter([p.re for p in outline], [p.im for p in outline], s=4,
               color=OUTLINE_COLOR)
    ax.autoscale_view()
    ax.set_aspect("equal")
    ax.set_title(f"Tile of {tile.circle}", fontsize=FONTSIZE)


def plot_packing(circles: Sequence[Circle], window: Window,
                 tile: Optional[Tile] = None,
                 save_path: Optional[str] = None):
    """
    Plots the circles of a window of the band packing and, if given, a tile
    with its boundary vertices next to it.

    Args:
        circles (list): The circles to draw.
        window (Window): The region of the plane shown.
        tile (Tile, optional): A tile drawn in a second panel.
        save_path (str, optional): The path to which to save the figure.
                                   If None, the figure is shown.

    """
    ncols = 1 if tile is None else 2
    fig, axes = plt.subplots(1, ncols, figsize=(6 * ncols, 6), squeeze=False)
    _draw_circles(axes[0][0], circles, window)
    if tile is not None:
        _draw_tile(axes[0][1], tile)

    if save_path is not None:
        fig.savefig(save_path, dpi=SAVE_DPI)
        plt.close(fig)
    else:
        plt.show()
