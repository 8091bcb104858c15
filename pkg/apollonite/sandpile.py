#! /usr/bin/env python3
"""
A minimal abelian sandpile on Z²: n chips are placed at the origin and every
vertex holding at least four chips topples, sending one chip to each
neighbour. The stable configuration is compared with the periodic Laplacian
patterns of the band packing, a stable count s corresponding to the
Laplacian value s - 2.

"""
from __future__ import annotations

import collections
import dataclasses
import enum
import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import tqdm

from .exactmath import GaussInt
from .exceptions import SandpileError
from .latvec import Lattice2
from .odometer import PatternGrid, Rect, laplacian_values, odometer_for
from .packing import Circle, Window, enumerate_band


LOGGER = logging.getLogger(__name__)

# Stable chip count of a vertex with Laplacian value 0.
COUNT_OFFSET = 2


class Schedule(enum.Enum):
    """
    The order in which unstable vertices topple.

    """
    parallel = enum.auto()
    fifo = enum.auto()
    lifo = enum.auto()


@dataclasses.dataclass(eq=False, frozen=True)
class ChipConfig:
    """
    A finite chip configuration on a square grid centred at the origin:
    grid[y + radius, x + radius] holds the chips at (x, y).

    """
    __slots__ = ("grid", "total",)

    grid: np.ndarray
    total: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChipConfig):
            return NotImplemented
        return (self.total == other.total
                and np.array_equal(self.grid, other.grid))

    @property
    def radius(self) -> int:
        return self.grid.shape[0] // 2

    @property
    def window(self) -> Rect:
        r = self.radius
        return Rect(-r, -r, r, r)

    def count(self, x: GaussInt) -> int:
        r = self.radius
        if max(abs(x.re), abs(x.im)) > r:
            return 0
        return int(self.grid[x.im + r, x.re + r])

    def is_stable(self) -> bool:
        return bool((self.grid < 4).all())

    def as_pattern(self) -> PatternGrid:
        """
        The configuration as a pattern of Laplacian values s - 2.

        """
        return PatternGrid(self.window, self.grid - COUNT_OFFSET)


def _initial(n: int, radius: int) -> np.ndarray:
    grid = np.zeros((2 * radius + 1, 2 * radius + 1), dtype=np.int64)
    grid[radius, radius] = n
    return grid


def _touches_border(grid: np.ndarray) -> bool:
    return bool(grid[0].any() or grid[-1].any()
                or grid[:, 0].any() or grid[:, -1].any())


def _topple_parallel(grid: np.ndarray):
    while True:
        topples = grid // 4
        if not topples.any():
            return
        grid -= 4 * topples
        grid[1:, :] += topples[:-1, :]
        grid[:-1, :] += topples[1:, :]
        grid[:, 1:] += topples[:, :-1]
        grid[:, :-1] += topples[:, 1:]


def _topple_queue(grid: np.ndarray, schedule: Schedule):
    size = grid.shape[0]
    queue = collections.deque(tuple(p) for p in np.argwhere(grid >= 4))
    pop = queue.popleft if schedule is Schedule.fifo else queue.pop
    while queue:
        r, c = pop()
        chips = int(grid[r, c])
        if chips < 4:
            continue
        k = chips // 4
        grid[r, c] -= 4 * k
        for nr, nc in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if 0 <= nr < size and 0 <= nc < size:
                grid[nr, nc] += k
                if grid[nr, nc] >= 4:
                    queue.append((nr, nc))


def _radius_for(n: int) -> int:
    # the stable pile has density about 2 and fits a disk of area n / 2
    return math.isqrt(n) // 2 + 3


def stabilize(n: int, schedule: Schedule = Schedule.parallel,
              radius: Optional[int] = None) -> ChipConfig:
    """
    Stabilizes n chips placed at the origin. When the pile reaches the
    border, or chips fall off it, the grid is doubled and the run repeated.

    Args:
        n (int): The number of chips.
        schedule (Schedule, optional): The toppling order.
        radius (int, optional): The initial grid radius.

    Returns:
        The stable ChipConfig.

    Raises:
        ValueError
        SandpileError

    """
    if n < 0:
        raise ValueError(f"Chip count must be non-negative, got {n}")
    radius = max(radius if radius is not None else _radius_for(n), 1)
    while True:
        grid = _initial(n, radius)
        if schedule is Schedule.parallel:
            _topple_parallel(grid)
        else:
            _topple_queue(grid, schedule)
        if not _touches_border(grid) and int(grid.sum()) == n:
            break
        LOGGER.warning(f"Sandpile of {n} chips reached the border of radius "
                       f"{radius}; retrying with radius {2 * radius}")
        radius *= 2
    config = ChipConfig(grid, int(grid.sum()))
    if config.total != n:
        raise SandpileError(f"Stabilization lost chips: {config.total} of {n}")
    if not config.is_stable():
        raise SandpileError(f"Configuration of {n} chips is not stable")
    return config


@dataclasses.dataclass(eq=False, frozen=True)
class PatternEntry:
    """
    The periodic Laplacian pattern of one circle: its value on every
    residue class of the lattice, as a table over the Hermite box.

    """
    __slots__ = ("circle", "lattice", "table",)

    circle: Circle
    lattice: Lattice2
    table: Any

    def values_at(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        alpha, beta, gamma = self.lattice.hnf
        k = np.floor_divide(ys, gamma)
        return self.table[np.mod(xs - k * beta, alpha), ys - k * gamma]


@dataclasses.dataclass(eq=True, frozen=True)
class PatternMatch:
    """
    The largest rectangle of a chip configuration agreeing with a translate
    of a library pattern.

    """
    __slots__ = ("circle", "area", "region", "shift",)

    circle: Circle
    area: int
    region: Optional[Rect]
    shift: Optional[GaussInt]

    def to_json(self) -> Dict[str, Any]:
        region = self.region
        return {
            "circle": self.circle.to_json(),
            "area": self.area,
            "region": (None if region is None
                       else [region.x0, region.y0, region.x1, region.y1]),
            "shift": None if self.shift is None else list(self.shift.as_pair()),
        }


def pattern_entry(circle: Circle) -> PatternEntry:
    g = odometer_for(circle)
    lattice = g.lattice
    alpha, _, gamma = lattice.hnf
    residues = list(lattice.residues())
    values = laplacian_values(g, residues)
    table = np.zeros((alpha, gamma), dtype=np.int64)
    for r, value in zip(residues, values):
        table[r.re, r.im] = value
    return PatternEntry(circle, lattice, table)


def pattern_library(max_curvature: int, window: Optional[Window] = None,
                    progress: bool = True) -> List[PatternEntry]:
    """
    Builds the periodic patterns of every circle of curvature at most
    max_curvature centred in the window, the unit circle included.

    """
    window = window if window is not None else Window.square(0, 2)
    circles = {Circle.of(1, 1, 0)}
    circles.update(q.child for q in enumerate_band(max_curvature, window))
    library = []
    for circle in tqdm.tqdm(sorted(circles), disable=not progress):
        library.append(pattern_entry(circle))
    return library


def _largest_rectangle(mask: np.ndarray) \
        -> Tuple[int, Optional[Tuple[int, int, int, int]]]:
    # largest all-true rectangle, by the histogram method row by row
    best_area, best_box = 0, None
    heights = np.zeros(mask.shape[1], dtype=np.int64)
    for r, row in enumerate(mask):
        heights = np.where(row, heights + 1, 0)
        hs = heights.tolist() + [0]
        stack: List[int] = []
        for c, h in enumerate(hs):
            while stack and hs[stack[-1]] >= h:
                height = hs[stack.pop()]
                left = stack[-1] + 1 if stack else 0
                area = height * (c - left)
                if area > best_area:
                    best_area = area
                    best_box = (r - height + 1, left, r, c - 1)
            stack.append(c)
    return best_area, best_box


def compare_patterns(s: ChipConfig, library: Sequence[PatternEntry],
                     progress: bool = False) -> List[PatternMatch]:
    """
    For each library pattern, finds the largest axis-aligned rectangle of
    the configuration on which the chip counts equal 2 + Δg_C for some
    translate of the pattern.

    Returns:
        One PatternMatch per library entry, largest area first.

    """
    xs, ys = s.window.grid()
    matches = []
    for entry in tqdm.tqdm(library, disable=not progress):
        best = PatternMatch(entry.circle, 0, None, None)
        if s.total > 0:
            for d in entry.lattice.residues():
                expected = entry.values_at(xs + d.re, ys + d.im)
                mask = s.grid == expected + COUNT_OFFSET
                if int(mask.sum()) <= best.area:
                    continue
                area, box = _largest_rectangle(mask)
                if area > best.area:
                    r0, c0, r1, c1 = box
                    x0, y0 = s.window.x0, s.window.y0
                    best = PatternMatch(
                        entry.circle, area,
                        Rect(c0 + x0, r0 + y0, c1 + x0, r1 + y0), d)
        matches.append(best)
    matches.sort(key=lambda m: (-m.area, m.circle))
    return matches


def schedules_agree(n: int) -> bool:
    """
    Stabilizes n chips under every schedule and compares the results.

    """
    configs = [stabilize(n, schedule) for schedule in Schedule]
    return all(c == configs[0] for c in configs[1:])
