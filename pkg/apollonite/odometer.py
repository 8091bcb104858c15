#! /usr/bin/env python3
"""
This module builds the tile odometer of every circle of the band packing by
gluing translated parent odometers, extends it periodically to the global
odometer g_C, and computes and verifies its Laplacian pattern.

"""
from __future__ import annotations

import collections
import dataclasses
import functools
import logging
from typing import (Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping,
                    Optional, Sequence, Tuple)

import numpy as np
import tqdm

from .exactmath import Fraction, GaussInt, HalfGauss, I, ONE, RatGauss, ZERO
from .exceptions import GluingError, VerificationError
from .latvec import Lattice2, VAPair, peak_matrix, quadruple_vectors
from .packing import Circle, Quadruple, Window, enumerate_band, find_quadruple
from .reports import CheckReport, ReportContainer
from .tiles import (EDGE_STEPS, Tile, boundary_vertices, interior_vertices,
                    tile_for)


LOGGER = logging.getLogger(__name__)

# The values a Laplacian pattern of the band packing may take.
PATTERN_VALUES = (1, 0, -1, -2)

# Odometer values are evaluated in int64 only below this magnitude.
INT64_SAFE = 2 ** 62

Triple = Tuple[GaussInt, GaussInt, GaussInt]

OdometerTranslation = collections.namedtuple(
    "OdometerTranslation", ["shift", "slope", "offset"])

PatternRow = collections.namedtuple("PatternRow",
                                    ["circle", "basis", "counts"])


@dataclasses.dataclass(eq=True, frozen=True)
class Rect:
    """
    The integer vertices of the closed rectangle [x0, x1] x [y0, y1].

    """
    __slots__ = ("x0", "y0", "x1", "y1",)

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self):
        if self.x0 > self.x1 or self.y0 > self.y1:
            raise ValueError(f"Empty rectangle {self}")

    @classmethod
    def centered(cls, width: int, height: int,
                 center: GaussInt = ZERO) -> Rect:
        """
        A width x height rectangle of vertices around center.

        """
        if width < 1 or height < 1:
            raise ValueError(f"Invalid rectangle size {width}x{height}")
        x0 = center.re - (width - 1) // 2
        y0 = center.im - (height - 1) // 2
        return cls(x0, y0, x0 + width - 1, y0 + height - 1)

    @classmethod
    def around(cls, points: Iterable[GaussInt], pad: int = 0) -> Rect:
        points = list(points)
        return cls(min(p.re for p in points) - pad,
                   min(p.im for p in points) - pad,
                   max(p.re for p in points) + pad,
                   max(p.im for p in points) + pad)

    @property
    def width(self) -> int:
        return self.x1 - self.x0 + 1

    @property
    def height(self) -> int:
        return self.y1 - self.y0 + 1

    def contains(self, p: GaussInt) -> bool:
        return self.x0 <= p.re <= self.x1 and self.y0 <= p.im <= self.y1

    def grid(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        The coordinate arrays of the vertices, indexed [y - y0, x - x0].

        """
        return np.meshgrid(np.arange(self.x0, self.x1 + 1, dtype=np.int64),
                           np.arange(self.y0, self.y1 + 1, dtype=np.int64))

    def points(self) -> Iterator[GaussInt]:
        for y in range(self.y0, self.y1 + 1):
            for x in range(self.x0, self.x1 + 1):
                yield GaussInt(x, y)


class PatternGrid():
    """
    The integer Laplacian of an odometer on a window of vertices. Row r of
    values holds the vertices with y = y0 + r.

    """
    def __init__(self, window: Rect, values: np.ndarray,
                 circle: Optional[Circle] = None,
                 outline: FrozenSet[GaussInt] = frozenset()):
        """
        Initialize the grid.

        Args:
            window (Rect): The vertices covered.
            values (numpy.ndarray): The values, shape (height, width).
            circle (Circle, optional): The circle of the odometer.
            outline (frozenset, optional): Vertices to be highlighted when
                                           rendered.

        """
        if values.shape != (window.height, window.width):
            raise ValueError(f"Values of shape {values.shape} do not fit "
                             f"window {window}")
        self.window = window
        self.values = values
        self.circle = circle
        self.outline = outline

    def __repr__(self) -> str:
        return (f"PatternGrid(window={self.window}, circle={self.circle}, "
                f"counts={self.counts()})")

    def value(self, x: GaussInt) -> int:
        if not self.window.contains(x):
            raise KeyError(f"{x} is outside {self.window}")
        return int(self.values[x.im - self.window.y0, x.re - self.window.x0])

    def counts(self) -> Dict[int, int]:
        uniq, counts = np.unique(self.values, return_counts=True)
        return {int(u): int(c) for u, c in zip(uniq, counts)}

    def to_dict(self) -> Dict[GaussInt, int]:
        return {p: self.value(p) for p in self.window.points()}


@dataclasses.dataclass(eq=True, frozen=True)
class TileOdometer:
    """
    An integer function on the footprint of a tile, with its slope (None
    for the degenerate tiles of the band lines).

    """
    __slots__ = ("tile", "values", "slope",)

    tile: Tile
    values: Mapping[GaussInt, int]
    slope: Optional[RatGauss]

    @property
    def domain(self) -> FrozenSet[GaussInt]:
        return self.tile.footprint


@dataclasses.dataclass(eq=True, frozen=True)
class GlobalOdometer:
    """
    An odometer g: Z² -> Z with g(0) = 0 satisfying the periodicity
    g(x + v) = g(x) + xᵀA v + g(v) for v in the lattice spanned by the basis.
    It is stored as its values on one representative of every residue class
    (keyed by the residue in the Hermite box) together with the basis
    vectors v_i, the affine vectors a_i = A v_i and the lattice values
    g(v_i).

    """
    __slots__ = ("circle", "basis", "affine", "lattice_values",
                 "fundamental", "tile",)

    circle: Circle
    basis: Triple
    affine: Triple
    lattice_values: Tuple[int, int, int]
    fundamental: Mapping[GaussInt, Tuple[GaussInt, int]]
    tile: Optional[Tile]

    @property
    def lattice(self) -> Lattice2:
        return Lattice2(self.basis[0], self.basis[1])

    def representatives(self) -> List[GaussInt]:
        return sorted(y for y, _ in self.fundamental.values())

    def value(self, x: GaussInt) -> int:
        """
        Evaluates g at x through the periodicity condition.

        """
        lattice = self.lattice
        y, base = self.fundamental[lattice.residue(x)]
        m, n = (int(c) for c in lattice.coords(x - y))
        (v1, v2, _), (a1, a2, _) = self.basis, self.affine
        b1, b2, _ = self.lattice_values
        lam_a = a1 * m + a2 * n
        return (base + y.dot(lam_a) + m * b1 + m * (m - 1) // 2 * v1.dot(a1)
                + n * b2 + n * (n - 1) // 2 * v2.dot(a2) + m * n * v1.dot(a2))

    def decompose(self, xs: np.ndarray, ys: np.ndarray) \
            -> Tuple[np.ndarray, ...]:
        """
        Splits every point x into its representative y and the lattice
        coordinates (m, n) of x - y.

        Returns:
            The arrays (rx, ry, base, m, n).

        """
        alpha, beta, gamma = self.lattice.hnf
        table = np.zeros((alpha, gamma, 3), dtype=np.int64)
        for r, (y, base) in self.fundamental.items():
            table[r.re, r.im] = (y.re, y.im, base)
        k = np.floor_divide(ys, gamma)
        rep = table[np.mod(xs - k * beta, alpha), ys - k * gamma]
        rx, ry, base = rep[..., 0], rep[..., 1], rep[..., 2]
        lx, ly = xs - rx, ys - ry
        v1, v2, _ = self.basis
        det = v1.cross(v2)
        m = (lx * v2.im - ly * v2.re) // det
        n = (v1.re * ly - v1.im * lx) // det
        return rx, ry, base, m, n

    def values_at(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """
        Evaluates g on arrays of coordinates. The result has dtype int64,
        or dtype object holding Python integers when the lattice coordinates
        are large enough for int64 arithmetic to wrap.

        """
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        rx, ry, base, m, n = self.decompose(xs, ys)
        (v1, v2, _), (a1, a2, _) = self.basis, self.affine
        b1, b2, _ = self.lattice_values
        coeffs = (a1.re, a1.im, a2.re, a2.im, b1, b2, v1.dot(a1),
                  v2.dot(a2), v1.dot(a2))
        if _may_overflow(coeffs, rx, ry, base, m, n):
            LOGGER.debug(f"Evaluating the odometer of {self.circle} with "
                         "Python integers")
            rx, ry, base, m, n = (arr.astype(object)
                                  for arr in (rx, ry, base, m, n))
        return (base + rx * (m * a1.re + n * a2.re)
                + ry * (m * a1.im + n * a2.im)
                + m * b1 + (m * (m - 1) // 2) * v1.dot(a1)
                + n * b2 + (n * (n - 1) // 2) * v2.dot(a2)
                + m * n * v1.dot(a2))


def _may_overflow(coeffs: Sequence[int], *arrays: np.ndarray) -> bool:
    big = max(int(np.abs(arr).max(initial=0)) for arr in arrays) + 1
    return 16 * big * big * (max(abs(c) for c in coeffs) + 1) >= INT64_SAFE

def slope(values: Mapping[GaussInt, int]) -> Optional[RatGauss]:
    """
    The average gradient of a function over the unit squares all of whose
    vertices lie in its domain; None when there are no such squares.

    """
    total = GaussInt(0, 0)
    count = 0
    for x, hx in values.items():
        corners = (x + ONE, x + I, x + ONE + I)
        if not all(p in values for p in corners):
            continue
        h1, hi, h1i = (values[p] for p in corners)
        total += GaussInt(h1 - hx + h1i - hi, hi - hx + h1i - h1)
        count += 1
    if not count:
        return None
    return RatGauss.of(total) / (2 * count)


def is_odometer_translation(h1: Mapping[GaussInt, int],
                            h2: Mapping[GaussInt, int]) \
        -> Optional[OdometerTranslation]:
    """
    Tests whether h1 is an odometer translation of h2: their domains differ
    by a shift d and h1(x) = h2(x - d) + a·x + b for a Gaussian integer a
    and an integer b. The affine part is solved exactly from three
    non-collinear domain points.

    Returns:
        The OdometerTranslation (d, a, b), or None.

    """
    if len(h1) != len(h2) or not h1:
        return None
    d = min(h1) - min(h2)
    if any(x - d not in h2 for x in h1):
        return None
    diff = {x: h1[x] - h2[x - d] for x in h1}
    points = sorted(diff)
    p0 = points[0]
    if len(points) == 1:
        return OdometerTranslation(d, ZERO, diff[p0])
    u = points[1] - p0
    w = next((p - p0 for p in points[2:] if u.cross(p - p0) != 0), None)
    if w is None:
        raise ValueError("Cannot fit an affine function on a collinear "
                         "domain")
    r1 = diff[p0 + u] - diff[p0]
    r2 = diff[p0 + w] - diff[p0]
    det = u.cross(w)
    a_re = Fraction(r1 * w.im - u.im * r2, det)
    a_im = Fraction(u.re * r2 - r1 * w.re, det)
    if a_re.denominator != 1 or a_im.denominator != 1:
        return None
    a = GaussInt(a_re.numerator, a_im.numerator)
    b = diff[p0] - a.dot(p0)
    if any(diff[x] != a.dot(x) + b for x in points):
        return None
    return OdometerTranslation(d, a, b)


def _base_values(circle: Circle) -> Dict[GaussInt, int]:
    # the unit square of a curvature-one circle (1, 1 + 2z)
    return {ZERO: 0, ONE: 0, I: 0, ONE + I: circle.w.im // 2}


@functools.lru_cache(maxsize=4096)
def tile_odometer_for(circle: Circle) -> TileOdometer:
    """
    The tile odometer of a circle (or band line) on its anchored tile.

    """
    if circle.is_line:
        tile = tile_for(circle)
        return TileOdometer(tile, {p: 0 for p in tile.footprint}, None)
    return build_tile_odometer(find_quadruple(circle))


def build_tile_odometer(quad: Quadruple) -> TileOdometer:
    """
    Builds the tile odometer of the child of a quadruple. Each part T_i^±
    of the tile carries a copy of the parent odometer h_i, translated with
    the part and tilted by an integer affine function so that its slope is
    s(h_0) ± ½(a_kj + i a_kj); s(h_0) is fixed by leaving T_1^- untilted.
    The parts are glued in the fixed order T1-, T1+, T2+, T2-, T3+, T3-,
    each offset by the constant that matches it with the parts already
    placed. The result is normalised to have minimum 0.

    Args:
        quad (Quadruple): A proper quadruple or a base quadruple.

    Returns:
        The TileOdometer.

    Raises:
        GluingError

    """
    child = quad.child
    tile = tile_for(child)
    if child.is_line:
        return TileOdometer(tile, {p: 0 for p in tile.footprint}, None)
    if child.c == 1:
        values = _base_values(child)
        return TileOdometer(tile, values, slope(values))
    dec = tile.decomposition
    if dec is None:
        raise GluingError(f"Tile of {child} has no decomposition")

    qv = quadruple_vectors(child)
    parents = qv.quad.parents
    subodometers = [tile_odometer_for(p) for p in parents]
    first = subodometers[0]
    assert first.slope is not None
    a1 = qv.parent_pair(1).a
    target0 = first.slope + HalfGauss(a1 + I * a1)

    pending = []
    for part in dec.parts:
        if part.tile.is_degenerate:
            continue
        sub = subodometers[part.index - 1]
        assert sub.slope is not None
        a = qv.parent_pair(part.index).a
        tilt = target0 + HalfGauss(a + I * a) * part.sign - sub.slope
        try:
            alpha = tilt.to_gauss()
        except ValueError:
            raise GluingError(f"Subodometer {part.label} of {child} needs "
                              f"the non-integral tilt {tilt}")
        d = part.shift
        pending.append((part.label, {x + d: hx + alpha.dot(x + d)
                                     for x, hx in sub.values.items()}))

    glued = _glue(child, pending)
    if frozenset(glued) != tile.footprint:
        raise GluingError(f"Subodometers of {child} do not cover its tile")
    if slope(glued) != target0:
        raise GluingError(f"Tile odometer of {child} has slope "
                          f"{slope(glued)}, expected {target0}")
    low = min(glued.values())
    values = {x: hx - low for x, hx in glued.items()}
    LOGGER.debug(f"Glued tile odometer of {child}")
    return TileOdometer(tile, values, target0)


def _glue(child: Circle,
          pending: List[Tuple[str, Dict[GaussInt, int]]]) -> Dict[GaussInt, int]:
    glued: Dict[GaussInt, int] = {}
    while pending:
        remaining = []
        for label, values in pending:
            if not glued:
                glued.update(values)
                continue
            overlap = [x for x in values if x in glued]
            if not overlap:
                remaining.append((label, values))
                continue
            offsets = {glued[x] - values[x] for x in overlap}
            if len(offsets) != 1:
                raise GluingError(f"Subodometer {label} of {child} is not "
                                  "compatible with the parts already glued")
            beta = offsets.pop()
            glued.update((x, hx + beta) for x, hx in values.items())
        if len(remaining) == len(pending):
            raise GluingError(
                f"Subodometers {', '.join(l for l, _ in remaining)} of "
                f"{child} do not meet the parts already glued")
        pending = remaining
    return glued


def tile_odometer_checks(h: TileOdometer) -> ReportContainer:
    """
    Checks the slope formula and the 180° symmetry of a tile odometer.

    """
    reports = ReportContainer()
    name = str(h.tile.circle)
    if h.slope is None:
        return reports
    failures = []
    if slope(h.values) != h.slope:
        failures.append(f"{name}: slope {slope(h.values)} differs from "
                        f"{h.slope}")
    reports.append(CheckReport.from_failures("tile_odometer_slope", 1,
                                             failures))
    reflected = {-x: hx for x, hx in h.values.items()}
    failures = ([] if is_odometer_translation(reflected, h.values) is not None
                else [f"{name}: x -> h(-x) is not an odometer translation"])
    reports.append(CheckReport.from_failures("tile_odometer_symmetry", 1,
                                             failures))
    return reports


def periodic_extension(circle: Circle, pairs: Sequence[VAPair],
                       values: Mapping[GaussInt, int],
                       reps: Optional[Iterable[GaussInt]] = None,
                       tile: Optional[Tile] = None) -> GlobalOdometer:
    """
    Extends a function known on a finite domain containing 0 to the
    odometer with g(0) = 0 and g(x + v_i) = g(x) + a_i·x + g(v_i). The
    lattice values g(v_i) are read off the overlaps of the domain with its
    translates by v_i.

    Args:
        circle (Circle): The circle of the odometer.
        pairs (list): The three pairs (v_i, a_i).
        values (dict): The known values.
        reps (iterable, optional): Points of the domain forming a complete
                                   residue system; by default the first
                                   domain point of every class is used.
        tile (Tile, optional): The tile whose lower-left corners are the
                               representatives.

    Returns:
        The GlobalOdometer.

    Raises:
        GluingError

    """
    v = tuple(p.v for p in pairs)
    a = tuple(p.a for p in pairs)
    if sum(v, ZERO) != ZERO or sum(a, ZERO) != ZERO:
        raise GluingError(f"Vectors of {circle} do not sum to zero")
    if v[0].dot(a[1]) != v[1].dot(a[0]):
        raise GluingError(f"Affine vectors of {circle} are not A v for a "
                          "symmetric A")
    if ZERO not in values:
        raise GluingError(f"Domain of the odometer of {circle} misses 0")
    base = {x: hx - values[ZERO] for x, hx in values.items()}
    betas = []
    for vi, ai in zip(v, a):
        offsets = {hx - base[x - vi] - (x - vi).dot(ai)
                   for x, hx in base.items() if x - vi in base}
        if len(offsets) != 1:
            problem = "not compatible" if offsets else "disjoint"
            raise GluingError(f"Translates of the odometer of {circle} by "
                              f"{vi} are {problem}")
        betas.append(offsets.pop())
    lattice = Lattice2(v[0], v[1])
    fundamental: Dict[GaussInt, Tuple[GaussInt, int]] = {}
    for y in (sorted(base) if reps is None else reps):
        fundamental.setdefault(lattice.residue(y), (y, base[y]))
    if len(fundamental) != lattice.det:
        raise GluingError(f"Domain of the odometer of {circle} covers "
                          f"{len(fundamental)} of {lattice.det} residues")
    g = GlobalOdometer(circle, v, a, tuple(betas),  # type: ignore
                       fundamental, tile)
    bad = [x for x, hx in base.items() if g.value(x) != hx]
    bad += [vi for vi, beta in zip(v, betas) if g.value(vi) != beta]
    if bad:
        raise GluingError(f"Periodic extension of the odometer of {circle} "
                          f"disagrees at {', '.join(map(str, bad[:5]))}")
    return g


def globalize(h: TileOdometer) -> GlobalOdometer:
    """
    Extends a tile odometer to the global odometer of its circle, using the
    lattice spanned by the child vectors v_i0 and the affine vectors a_i0.

    Raises:
        GluingError

    """
    circle = h.tile.circle
    if circle.is_line:
        raise GluingError("Band lines have no global odometer")
    qv = quadruple_vectors(circle)
    return periodic_extension(circle, [qv.pair(i) for i in (1, 2, 3)],
                              h.values, reps=sorted(h.tile.squares),
                              tile=h.tile)


@functools.lru_cache(maxsize=1024)
def odometer_for(circle: Circle) -> GlobalOdometer:
    return globalize(tile_odometer_for(circle))


def laplacian_values(g: GlobalOdometer,
                     points: Sequence[GaussInt]) -> np.ndarray:
    """
    The Laplacian Σ_{y~x} (g(y) - g(x)) at each of the points.

    """
    xs = np.array([p.re for p in points], dtype=np.int64)
    ys = np.array([p.im for p in points], dtype=np.int64)
    total = -4 * g.values_at(xs, ys)
    for step in EDGE_STEPS:
        total += g.values_at(xs + step.re, ys + step.im)
    return total


def laplacian(g: GlobalOdometer, window: Rect) -> PatternGrid:
    """
    The Laplacian of g at every vertex of the window.

    """
    padded = Rect(window.x0 - 1, window.y0 - 1, window.x1 + 1, window.y1 + 1)
    vals = g.values_at(*padded.grid())
    lap = (vals[:-2, 1:-1] + vals[2:, 1:-1] + vals[1:-1, :-2]
           + vals[1:-1, 2:] - 4 * vals[1:-1, 1:-1])
    return PatternGrid(window, lap, g.circle)


def fundamental_pattern(circle: Circle, window: Optional[Rect] = None,
                        outline: bool = False) -> PatternGrid:
    """
    The Laplacian pattern of a circle on the bounding box of the vertices
    of its anchored tile, the fundamental domain drawn by the renderers.

    Args:
        circle (Circle): A circle of positive curvature.
        window (Rect, optional): Overrides the bounding box.
        outline (bool, optional): Whether to record the tile boundary
                                  vertices for highlighting.

    Raises:
        GluingError

    """
    g = odometer_for(circle)
    assert g.tile is not None
    if window is None:
        window = Rect.around(g.tile.footprint)
    marked = boundary_vertices(g.tile) if outline else frozenset()
    return PatternGrid(window, laplacian(g, window).values, g.circle, marked)


def period_window(g: GlobalOdometer, periods: int = 3) -> Rect:
    """
    The square window reaching the given number of lattice periods from
    the origin in every direction.

    """
    span = max(max(abs(v.re), abs(v.im)) for v in g.basis)
    half = periods * span
    return Rect(-half, -half, half, half)


def web_mask(g: GlobalOdometer, window: Rect) -> np.ndarray:
    """
    Marks the window vertices lying on the boundary of some lattice
    translate of the tile.

    Raises:
        ValueError

    """
    if g.tile is None:
        raise ValueError(f"Odometer of {g.circle} carries no tile")
    squares = Rect(window.x0 - 1, window.y0 - 1, window.x1, window.y1)
    _, _, _, m, n = g.decompose(*squares.grid())
    owner = m * (abs(n).max() * 2 + 3) + n
    corners = (owner[1:, 1:], owner[1:, :-1], owner[:-1, 1:], owner[:-1, :-1])
    same = np.ones(corners[0].shape, dtype=bool)
    for other in corners[1:]:
        same &= other == corners[0]
    return ~same


def _periodicity_report(g: GlobalOdometer, samples: int,
                        window: Rect, seed: int) -> CheckReport:
    rng = np.random.default_rng(seed)
    (v1, v2, v3), (a1, a2, a3) = g.basis, g.affine
    cases = [(v, a) for v, a in ((v1, a1), (v2, a2), (v3, a3))]
    cases += [(-v, -a) for v, a in cases]
    for m, n in rng.integers(-3, 4, size=(samples, 2)):
        cases.append((v1 * int(m) + v2 * int(n), a1 * int(m) + a2 * int(n)))
    xs = rng.integers(window.x0, window.x1 + 1, size=len(cases))
    ys = rng.integers(window.y0, window.y1 + 1, size=len(cases))
    failures = []
    for (v, a), x1, x2 in zip(cases, xs, ys):
        x = GaussInt(int(x1), int(x2))
        if g.value(x + v) != g.value(x) + x.dot(a) + g.value(v):
            failures.append(f"{g.circle}: periodicity fails at x = {x}, "
                            f"v = {v}")
    return CheckReport.from_failures("periodicity", len(cases), failures)


def verify_odometer(g: GlobalOdometer, periods: int = 3,
                    samples: int = 100, seed: int = 0) -> ReportContainer:
    """
    Verifies a global odometer on a window spanning the given number of
    periods: the periodicity condition on sampled pairs, Δg ≤ 1 with values
    in {1, 0, -1, -2}, Δg = 1 on the web of tile boundaries, the sum of Δg
    over one fundamental domain, and, for glued odometers, the interior
    formula.

    Returns:
        A ReportContainer.

    """
    reports = ReportContainer()
    name = str(g.circle)
    window = period_window(g, periods)
    reports.append(_periodicity_report(g, samples, window, seed))

    grid = laplacian(g, window)
    bad = np.argwhere((grid.values > 1) | (grid.values < -2))
    reports.append(CheckReport.from_failures(
        "superharmonic", grid.values.size,
        [f"{name}: Δg = {grid.values[r, c]} at "
         f"({c + window.x0}, {r + window.y0})" for r, c in bad[:10]]))

    if g.tile is not None:
        web = web_mask(g, window)
        bad = np.argwhere(web & (grid.values != 1))
        reports.append(CheckReport.from_failures(
            "web", int(web.sum()),
            [f"{name}: Δg = {grid.values[r, c]} on the web at "
             f"({c + window.x0}, {r + window.y0})" for r, c in bad[:10]]))

    total = int(laplacian_values(g, g.representatives()).sum())
    reports.append(CheckReport.from_failures(
        "fundamental_sum", 1,
        [] if total == 1 else [f"{name}: Δg sums to {total} over a "
                               "fundamental domain"]))

    if g.tile is not None and g.tile.decomposition is not None:
        reports.append(verify_interior_formula(g))
    return reports


def subtile_boundary_counts(tile: Tile) -> Dict[GaussInt, int]:
    """
    For every interior vertex of a tile, the number k of boundaries of the
    parts T_i^± containing it.

    """
    dec = tile.decomposition
    if dec is None:
        return {}
    boundaries = [boundary_vertices(part.tile) for part in dec.parts]
    return {x: sum(x in b for b in boundaries)
            for x in sorted(interior_vertices(tile))}


def verify_interior_formula(g: GlobalOdometer) -> CheckReport:
    """
    Checks Δg(x) = 3 - k - 1[x = c(T)] at every interior vertex x of the
    tile lying on k ≥ 2 part boundaries. Vertices with k ≤ 1 lie inside a
    single part, where the pattern is that of the part's own circle, and
    are not checked here.

    Raises:
        VerificationError

    """
    tile = g.tile
    if tile is None or tile.decomposition is None:
        raise VerificationError(f"Odometer of {g.circle} has no tile "
                                "decomposition")
    centroid = tile.centroid.to_gauss() if tile.centroid.is_integral() \
        else None
    counts = {x: k for x, k in subtile_boundary_counts(tile).items()
              if k >= 2}
    points = list(counts)
    failures = []
    if points:
        lap = laplacian_values(g, points)
        for x, value in zip(points, lap):
            expected = 3 - counts[x] - (1 if x == centroid else 0)
            if value != expected:
                failures.append(f"{g.circle}: Δg({x}) = {value} with "
                                f"k = {counts[x]}, expected {expected}")
    return CheckReport.from_failures("interior_formula", len(points),
                                     failures)


def _connected_sets(points: FrozenSet[GaussInt],
                    max_size: int) -> Iterator[FrozenSet[GaussInt]]:
    level = {frozenset([p]) for p in points}
    size = 1
    while level:
        yield from sorted(level, key=sorted)
        if size == max_size:
            return
        grown = set()
        for s in level:
            for p in s:
                for step in EDGE_STEPS:
                    q = p + step
                    if q in points and q not in s:
                        grown.add(s | {q})
        level = grown
        size += 1


def is_simply_connected(vertices: FrozenSet[GaussInt]) -> bool:
    """
    A connected vertex set is simply connected when its complement is
    connected: every vertex of the padded bounding box outside the set is
    reached from the box corner.

    """
    box = Rect.around(vertices, pad=1)
    start = GaussInt(box.x0, box.y0)
    seen = {start}
    queue = collections.deque([start])
    while queue:
        p = queue.popleft()
        for step in EDGE_STEPS:
            q = p + step
            if box.contains(q) and q not in vertices and q not in seen:
                seen.add(q)
                queue.append(q)
    return len(seen) + len(vertices) == box.width * box.height


def maximality_probe(g: GlobalOdometer, max_size: int) -> CheckReport:
    """
    Enumerates every non-empty simply connected set Y of interior tile
    vertices with |Y| <= max_size and checks that some x in Y has
    Δ(g - 1_Y)(x) > 1.

    Raises:
        VerificationError

    """
    if g.tile is None:
        raise VerificationError(f"Odometer of {g.circle} carries no tile")
    interior = interior_vertices(g.tile)
    points = sorted(interior)
    lap = dict(zip(points, (int(v) for v in laplacian_values(g, points))))
    failures = []
    checked = 0
    for ys in _connected_sets(interior, max_size):
        if not is_simply_connected(ys):
            continue
        checked += 1
        if not any(lap[x] + 4 - sum(x + s in ys for s in EDGE_STEPS) > 1
                   for x in ys):
            failures.append(f"{g.circle}: no vertex of Y = "
                            f"{{{', '.join(map(str, sorted(ys)))}}} has "
                            "Δ(g - 1_Y) > 1")
    return CheckReport.from_failures("maximality_probe", checked, failures)


def harmonic_quadratic(w: GaussInt, x: GaussInt) -> int:
    """
    h_w(x) = (a/2) x1 (x1 + 1) - (a/2) x2 (x2 + 1) + b x1 x2 for w = a + bi,
    a harmonic integer function.

    """
    a, b = w.re, w.im
    return (a * (x.re * (x.re + 1) - x.im * (x.im + 1))) // 2 \
        + b * x.re * x.im


def harmonic_shift(g: GlobalOdometer, w: GaussInt) -> GlobalOdometer:
    """
    Adds h_w to g, giving an odometer for the circle translated by 2w with
    an unchanged Laplacian pattern. The peak matrix gains [[a, b], [b, -a]].

    """
    circle = Circle.of(g.circle.c, g.circle.w.re + 2 * g.circle.c * w.re,
                       g.circle.w.im + 2 * g.circle.c * w.im)
    affine = tuple(a + w * v.conj() for v, a in zip(g.basis, g.affine))
    lattice_values = tuple(beta + harmonic_quadratic(w, v)
                           for v, beta in zip(g.basis, g.lattice_values))
    fundamental = {r: (y, base + harmonic_quadratic(w, y))
                   for r, (y, base) in g.fundamental.items()}
    return GlobalOdometer(circle, g.basis, affine,  # type: ignore
                          lattice_values, fundamental, g.tile)  # type: ignore


def lattice_vector_b(g: GlobalOdometer) -> RatGauss:
    """
    The vector b for which x -> g(x) - ½xᵀAx - b·x is periodic, solving
    b·v_i = g(v_i) - ½ v_i·a_i for the first two basis vectors.

    """
    (v1, v2, _), (a1, a2, _) = g.basis, g.affine
    b1, b2, _ = g.lattice_values
    r1 = Fraction(b1) - Fraction(v1.dot(a1), 2)
    r2 = Fraction(b2) - Fraction(v2.dot(a2), 2)
    det = v1.cross(v2)
    return RatGauss((r1 * v2.im - v1.im * r2) / det,
                    (v1.re * r2 - r1 * v2.re) / det)


def peak_consistency(g: GlobalOdometer) -> List[str]:
    """
    Checks that the affine vectors are A_C v_i for the peak matrix A_C.

    """
    A = peak_matrix(g.circle)
    return [f"{g.circle}: a = {a} is not A_C {v}"
            for v, a in zip(g.basis, g.affine)
            if tuple(map(Fraction, a.as_pair())) != A.apply(v)]


def find_translate(h: TileOdometer,
                   g: GlobalOdometer) -> Optional[OdometerTranslation]:
    """
    Searches the lattice translates of the tile's footprint, one per
    residue class, for a restriction of g that is an odometer translation
    of h.

    """
    footprint = sorted(h.values)
    xs = np.array([x.re for x in footprint], dtype=np.int64)
    ys = np.array([x.im for x in footprint], dtype=np.int64)
    for d in g.lattice.residues():
        vals = g.values_at(xs + d.re, ys + d.im)
        restricted = {x + d: int(v) for x, v in zip(footprint, vals)}
        found = is_odometer_translation(restricted, h.values)
        if found is not None:
            return found
    return None


def pattern_counts(g: GlobalOdometer) -> Dict[int, int]:
    """
    How often each Laplacian value occurs over one fundamental domain.

    """
    values = laplacian_values(g, g.representatives())
    counts = collections.Counter(int(v) for v in values)
    return {v: counts.get(v, 0) for v in PATTERN_VALUES}


def pattern_table(max_curvature: int, window: Optional[Window] = None,
                  progress: bool = True) -> List[PatternRow]:
    """
    Lists, for every child circle with curvature at most max_curvature and
    center in the window, its lattice basis and the Laplacian value counts
    over a fundamental domain.

    """
    window = window if window is not None else Window.square(0, 2)
    quads = sorted(enumerate_band(max_curvature, window),
                   key=lambda q: (q.child.c, q.child.w))
    rows = []
    for quad in tqdm.tqdm(quads, disable=not progress):
        g = odometer_for(quad.child)
        rows.append(PatternRow(quad.child, g.basis[:2], pattern_counts(g)))
    return rows


def pattern_row_json(row: PatternRow) -> Dict[str, Any]:
    return {"circle": row.circle.to_json(),
            "basis": [list(v.as_pair()) for v in row.basis],
            "counts": {str(k): v for k, v in row.counts.items()}}
