#! /usr/bin/env python3
"""
This module builds the fundamental tile of every circle of the band packing
by gluing translated copies of its parents' tiles, and verifies the tiling,
touching and boundary string properties of the result.

"""
from __future__ import annotations

import collections
import dataclasses
import functools
import logging
import math
from typing import (Any, Dict, FrozenSet, Iterable, List, Optional, Sequence,
                    Set, Tuple)

import numpy as np

from .exactmath import Fraction, GaussInt, HalfGauss, I, ONE, ZERO
from .exceptions import TileError
from .latvec import Lattice2, QuadrupleVectors, quadruple_vectors
from .packing import Circle, QuadKind, Quadruple, find_quadruple
from .reports import CheckReport, ReportContainer


LOGGER = logging.getLogger(__name__)

EDGE_STEPS = (ONE, -ONE, I, -I)

# The order in which the six subtiles are placed, and in which subodometers
# are glued.
PART_ORDER = ((1, -1), (1, 1), (2, 1), (2, -1), (3, 1), (3, -1))


@dataclasses.dataclass(eq=True, frozen=True)
class Tile:
    """
    A finite set of unit squares s_x, identified by their lower-left corners
    x, together with its vertex footprint and centroid. Degenerate tiles,
    those of the band lines, have no squares and a single footprint vertex.

    """
    __slots__ = ("squares", "footprint", "centroid", "circle",
                 "decomposition",)

    squares: FrozenSet[GaussInt]
    footprint: FrozenSet[GaussInt]
    centroid: HalfGauss
    circle: Circle
    decomposition: Optional[Decomposition]

    def __len__(self) -> int:
        return len(self.squares)

    @property
    def is_degenerate(self) -> bool:
        return not self.squares

    def same_squares(self, other: Tile) -> bool:
        if self.is_degenerate or other.is_degenerate:
            return self.footprint == other.footprint
        return self.squares == other.squares

    def to_json(self) -> Dict[str, Any]:
        return {
            "circle": self.circle.to_json(),
            "squares": [list(x.as_pair()) for x in sorted(self.squares)],
        }


@dataclasses.dataclass(eq=True, frozen=True)
class TilePart:
    """
    One of the six translated parent tiles T_i^± making up a tile.

    """
    __slots__ = ("index", "sign", "circle", "shift", "tile",)

    index: int
    sign: int
    circle: Circle
    shift: GaussInt
    tile: Tile

    @property
    def label(self) -> str:
        return f"T{self.index}{'+' if self.sign > 0 else '-'}"


@dataclasses.dataclass(eq=True, frozen=True)
class Decomposition:
    """
    The decomposition record of a tile: its six parts, and the tile of the
    precursor circle on which the two copies of the largest parent overlap.

    """
    __slots__ = ("parts", "overlap",)

    parts: Tuple[TilePart, ...]
    overlap: Optional[Tile]

    def part(self, index: int, sign: int) -> TilePart:
        for part in self.parts:
            if part.index == index and part.sign == sign:
                return part
        raise KeyError(f"No part ({index}, {sign})")


@dataclasses.dataclass(eq=True, frozen=True)
class DoubleDecomposition:
    """
    The decomposition of a tile into T_2^±, T_3^± and the parts of the two
    copies of its largest parent: S for T_1^-, Q for T_1^+.

    """
    __slots__ = ("tiles", "identified", "applicable",)

    tiles: Tuple[Tuple[str, Tile], ...]
    identified: Optional[Tuple[str, str]]
    applicable: bool

    def as_dict(self) -> Dict[str, Tile]:
        return dict(self.tiles)


def square_vertices(x: GaussInt) -> Tuple[GaussInt, ...]:
    return x, x + ONE, x + I, x + ONE + I


def footprint_of(squares: Iterable[GaussInt]) -> FrozenSet[GaussInt]:
    return frozenset(v for x in squares for v in square_vertices(x))


def squares_at(p: GaussInt) -> Tuple[GaussInt, ...]:
    """
    The four squares having p as a vertex.

    """
    return p, p - ONE, p - I, p - ONE - I


def interior_vertices(tile: Tile) -> FrozenSet[GaussInt]:
    return frozenset(p for p in tile.footprint
                     if all(x in tile.squares for x in squares_at(p)))


def boundary_vertices(tile: Tile) -> FrozenSet[GaussInt]:
    return tile.footprint - interior_vertices(tile)


def degenerate_tile(circle: Circle, p: GaussInt = ZERO) -> Tile:
    return Tile(frozenset(), frozenset([p]), HalfGauss.from_gauss(p), circle,
                None)


def translate(tile: Tile, d: GaussInt, keep_decomposition: bool = False) \
        -> Tile:
    """
    Translates the tile by d, optionally carrying its decomposition record
    along.

    """
    decomposition = None
    if keep_decomposition and tile.decomposition is not None:
        dec = tile.decomposition
        decomposition = Decomposition(
            tuple(TilePart(p.index, p.sign, p.circle, p.shift + d,
                           translate(p.tile, d)) for p in dec.parts),
            translate(dec.overlap, d) if dec.overlap is not None else None)
    return Tile(frozenset(x + d for x in tile.squares),
                frozenset(x + d for x in tile.footprint),
                tile.centroid + d, tile.circle, decomposition)


def twice_centroid(squares: Iterable[GaussInt]) -> GaussInt:
    """
    Computes twice the centroid of a set of unit squares.

    Raises:
        TileError

    """
    squares = list(squares)
    total = sum((x * 2 + ONE + I for x in squares), ZERO)
    n = len(squares)
    if total.re % n or total.im % n:
        raise TileError(f"Centroid of {n} squares is not half-integral")
    return GaussInt(total.re // n, total.im // n)


def _edge_components(squares: Set[GaussInt]) -> int:
    seen: Set[GaussInt] = set()
    components = 0
    for start in squares:
        if start in seen:
            continue
        components += 1
        queue = collections.deque([start])
        seen.add(start)
        while queue:
            x = queue.popleft()
            for step in EDGE_STEPS:
                y = x + step
                if y in squares and y not in seen:
                    seen.add(y)
                    queue.append(y)
    return components


def disk_failures(squares: FrozenSet[GaussInt]) -> List[str]:
    """
    Checks that the closed union of the squares is a topological disk: the
    squares are edge-connected, no vertex is a pinch point, and the
    complement is connected.

    Returns:
        A list of failure messages.

    """
    if not squares:
        return []
    failures = []
    if _edge_components(set(squares)) != 1:
        failures.append("squares are not edge-connected")
    for p in footprint_of(squares):
        present = [x in squares for x in squares_at(p)]
        # squares_at order: p, p-1, p-i, p-1-i
        if sum(present) == 2 and (present[0] and present[3]
                                  or present[1] and present[2]):
            failures.append(f"pinch vertex at {p}")
    x0 = min(x.re for x in squares) - 1
    x1 = max(x.re for x in squares) + 1
    y0 = min(x.im for x in squares) - 1
    y1 = max(x.im for x in squares) + 1
    complement = {GaussInt(a, b) for a in range(x0, x1 + 1)
                  for b in range(y0, y1 + 1)} - squares
    if _edge_components(complement) != 1:
        failures.append("complement is not connected (tile has a hole)")
    return failures


def symmetry_failures(tile: Tile) -> List[str]:
    """
    Checks that rotating the squares by 90° about the centroid maps the
    tile onto itself.

    """
    c = tile.centroid.twice
    for x in tile.squares:
        p = x * 2 + ONE + I
        q = c + I * (p - c) - ONE - I
        if q.re % 2 or q.im % 2 or GaussInt(q.re // 2, q.im // 2) \
                not in tile.squares:
            return [f"square {x} has no image under the 90° rotation"]
    return []


def _anchor(tile: Tile) -> Tile:
    """
    Translates a tile by the integer vector that moves its centroid into
    {0, ½, ½i, ½ + ½i}, flooring each coordinate of the centroid. The
    placement is unique: integer translations keep the half-integral part
    of the centroid.

    """
    twice = tile.centroid.twice
    d = GaussInt(-(twice.re // 2), -(twice.im // 2))
    return translate(tile, d, keep_decomposition=True)


@functools.lru_cache(maxsize=4096)
def tile_for(circle: Circle) -> Tile:
    """
    The canonically anchored tile of a circle (or band line).

    """
    if circle.is_line:
        return degenerate_tile(circle)
    return build_tile(find_quadruple(circle))


def build_tile(quad: Quadruple) -> Tile:
    """
    Builds the tile of the child of a quadruple. Curvature-one children get
    a unit square. Otherwise the parent tiles are translated so that their
    centroids sit at c(T_0) ± ½(v_kj - i v_kj) for each rotation (i, j, k)
    of (1, 2, 3), and their union is the tile. The result is anchored so
    that its centroid lies in {0, ½, ½i, ½+½i}.

    Args:
        quad (Quadruple): A proper or semi-proper base quadruple.

    Returns:
        The Tile, with its Decomposition.

    Raises:
        TileError

    """
    child = quad.child
    if child.is_line:
        return degenerate_tile(child)
    if child.c == 1:
        return Tile(frozenset([ZERO]), footprint_of([ZERO]),
                    HalfGauss(ONE + I), child, None)
    if quad.kind is not QuadKind.proper:
        raise TileError(f"Cannot build a tile for {quad.kind.name} "
                        f"quadruple {quad}")

    qv = quadruple_vectors(child)
    parents = qv.quad.parents
    parent_tiles = [tile_for(p) for p in parents]
    offsets = [HalfGauss(u - I * u)
               for u in (qv.parent_pair(i).v for i in (1, 2, 3))]
    center = parent_tiles[0].centroid + offsets[0]

    parts = []
    for i, sign in PART_ORDER:
        ptile = parent_tiles[i - 1]
        target = center + offsets[i - 1] * sign
        try:
            shift = (target - ptile.centroid).to_gauss()
        except ValueError:
            raise TileError(f"Subtile T{i} of {child} cannot be placed at "
                            f"{target}")
        parts.append(TilePart(i, sign, parents[i - 1], shift,
                              translate(ptile, shift)))

    squares = frozenset().union(*(p.tile.squares for p in parts))
    if len(squares) != child.c:
        raise TileError(f"Tile of {child} has area {len(squares)}")
    footprint = footprint_of(squares)
    for part in parts:
        if part.tile.is_degenerate and not part.tile.footprint <= footprint:
            raise TileError(f"Degenerate subtile {part.label} of {child} "
                            "lies outside the tile")
    if twice_centroid(squares) != center.twice:
        raise TileError(f"Tile of {child} has the wrong centroid")

    overlap = _precursor_overlap(qv, parts)
    tile = Tile(squares, footprint, center, child,
                Decomposition(tuple(parts), overlap))
    failures = disk_failures(squares) + symmetry_failures(tile)
    if failures:
        raise TileError(f"Tile of {child}: {'; '.join(failures)}")
    LOGGER.debug(f"Built tile of {child} with {len(squares)} squares")
    return _anchor(tile)


def _precursor_overlap(qv: QuadrupleVectors,
                       parts: Sequence[TilePart]) -> Optional[Tile]:
    first = {p.sign: p.tile for p in parts if p.index == 1}
    common = first[1].squares & first[-1].squares
    precursor = qv.quad.precursor
    if precursor.is_line:
        if common:
            raise TileError(f"Copies of T1 overlap for {qv.circle} although "
                            "the precursor is a line")
        return None
    ptile = tile_for(precursor)
    if len(common) != precursor.c:
        raise TileError(f"Copies of T1 overlap on {len(common)} squares for "
                        f"{qv.circle}, expected {precursor.c}")
    shift = (HalfGauss(twice_centroid(common)) - ptile.centroid).to_gauss()
    overlap = translate(ptile, shift)
    if overlap.squares != common:
        raise TileError(f"Overlap of the T1 copies of {qv.circle} is not a "
                        f"translate of the tile of {precursor}")
    return overlap


def verify_tile(tile: Tile) -> ReportContainer:
    """
    Re-checks the area, disk and symmetry properties of a tile, and the
    subtile relations of its decomposition.

    """
    reports = ReportContainer()
    if tile.is_degenerate:
        return reports
    name = str(tile.circle)
    area = ([] if len(tile.squares) == tile.circle.c
            else [f"{name}: area {len(tile.squares)}"])
    reports.append(CheckReport.from_failures("tile_area", 1, area))
    reports.append(CheckReport.from_failures(
        "tile_disk", 1, [f"{name}: {f}" for f in disk_failures(tile.squares)]))
    reports.append(CheckReport.from_failures(
        "tile_symmetry", 1,
        [f"{name}: {f}" for f in symmetry_failures(tile)]))
    if tile.decomposition is not None:
        reports.append(subtile_checks(tile))
    return reports


def subtile_checks(tile: Tile) -> CheckReport:
    """
    Checks that removing any part T_i^± from a tile leaves a disk touching
    it, and that the two copies of T_2 and of T_3 share no squares.

    """
    failures = []
    checked = 0
    dec = tile.decomposition
    assert dec is not None
    for part in dec.parts:
        if part.tile.is_degenerate:
            continue
        checked += 1
        rest = tile.squares - part.tile.squares
        if not rest:
            continue
        bad = disk_failures(rest)
        if bad:
            failures.append(f"{tile.circle}: T0 minus {part.label}: "
                            + "; ".join(bad))
        rest_tile = Tile(rest, footprint_of(rest), tile.centroid,
                         tile.circle, None)
        if not touching(rest_tile, part.tile):
            failures.append(f"{tile.circle}: T0 minus {part.label} does not "
                            f"touch {part.label}")
    for i in (2, 3):
        plus, minus = dec.part(i, 1).tile, dec.part(i, -1).tile
        if plus.squares & minus.squares:
            failures.append(f"{tile.circle}: copies of T{i} overlap")
    return CheckReport.from_failures("subtile_relations", checked, failures)


def _shared_edge(a: Tile, b: Tile, p: GaussInt, step: GaussInt) -> bool:
    if step == ONE:
        s, t = p, p - I
    else:
        s, t = p, p - ONE
    return ((s in a.squares and t in b.squares)
            or (s in b.squares and t in a.squares))


def touching(a: Tile, b: Tile) -> bool:
    """
    Two tiles touch when they share no squares and their boundaries meet in
    a simple path of positive length.

    """
    if a.squares & b.squares:
        return False
    shared = a.footprint & b.footprint
    if len(shared) < 2:
        return False
    adjacency: Dict[GaussInt, List[GaussInt]] = {p: [] for p in shared}
    edges = 0
    for p in shared:
        for step in (ONE, I):
            q = p + step
            if q in shared and _shared_edge(a, b, p, step):
                adjacency[p].append(q)
                adjacency[q].append(p)
                edges += 1
    if edges != len(shared) - 1:
        return False
    start = next(iter(shared))
    seen = {start}
    queue = collections.deque([start])
    while queue:
        p = queue.popleft()
        for q in adjacency[p]:
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return len(seen) == len(shared)


def touching_triple(a: Tile, b: Tile, c: Tile) -> bool:
    """
    Three tiles form a touching triple when they pairwise touch and share
    exactly one common vertex.

    """
    return (touching(a, b) and touching(b, c) and touching(a, c)
            and len(a.footprint & b.footprint & c.footprint) == 1)


def touching_offsets(tile: Tile, lattice: Lattice2) -> FrozenSet[GaussInt]:
    """
    The lattice vectors λ for which T + λ shares an edge with T.

    Raises:
        TileError

    """
    reps = {lattice.residue(x): x for x in tile.squares}
    offsets = set()
    for x in tile.squares:
        for step in EDGE_STEPS:
            y = x + step
            if y in tile.squares:
                continue
            try:
                offsets.add(y - reps[lattice.residue(y)])
            except KeyError:
                raise TileError(f"Square {y} next to the tile of "
                                f"{tile.circle} is not covered")
    return frozenset(offsets)


def _lattice_points_in_box(lattice: Lattice2, lo: GaussInt,
                           hi: GaussInt) -> List[GaussInt]:
    corners = [GaussInt(a, b) for a in (lo.re, hi.re) for b in (lo.im, hi.im)]
    coords = [lattice.coords(p) for p in corners]
    m0 = math.floor(min(m for m, _ in coords))
    m1 = math.ceil(max(m for m, _ in coords))
    n0 = math.floor(min(n for _, n in coords))
    n1 = math.ceil(max(n for _, n in coords))
    points = []
    for m in range(m0, m1 + 1):
        for n in range(n0, n1 + 1):
            p = lattice.b1 * m + lattice.b2 * n
            if lo.re <= p.re <= hi.re and lo.im <= p.im <= hi.im:
                points.append(p)
    return points


def verify_tiling(tile: Tile, lattice: Lattice2, periods: int = 3,
                  qv: Optional[QuadrupleVectors] = None) -> ReportContainer:
    """
    Sweeps a square window spanning the given number of lattice periods in
    each direction, counting how many lattice translates of the tile cover
    each square, and checks the neighbours and touching triples of the
    tiling.

    Args:
        tile (Tile): The tile.
        lattice (Lattice2): The lattice of translations.
        periods (int): The half-width of the window in periods.
        qv (QuadrupleVectors, optional): The vectors of the tile's circle,
                                         for the neighbour checks.

    Returns:
        A ReportContainer.

    """
    reports = ReportContainer()
    name = str(tile.circle)
    span = max(max(abs(b.re), abs(b.im)) for b in (lattice.b1, lattice.b2))
    half = periods * span
    size = 2 * half
    counts = np.zeros((size, size), dtype=np.int64)
    xs = np.array([x.re for x in tile.squares], dtype=np.int64)
    ys = np.array([x.im for x in tile.squares], dtype=np.int64)
    lo = GaussInt(-half - int(xs.max()), -half - int(ys.max()))
    hi = GaussInt(half - 1 - int(xs.min()), half - 1 - int(ys.min()))
    for lam in _lattice_points_in_box(lattice, lo, hi):
        sx = xs + lam.re + half
        sy = ys + lam.im + half
        mask = (sx >= 0) & (sx < size) & (sy >= 0) & (sy < size)
        np.add.at(counts, (sy[mask], sx[mask]), 1)
    bad = np.argwhere(counts != 1)
    failures = [f"{name}: square ({x - half}, {y - half}) covered "
                f"{counts[y, x]} times" for y, x in bad[:10]]
    reports.append(CheckReport.from_failures("tiling_cover", size * size,
                                             failures))

    if tile.circle.c > 1 and qv is not None:
        offsets = touching_offsets(tile, lattice)
        expected = frozenset(s * v for v in qv.v for s in (1, -1))
        failures = []
        if offsets != expected:
            failures.append(f"{name}: touching offsets "
                            f"{sorted(map(str, offsets))} differ from ±v_i0")
        reports.append(CheckReport.from_failures("tiling_neighbors", 1,
                                                 failures))
        reports.append(_touching_triple_report(tile, qv))
    return reports


def _touching_triple_report(tile: Tile, qv: QuadrupleVectors) -> CheckReport:
    failures = []
    checked = 0
    for i, j in ((1, 2), (2, 3), (3, 1)):
        checked += 1
        if not touching_triple(tile, translate(tile, qv.v[i - 1]),
                               translate(tile, -qv.v[j - 1])):
            failures.append(f"{tile.circle}: T0, T0 + v_{i}0, T0 - v_{j}0 "
                            "do not form a touching triple")
        parent = qv.quad.circles[i]
        if parent.is_line:
            continue
        checked += 1
        ptile = tile_for(parent)
        target = tile.centroid + HalfGauss(qv.v[i - 1] + I * qv.v[i - 1])
        try:
            shift = (target - ptile.centroid).to_gauss()
        except ValueError:
            failures.append(f"{tile.circle}: T{i} cannot be centred at "
                            f"{target}")
            continue
        if not touching_triple(tile, translate(tile, qv.v[i - 1]),
                               translate(ptile, shift)):
            failures.append(f"{tile.circle}: T0, T0 + v_{i}0 and T{i} do "
                            "not form a touching triple")
    return CheckReport.from_failures("touching_triples", checked, failures)


def boundary_offsets(lattice: Lattice2, neighbors: FrozenSet[GaussInt],
                     start: GaussInt, end: GaussInt) -> List[GaussInt]:
    """
    Computes the boundary string from the tile at lattice point start to
    the one at end: the tiles on the closed left side of every tiling edge
    crossing the open segment between the centroids, ordered along the
    segment. Where consecutive tiles of the string do not touch (this only
    occurs in the square tiling), the common neighbour on the left is
    inserted.

    Returns:
        The lattice offsets of the tiles of the string.

    """
    if start == end:
        return [start]
    d = end - start
    norm = d.norm()
    reach = max(max(abs(n.re), abs(n.im)) for n in neighbors)
    lo = GaussInt(min(start.re, end.re) - reach, min(start.im, end.im) - reach)
    hi = GaussInt(max(start.re, end.re) + reach, max(start.im, end.im) + reach)
    crossings = []
    for p in _lattice_points_in_box(lattice, lo, hi):
        cp = d.cross(p - start)
        if cp < 0:
            continue
        for n in neighbors:
            q = p + n
            cq = d.cross(q - start)
            if cq >= 0:
                continue
            # crossing point p + s (q - p), s = cp / (cp - cq), projected
            # onto the segment as t = <x - start, d> / |d|²
            s_num, s_den = cp, cp - cq
            along = (d.dot(p - start) * s_den + s_num * d.dot(n))
            if 0 < along < norm * s_den:
                crossings.append((Fraction(along, s_den), p))
    crossings.sort(key=lambda c: c[0])
    string = [start]
    for _, p in crossings:
        if p not in string:
            string.append(p)
    if string[-1] != end:
        string.append(end)
    result = [string[0]]
    for p in string[1:]:
        prev = result[-1]
        if p - prev not in neighbors:
            common = [prev + n for n in neighbors
                      if (p - prev - n) in neighbors
                      and d.cross(prev + n - start) >= 0]
            if common:
                result.append(min(common,
                                  key=lambda x: d.cross(x - start)))
        result.append(p)
    return result


def boundary_string(tile: Tile, lattice: Lattice2, start: GaussInt,
                    end: GaussInt) -> List[Tile]:
    """
    The boundary string between the translates T + start and T + end of the
    regular tiling T + Λ.

    """
    neighbors = touching_offsets(tile, lattice)
    return [translate(tile, p)
            for p in boundary_offsets(lattice, neighbors, start, end)]


def boundary_concatenation_check(tile: Tile,
                                 qv: QuadrupleVectors) -> CheckReport:
    """
    For every parent C_i of positive curvature, checks that the boundary
    string in the C_i tiling from R_i^- to R_i^+, the copies of T_i centred
    at c(T_0) + ½(v_i0 ∓ v_0i), passes through T_i^- and splits there into
    the two partial strings.

    """
    failures = []
    checked = 0
    dec = tile.decomposition
    if dec is None:
        return CheckReport.from_failures("boundary_strings", 0, [])
    for i in (1, 2, 3):
        parent = qv.quad.circles[i]
        if parent.is_line:
            continue
        checked += 1
        ptile = tile_for(parent)
        pqv = quadruple_vectors(parent)
        lattice = pqv.lattice
        v = qv.v[i - 1]
        v_rev = I * v
        c_minus = tile.centroid + HalfGauss(v - v_rev)
        c_plus = tile.centroid + HalfGauss(v + v_rev)
        mid = dec.part(i, -1).shift
        try:
            start = (c_minus - ptile.centroid).to_gauss() - mid
            end = (c_plus - ptile.centroid).to_gauss() - mid
        except ValueError:
            failures.append(f"{tile.circle}: R_{i}^± are not translates of "
                            f"the tile of {parent}")
            continue
        if not (lattice.contains(start) and lattice.contains(end)):
            failures.append(f"{tile.circle}: R_{i}^± and T_{i}^- are not in "
                            "one regular tiling")
            continue
        neighbors = touching_offsets(ptile, lattice)
        full = boundary_offsets(lattice, neighbors, start, end)
        first = boundary_offsets(lattice, neighbors, start, ZERO)
        second = boundary_offsets(lattice, neighbors, ZERO, end)
        if full != first + second[1:]:
            failures.append(f"{tile.circle}: boundary string of C_{i} does "
                            f"not split at T_{i}^-")
    return CheckReport.from_failures("boundary_strings", checked, failures)


def double_decomposition(tile: Tile) -> DoubleDecomposition:
    """
    Decomposes the two copies of the largest parent T_1 further into the
    parts of its own decomposition, and identifies the part S_4^+ of
    T_1^- with the part Q_4^- of T_1^+, both copies of the tile of the
    precursor C_4.

    Returns:
        The DoubleDecomposition; not applicable when the largest parent
        has curvature at most one.

    Raises:
        TileError

    """
    dec = tile.decomposition
    if dec is None or dec.part(1, 1).circle.c <= 1:
        return DoubleDecomposition((), None, False)
    quad = find_quadruple(tile.circle)
    precursor = quad.precursor
    t1 = tile_for(dec.part(1, 1).circle)
    assert t1.decomposition is not None
    tiles: List[Tuple[str, Tile]] = []
    for i in (2, 3):
        for sign in (1, -1):
            part = dec.part(i, sign)
            tiles.append((part.label, part.tile))
    copies = {}
    for prefix, sign in (("S", -1), ("Q", 1)):
        shift = dec.part(1, sign).shift
        labelled = {}
        for sub in translate(t1, shift, keep_decomposition=True) \
                .decomposition.parts:  # type: ignore
            if sub.circle == precursor:
                key = f"{prefix}4{'+' if sub.sign > 0 else '-'}"
            else:
                key = f"{prefix}{sub.label}"
            labelled[key] = sub.tile
            tiles.append((key, sub.tile))
        copies[prefix] = labelled
    identified = None
    for s_sign in ("+", "-"):
        for q_sign in ("+", "-"):
            s_tile = copies["S"].get(f"S4{s_sign}")
            q_tile = copies["Q"].get(f"Q4{q_sign}")
            if s_tile is not None and q_tile is not None \
                    and s_tile.same_squares(q_tile):
                identified = (f"S4{s_sign}", f"Q4{q_sign}")
    if identified is None:
        raise TileError(f"No copy of the precursor {precursor} is shared by "
                        f"the two copies of T1 in the tile of {tile.circle}")
    return DoubleDecomposition(tuple(tiles), identified, True)
