import pytest

from apollonite.exactmath import GaussInt, HalfGauss
from apollonite.latvec import quadruple_vectors
from apollonite.packing import Circle, Window, enumerate_band
from apollonite.render import tile_ascii
from apollonite.tiles import (Tile, boundary_concatenation_check,
                              boundary_string, disk_failures,
                              double_decomposition, footprint_of, tile_for,
                              touching, touching_offsets, twice_centroid,
                              verify_tile, verify_tiling)

BAND = Window.square(0, 2)


def small_circles(max_curvature=60):
    return sorted({q.child for q in enumerate_band(max_curvature, BAND)})


def make_tile(squares):
    squares = frozenset(squares)
    return Tile(squares, footprint_of(squares),
                HalfGauss(twice_centroid(squares)), Circle.of(1, 1, 0), None)


def test_tile_of_4_1_4_is_a_block():
    tile = tile_for(Circle.of(4, 1, 4))
    assert tile.squares == {GaussInt(-1, -1), GaussInt(-1, 0),
                            GaussInt(0, -1), GaussInt(0, 0)}
    assert tile.centroid == HalfGauss(GaussInt(0, 0))
    assert tile_ascii(tile) == "##\n##\n"


def test_unit_circle_tile():
    tile = tile_for(Circle.of(1, 1, 0))
    assert len(tile) == 1
    assert tile.decomposition is None
    assert tile_ascii(tile) == "#\n"


def test_line_tile_is_degenerate():
    tile = tile_for(Circle.of(0, 1, 0))
    assert tile.is_degenerate
    assert tile.footprint == {GaussInt(0, 0)}
    assert tile_ascii(tile) == ""


def test_tiles_have_area_c_and_pass_checks():
    for circle in small_circles():
        tile = tile_for(circle)
        assert len(tile) == circle.c
        reports = verify_tile(tile)
        assert reports.passed, reports.failed()


def test_degenerate_parts_lie_in_the_footprint():
    for circle in small_circles(30):
        tile = tile_for(circle)
        for part in tile.decomposition.parts:
            if part.tile.is_degenerate:
                assert part.tile.footprint <= tile.footprint


@pytest.mark.parametrize("circle", [Circle.of(1, 1, 0), Circle.of(4, 1, 4),
                                    Circle.of(9, 1, 6), Circle.of(12, 7, 12),
                                    Circle.of(25, 1, 20)])
def test_tiling(circle):
    qv = quadruple_vectors(circle)
    reports = verify_tiling(tile_for(circle), qv.lattice, 2, qv)
    assert reports.passed, reports.failed()


def test_4_1_4_has_six_neighbours():
    qv = quadruple_vectors(Circle.of(4, 1, 4))
    offsets = touching_offsets(tile_for(Circle.of(4, 1, 4)), qv.lattice)
    assert len(offsets) == 6
    assert offsets == {s * v for v in qv.v for s in (1, -1)}


@pytest.mark.slow
def test_tiling_of_153_17_120():
    circle = Circle.of(153, 17, 120)
    qv = quadruple_vectors(circle)
    reports = verify_tiling(tile_for(circle), qv.lattice, 3, qv)
    assert reports.passed, reports.failed()


def test_decomposition_of_153_17_120():
    tile = tile_for(Circle.of(153, 17, 120))
    dec = tile.decomposition
    assert len(tile) == 153
    areas = sorted(len(part.tile) for part in dec.parts)
    assert areas == [4, 4, 9, 9, 76, 76]
    common = dec.part(1, 1).tile.squares & dec.part(1, -1).tile.squares
    assert len(common) == 25
    assert dec.overlap is not None and dec.overlap.squares == common


def test_double_decomposition():
    double = double_decomposition(tile_for(Circle.of(153, 17, 120)))
    assert double.applicable
    assert double.identified is not None
    tiles = double.as_dict()
    s_label, q_label = double.identified
    assert tiles[s_label].same_squares(tiles[q_label])
    assert len(tiles[s_label]) == 25


def test_double_decomposition_needs_a_large_parent():
    assert not double_decomposition(tile_for(Circle.of(4, 1, 4))).applicable


def test_boundary_concatenation():
    for circle in small_circles(40):
        report = boundary_concatenation_check(
            tile_for(circle), quadruple_vectors(circle))
        assert report.passed, report.failures


def test_boundary_string_endpoints():
    circle = Circle.of(9, 1, 6)
    tile = tile_for(circle)
    lattice = quadruple_vectors(circle).lattice
    single = boundary_string(tile, lattice, GaussInt(0, 0), GaussInt(0, 0))
    assert len(single) == 1 and single[0].same_squares(tile)
    v = lattice.b1
    string = boundary_string(tile, lattice, GaussInt(0, 0), v)
    assert len(string) >= 2
    assert string[0].same_squares(tile)
    assert string[-1].squares == {x + v for x in tile.squares}


def test_touching():
    a = make_tile([GaussInt(0, 0)])
    right = make_tile([GaussInt(1, 0)])
    diagonal = make_tile([GaussInt(1, 1)])
    assert touching(a, right)
    assert not touching(a, diagonal)
    assert not touching(a, a)


def test_disk_failures():
    ell = frozenset([GaussInt(0, 0), GaussInt(1, 0), GaussInt(0, 1)])
    assert disk_failures(ell) == []
    pinch = frozenset([GaussInt(0, 0), GaussInt(1, 1)])
    assert disk_failures(pinch)
    ring = frozenset(GaussInt(a, b) for a in range(3) for b in range(3)
                     if (a, b) != (1, 1))
    assert any("hole" in f for f in disk_failures(ring))


def test_tiles_are_anchored_at_the_origin():
    for circle in small_circles():
        twice = tile_for(circle).centroid.twice
        assert twice.re in (0, 1) and twice.im in (0, 1)


@pytest.mark.slow
def test_tiles_up_to_200():
    for circle in small_circles(200):
        tile = tile_for(circle)
        assert len(tile) == circle.c
        reports = verify_tile(tile)
        assert reports.passed, reports.failed()
        qv = quadruple_vectors(circle)
        reports = verify_tiling(tile, qv.lattice, 3, qv)
        assert reports.passed, reports.failed()
