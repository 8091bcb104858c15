from hypothesis import strategies as st, given
import numpy as np
import pytest

from apollonite.exactmath import GaussInt, RatGauss
from apollonite.latvec import peak_matrix
from apollonite.odometer import (PATTERN_VALUES, PatternGrid, Rect,
                                 find_translate, harmonic_quadratic,
                                 harmonic_shift, is_odometer_translation,
                                 is_simply_connected, laplacian,
                                 lattice_vector_b, maximality_probe,
                                 odometer_for, pattern_counts, pattern_table,
                                 peak_consistency, slope, tile_odometer_checks,
                                 tile_odometer_for, verify_odometer)
from apollonite.packing import Circle, Window, enumerate_band

BAND = Window.square(0, 2)

small = st.integers(min_value=-3, max_value=3)


def small_circles(max_curvature=30):
    return sorted({q.child for q in enumerate_band(max_curvature, BAND)})


def test_base_tile_odometers():
    h = tile_odometer_for(Circle.of(1, 1, 0))
    assert h.values == {GaussInt(0, 0): 0, GaussInt(1, 0): 0,
                        GaussInt(0, 1): 0, GaussInt(1, 1): 0}
    assert h.slope == RatGauss(0, 0)
    assert tile_odometer_for(Circle.of(1, 1, 2)).values[GaussInt(1, 1)] == 1


def test_line_tile_odometer():
    h = tile_odometer_for(Circle.of(0, 1, 0))
    assert h.slope is None
    assert set(h.values.values()) == {0}


def test_tile_odometers_are_normalised():
    for circle in small_circles():
        h = tile_odometer_for(circle)
        assert min(h.values.values()) == 0
        assert frozenset(h.values) == h.tile.footprint
        assert tile_odometer_checks(h).passed


@pytest.mark.parametrize("circle", [Circle.of(1, 1, 0)] + small_circles())
def test_verify_odometer(circle):
    reports = verify_odometer(odometer_for(circle), periods=2, samples=30)
    assert reports.passed, reports.failed()


def test_interior_formula_is_checked():
    reports = verify_odometer(odometer_for(Circle.of(9, 1, 6)), periods=1,
                              samples=5)
    assert reports.get_by_name("interior_formula")
    assert reports.get_by_name("web")


def test_pattern_values():
    g = odometer_for(Circle.of(4, 1, 4))
    grid = laplacian(g, Rect.centered(9, 9))
    assert set(grid.counts()) <= set(PATTERN_VALUES)
    assert grid.value(GaussInt(0, 0)) == -2


def test_pattern_counts():
    for circle in small_circles():
        counts = pattern_counts(odometer_for(circle))
        assert sum(counts.values()) == circle.c
        assert sum(v * n for v, n in counts.items()) == 1


def test_pattern_table():
    rows = pattern_table(20, progress=False)
    assert [row.circle for row in rows] \
        == sorted(small_circles(20), key=lambda c: (c.c, c.w))
    assert all(sum(row.counts.values()) == row.circle.c for row in rows)


def test_peak_consistency():
    for circle in [Circle.of(1, 1, 0)] + small_circles():
        assert peak_consistency(odometer_for(circle)) == []


def test_maximality_probe():
    report = maximality_probe(odometer_for(Circle.of(4, 1, 4)), 4)
    assert report.passed
    assert report.checked == 1


def test_maximality_probe_of_a_larger_tile():
    report = maximality_probe(odometer_for(Circle.of(12, 7, 12)), 3)
    assert report.passed, report.failures
    assert report.checked > 0


def test_find_translate():
    for circle in small_circles(20):
        found = find_translate(tile_odometer_for(circle), odometer_for(circle))
        assert found is not None


@given(a=small, b=small)
def test_harmonic_quadratic_is_harmonic(a, b):
    w = GaussInt(a, b)
    for x in (GaussInt(0, 0), GaussInt(2, -1), GaussInt(-3, 4)):
        lap = sum(harmonic_quadratic(w, x + s) for s in
                  (GaussInt(1, 0), GaussInt(-1, 0), GaussInt(0, 1),
                   GaussInt(0, -1))) - 4 * harmonic_quadratic(w, x)
        assert lap == 0


def test_harmonic_shift_by_zero():
    g = odometer_for(Circle.of(9, 1, 6))
    assert harmonic_shift(g, GaussInt(0, 0)) == g


@pytest.mark.parametrize("w", [GaussInt(1, 0), GaussInt(0, 1),
                               GaussInt(-1, 2)])
def test_harmonic_shift_keeps_the_pattern(w):
    g = odometer_for(Circle.of(9, 1, 6))
    shifted = harmonic_shift(g, w)
    window = Rect.centered(15, 15)
    assert np.array_equal(laplacian(g, window).values,
                          laplacian(shifted, window).values)
    for x in window.points():
        assert shifted.value(x) == g.value(x) + harmonic_quadratic(w, x)
    assert shifted.circle.center == g.circle.center + RatGauss.of(w * 2)


def test_is_odometer_translation():
    h2 = {GaussInt(0, 0): 0, GaussInt(1, 0): 1, GaussInt(0, 1): 2,
          GaussInt(1, 1): 4}
    d = GaussInt(3, 1)
    a = GaussInt(2, -1)
    h1 = {x + d: hx + a.dot(x + d) + 7 for x, hx in h2.items()}
    found = is_odometer_translation(h1, h2)
    assert found == (d, a, 7)
    assert is_odometer_translation(h1, {GaussInt(0, 0): 0}) is None
    h1[GaussInt(4, 2)] += 1
    assert is_odometer_translation(h1, h2) is None


def test_is_odometer_translation_on_a_line():
    h = {GaussInt(k, 0): k * k for k in range(3)}
    with pytest.raises(ValueError):
        is_odometer_translation(h, h)


def test_slope():
    values = {GaussInt(x, y): 2 * x - y for x in range(3) for y in range(3)}
    assert slope(values) == RatGauss(2, -1)
    assert slope({GaussInt(0, 0): 5}) is None


def test_rect():
    assert Rect.centered(3, 3) == Rect(-1, -1, 1, 1)
    assert Rect.centered(4, 2, GaussInt(10, 0)) == Rect(9, 0, 12, 1)
    assert Rect.centered(4, 2).width == 4
    with pytest.raises(ValueError):
        Rect(1, 0, 0, 0)
    with pytest.raises(ValueError):
        Rect.centered(0, 3)


def test_pattern_grid():
    window = Rect(0, 0, 2, 1)
    grid = PatternGrid(window, np.array([[1, 0, 0], [-1, -2, 1]]))
    assert grid.value(GaussInt(1, 1)) == -2
    assert grid.counts() == {-2: 1, -1: 1, 0: 2, 1: 2}
    with pytest.raises(KeyError):
        grid.value(GaussInt(3, 0))
    with pytest.raises(ValueError):
        PatternGrid(window, np.zeros((3, 2), dtype=np.int64))


def test_is_simply_connected():
    ring = frozenset(GaussInt(a, b) for a in range(3) for b in range(3)
                     if (a, b) != (1, 1))
    assert not is_simply_connected(ring)
    assert is_simply_connected(ring | {GaussInt(1, 1)})


@pytest.mark.parametrize("circle", [Circle.of(4, 1, 4), Circle.of(9, 1, 6),
                                    Circle.of(12, 7, 12)])
def test_lattice_vector_b(circle):
    g = odometer_for(circle)
    A = peak_matrix(circle)
    b = lattice_vector_b(g)

    def residual(x):
        return g.value(x) - A.quadratic_form(x) / 2 - b.re * x.re \
            - b.im * x.im

    for x in Rect.centered(5, 5).points():
        for v in g.basis:
            assert residual(x + v) == residual(x)


def test_values_at_far_from_the_origin():
    g = odometer_for(Circle.of(4, 1, 4))
    far = GaussInt(10 ** 10, 3)
    values = g.values_at(np.array([far.re, 0]), np.array([far.im, 0]))
    assert values[0] == g.value(far)
    assert values[0] > 2 ** 63
    assert values[1] == 0


@pytest.mark.slow
def test_odometers_up_to_200():
    for circle in small_circles(200):
        reports = verify_odometer(odometer_for(circle), periods=3,
                                  samples=100)
        assert reports.passed, reports.failed()


@pytest.mark.slow
def test_maximality_probe_up_to_60():
    for circle in small_circles(60):
        report = maximality_probe(odometer_for(circle), 6)
        assert report.passed, report.failures
