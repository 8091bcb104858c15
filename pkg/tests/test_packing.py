from fractions import Fraction
import math

from hypothesis import strategies as st, given
import pytest

from apollonite.exactmath import GaussInt, RatGauss
from apollonite.exceptions import DescartesError, TangencyError
from apollonite.packing import (Circle, QuadKind, Quadruple, Symmetry,
                                Window, apply_symmetry, base_quadruple,
                                classify_quadruple, descartes_holds,
                                diamond_circle, enumerate_band,
                                find_quadruple, ford_circle, is_tangent,
                                soddy_complete, successor, tangency_point)

BAND = Window.square(0, 2)


def children(max_curvature, window=BAND):
    return {q.child for q in enumerate_band(max_curvature, window)}


def test_soddy_complete():
    assert soddy_complete(Circle.of(76, 7, 60), Circle.of(4, 1, 4),
                          Circle.of(9, 1, 6), Circle.of(25, 1, 20)) \
        == Circle.of(153, 17, 120)
    assert soddy_complete(Circle.of(1, 1, 0), Circle.of(0, 1, 0),
                          Circle.of(0, -1, 0), Circle.of(1, 1, -2)) \
        == Circle.of(1, 1, 2)
    assert soddy_complete(Circle.of(25, 1, 20), Circle.of(9, 1, 6),
                          Circle.of(0, -1, 0), Circle.of(4, 1, 4)) \
        == Circle.of(64, 1, 48)


def test_soddy_complete_rejects_non_quadruples():
    with pytest.raises((DescartesError, TangencyError)):
        soddy_complete(Circle.of(4, 1, 4), Circle.of(9, 1, 6),
                       Circle.of(1, 1, 0), Circle.of(25, 1, 20))


def test_tangency_point():
    assert tangency_point(Circle.of(1, 1, 0), Circle.of(0, -1, 0)) \
        == RatGauss(0, 0)
    assert tangency_point(Circle.of(1, 1, 0), Circle.of(1, 1, 2)) \
        == RatGauss(1, 1)
    assert tangency_point(Circle.of(4, 1, 4), Circle.of(9, 1, 6)) \
        == RatGauss(Fraction(2, 13), Fraction(10, 13))


def test_tangency_point_of_disjoint_circles():
    with pytest.raises(TangencyError):
        tangency_point(Circle.of(1, 1, 0), Circle.of(1, 1, 4))


def test_classify_quadruple():
    proper = Quadruple.of(Circle.of(153, 17, 120), Circle.of(76, 7, 60),
                          Circle.of(4, 1, 4), Circle.of(9, 1, 6))
    assert proper.kind is QuadKind.proper
    base = Quadruple.of(Circle.of(1, 1, 0), Circle.of(1, 1, 2),
                        Circle.of(0, 1, 0), Circle.of(0, -1, 0))
    assert base.kind is QuadKind.semi_proper_base
    improper = Quadruple.of(Circle.of(76, 7, 60), Circle.of(153, 17, 120),
                            Circle.of(4, 1, 4), Circle.of(9, 1, 6))
    assert improper.kind is QuadKind.improper


def test_classify_rejects_non_descartes():
    with pytest.raises(DescartesError):
        Quadruple.of(Circle.of(4, 1, 4), Circle.of(1, 1, 0),
                     Circle.of(1, 1, 0), Circle.of(0, 1, 0))


def test_enumerate_small_bounds():
    assert not children(1)
    assert Circle.of(4, 1, 4) in children(4)
    assert all(c.c <= 4 for c in children(4))


def test_enumerate_rejects_zero_bound():
    with pytest.raises(ValueError):
        list(enumerate_band(0, BAND))


def test_enumerated_quadruples_are_proper_and_unique():
    quads = list(enumerate_band(60, BAND))
    assert len({q.child for q in quads}) == len(quads)
    for quad in quads:
        assert quad.kind is QuadKind.proper
        assert descartes_holds(quad.circles)
        assert BAND.contains(quad.child.center)
        for parent in quad.parents:
            assert is_tangent(quad.child, parent)


def _ford_children(max_q):
    return {ford_circle(p, q) for q in range(2, max_q + 1)
            for p in range(1, q) if math.gcd(p, q) == 1}


def test_enumerate_includes_ford_circles():
    assert _ford_children(5) <= children(25)


@pytest.mark.slow
def test_enumerate_includes_ford_circles_up_to_64():
    assert _ford_children(8) <= children(64)


def test_enumerate_includes_diamonds():
    found = children(40)
    for k in (1, 2, 3, 4):
        assert diamond_circle(k) in found


@pytest.mark.parametrize("circle,sym,expected", [
    (Circle.of(4, 1, 4), Symmetry.negate, Circle.of(4, -1, -4)),
    (Circle.of(1, 1, 0), Symmetry.shift_i, Circle.of(1, 1, 2)),
    (Circle.of(153, 17, 120), Symmetry.conjugate, Circle.of(153, 17, -120)),
    (Circle.of(4, 1, 4), Symmetry.shift_1, Circle.of(4, 9, 4)),
])
def test_apply_symmetry(circle, sym, expected):
    assert apply_symmetry(circle, sym) == expected


@given(sym=st.sampled_from(list(Symmetry)),
       idx=st.integers(min_value=0, max_value=10))
def test_symmetries_preserve_tangency(sym, idx):
    quads = sorted(enumerate_band(30, BAND), key=lambda q: q.child)
    quad = quads[idx % len(quads)]
    image = [apply_symmetry(c, sym) for c in quad.circles]
    assert descartes_holds(tuple(image))
    for parent in image[1:]:
        assert is_tangent(image[0], parent)


def test_ford_and_diamond_circles():
    assert ford_circle(1, 2) == Circle.of(4, 1, 4)
    assert diamond_circle(1) == Circle.of(4, 1, 4)
    assert diamond_circle(2) == Circle.of(12, 7, 12)
    with pytest.raises(ValueError):
        ford_circle(2, 4)
    with pytest.raises(ValueError):
        diamond_circle(0)


def test_find_quadruple():
    quad = find_quadruple(Circle.of(153, 17, 120))
    assert quad.child == Circle.of(153, 17, 120)
    assert {c for c in quad.parents} == {Circle.of(76, 7, 60),
                                          Circle.of(4, 1, 4),
                                          Circle.of(9, 1, 6)}
    assert quad.precursor == Circle.of(25, 1, 20)


def test_find_quadruple_rejects_foreign_circles():
    with pytest.raises(ValueError):
        find_quadruple(Circle.of(4, 3, 4))
    with pytest.raises(ValueError):
        find_quadruple(Circle.of(1, 2, 0))


def test_circle_json():
    circle = Circle.of(153, 17, 120)
    assert circle.to_json() == {"c": 153, "cx": 17, "cy": 120}
    assert Circle.from_json(circle.to_json()) == circle


def test_invalid_circles():
    with pytest.raises(ValueError):
        Circle.of(-1, 0, 0)
    with pytest.raises(ValueError):
        Circle.of(0, 1, 1)
    with pytest.raises(ValueError):
        Circle.of(0, 1, 0).center


def test_base_quadruple_and_successor():
    base = base_quadruple(GaussInt(0, 0))
    assert base.kind is QuadKind.semi_proper_base
    assert classify_quadruple(base) is QuadKind.semi_proper_base
    children = {successor(base, r).child for r in range(3)}
    assert Circle.of(4, 1, 4) in children
    for r in range(3):
        assert descartes_holds(successor(base, r).circles)


def test_successors_of_a_proper_quadruple():
    quad = find_quadruple(Circle.of(9, 1, 6))
    for r in range(3):
        child = successor(quad, r)
        assert child.kind is QuadKind.proper
        assert child.child.c > quad.child.c
        assert child.parents[0] == quad.child


def test_tangency_points_run_clockwise():
    quad = find_quadruple(Circle.of(153, 17, 120))
    t1, t2, t3 = quad.tangency_points()
    d2, d3 = t2 - t1, t3 - t1
    assert d2.re * d3.im - d2.im * d3.re < 0


def test_canonical_parent_order():
    for quad in enumerate_band(60, BAND):
        curvatures = tuple(p.c for p in quad.parents)
        assert curvatures[0] == max(curvatures)
        for r in (1, 2):
            assert curvatures >= tuple(p.c for p in quad.rotate(r).parents)
        assert quad.canonical() == quad
