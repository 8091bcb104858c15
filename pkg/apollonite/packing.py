#! /usr/bin/env python3
"""
This module represents the circles of the band packing in curvature
coordinates and generates their Descartes quadruples by walking the
semi-proper forest.

"""
from __future__ import annotations

import dataclasses
import enum
import functools
import logging
import math
from typing import (Any, Dict, Generic, Iterator, Optional, Protocol,
                    Tuple, TypeVar)

from .exactmath import Fraction, GaussInt, I, RatGauss, ZERO
from .exceptions import DescartesError, TangencyError


LOGGER = logging.getLogger(__name__)

State = TypeVar("State")


@dataclasses.dataclass(eq=True, frozen=True, order=True)
class Circle:
    """
    A circle (c, w) of the band packing in curvature coordinates, with w the
    curvature times the center. Lines have c = 0 and w = ±1, the unit
    normal.

    """
    __slots__ = ("c", "w",)

    c: int
    w: GaussInt

    def __post_init__(self):
        if self.c < 0:
            raise ValueError(f"Negative curvature {self.c}")
        if self.c == 0 and self.w not in (GaussInt(1, 0), GaussInt(-1, 0)):
            raise ValueError(f"Invalid line normal {self.w}")

    def __str__(self) -> str:
        return f"({self.c},{self.w.re},{self.w.im})"

    @classmethod
    def of(cls, c: int, cx: int, cy: int) -> Circle:
        return cls(c, GaussInt(cx, cy))

    @classmethod
    def from_json(cls, record: Dict[str, Any]) -> Circle:
        return cls.of(int(record["c"]), int(record["cx"]), int(record["cy"]))

    def to_json(self) -> Dict[str, int]:
        return {"c": self.c, "cx": self.w.re, "cy": self.w.im}

    @property
    def is_line(self) -> bool:
        return self.c == 0

    @property
    def center(self) -> RatGauss:
        """
        The exact center w/c.

        Raises:
            ValueError

        """
        if self.is_line:
            raise ValueError("Lines have no center")
        return RatGauss(Fraction(self.w.re, self.c),
                        Fraction(self.w.im, self.c))

    def _combine(self, other: Circle, sign: int) -> Tuple[int, GaussInt]:
        return self.c + sign * other.c, self.w + other.w * sign


class QuadKind(enum.Enum):
    """
    An enumeration of the Descartes quadruple classifications.

    """
    proper = enum.auto()
    semi_proper_base = enum.auto()
    improper = enum.auto()


class Symmetry(enum.Enum):
    """
    An enumeration of the generating symmetries of the band packing.

    """
    negate = enum.auto()
    conjugate = enum.auto()
    shift_i = enum.auto()
    shift_1 = enum.auto()


@dataclasses.dataclass(eq=True, frozen=True)
class Window:
    """
    A closed axis-aligned rectangle [x0, x1] x [y0, y1] with exact rational
    bounds.

    """
    __slots__ = ("x0", "x1", "y0", "y1",)

    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def __post_init__(self):
        for attr in Window.__slots__:
            object.__setattr__(self, attr, Fraction(getattr(self, attr)))
        if self.x0 > self.x1 or self.y0 > self.y1:
            raise ValueError(f"Empty window {self}")

    @classmethod
    def square(cls, lo, hi) -> Window:
        return cls(lo, hi, lo, hi)

    @classmethod
    def point(cls, p: RatGauss) -> Window:
        return cls(p.re, p.re, p.im, p.im)

    def contains(self, p: RatGauss) -> bool:
        return self.x0 <= p.re <= self.x1 and self.y0 <= p.im <= self.y1

    def cells(self) -> Iterator[GaussInt]:
        """
        Yields the z for which the open cell (2 Re z, 2 Re z + 2) x
        (2 Im z, 2 Im z + 2), the home of every descendant of the base
        quadruple at z, meets the window.

        """
        for a in range(math.floor(self.x0 / 2), math.ceil(self.x1 / 2)):
            for b in range(math.floor(self.y0 / 2), math.ceil(self.y1 / 2)):
                yield GaussInt(a, b)


@dataclasses.dataclass(eq=True, frozen=True)
class Quadruple:
    """
    An ordered Descartes quadruple (C0, C1, C2, C3): the child C0 and its
    three parents.

    """
    __slots__ = ("circles", "kind",)

    circles: Tuple[Circle, Circle, Circle, Circle]
    kind: QuadKind

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.circles) + ")"

    @classmethod
    def of(cls, c0: Circle, c1: Circle, c2: Circle, c3: Circle) -> Quadruple:
        """
        Builds the quadruple and classifies it.

        Raises:
            DescartesError

        """
        circles = (c0, c1, c2, c3)
        return cls(circles, _classify(circles))

    @property
    def child(self) -> Circle:
        return self.circles[0]

    @property
    def parents(self) -> Tuple[Circle, Circle, Circle]:
        return self.circles[1], self.circles[2], self.circles[3]

    @property
    def precursor(self) -> Circle:
        """
        The other Soddy circle of the three parents.

        """
        return soddy_complete(*self.parents, self.child)

    def rotate(self, r: int) -> Quadruple:
        """
        Cyclically rotates the parents so that C_{1+r} comes first.

        """
        r %= 3
        p = self.parents
        return Quadruple((self.child, p[r], p[(r + 1) % 3], p[(r + 2) % 3]),
                         self.kind)

    def canonical_rotation(self) -> int:
        """
        The parent rotation giving the lexicographically largest tuple of
        parent curvatures. Only cyclic rotations are considered, so the
        parents stay clockwise and the result is the descending order
        only when some rotation of the parents is sorted. A largest parent
        always comes first. This rotation is unique: three equal
        curvatures never occur among the parents of a band-packing circle.

        """
        return max(range(3), key=lambda r: tuple(
            c.c for c in self.rotate(r).parents))

    def canonical(self) -> Quadruple:
        return self.rotate(self.canonical_rotation())

    def tangency_points(self) -> Tuple[RatGauss, RatGauss, RatGauss]:
        c0 = self.child
        return tuple(tangency_point(c0, p)  # type: ignore
                     for p in self.parents)


def descartes_holds(circles: Tuple[Circle, ...]) -> bool:
    """
    Checks both the curvature and the complex Descartes identities.

    """
    curv_sum = sum(c.c for c in circles)
    if curv_sum * curv_sum != 2 * sum(c.c * c.c for c in circles):
        return False
    w_sum = sum((c.w for c in circles), ZERO)
    w_sq = sum((c.w * c.w for c in circles), ZERO)
    return w_sum * w_sum == w_sq * 2


def is_tangent(c1: Circle, c2: Circle) -> bool:
    """
    Exactly tests whether two band-packing circles are tangent. Two
    lines are tangent (at infinity) when their normals are opposite.

    """
    if c1.is_line and c2.is_line:
        return c1.w == -c2.w
    if c1.is_line or c2.is_line:
        line, circle = (c1, c2) if c1.is_line else (c2, c1)
        return (circle.w.re + line.w.re) % (2 * circle.c) == 0
    return ((c1.w * c2.c - c2.w * c1.c).norm()
            == (c1.c + c2.c) * (c1.c + c2.c))


def tangency_point(c1: Circle, c2: Circle) -> RatGauss:
    """
    Computes the common point (w1 + w2) / (c1 + c2) of two tangent circles.

    Args:
        c1 (Circle): The first circle.
        c2 (Circle): The second circle.

    Returns:
        The tangency point as a RatGauss.

    Raises:
        TangencyError

    """
    if c1.is_line and c2.is_line:
        raise TangencyError("Two lines have no finite tangency point")
    if not is_tangent(c1, c2):
        raise TangencyError(f"Circles {c1} and {c2} are not tangent")
    return RatGauss.of(c1.w + c2.w) / (c1.c + c2.c)


def soddy_complete(c1: Circle, c2: Circle, c3: Circle,
                   c4: Circle) -> Circle:
    """
    Given three pairwise tangent circles and one of their Soddy circles,
    returns the other, 2(c1 + c2 + c3) - c4.

    Raises:
        DescartesError, TangencyError

    """
    if not descartes_holds((c4, c1, c2, c3)):
        raise DescartesError(
            f"Descartes identities fail for {c4}, {c1}, {c2}, {c3}")
    for a, b in ((c1, c2), (c2, c3), (c3, c1)):
        if not is_tangent(a, b):
            raise TangencyError(f"Circles {a} and {b} are not tangent")
    c = 2 * (c1.c + c2.c + c3.c) - c4.c
    w = (c1.w + c2.w + c3.w) * 2 - c4.w
    return Circle(c, w)


def _is_base_pattern(circles: Tuple[Circle, ...]) -> bool:
    c0 = circles[0]
    if c0.c != 1:
        return False
    pattern = (Circle(1, c0.w + I * 2), Circle(0, GaussInt(1, 0)),
               Circle(0, GaussInt(-1, 0)))
    parents = circles[1:]
    return any(parents == pattern[r:] + pattern[:r] for r in range(3))


def _classify(circles: Tuple[Circle, ...]) -> QuadKind:
    if not descartes_holds(circles):
        raise DescartesError(
            "Descartes identities fail for "
            + ", ".join(str(c) for c in circles))
    if _is_base_pattern(circles):
        return QuadKind.semi_proper_base
    c0 = circles[0]
    if c0.c <= max(c.c for c in circles[1:]):
        return QuadKind.improper
    t1, t2, t3 = (tangency_point(c0, p) for p in circles[1:])
    d2, d3 = t2 - t1, t3 - t1
    if d2.re * d3.im - d2.im * d3.re < 0:
        return QuadKind.proper
    return QuadKind.improper


def classify_quadruple(q: Quadruple) -> QuadKind:
    """
    Classifies a quadruple as proper, semi-proper base or improper.

    Raises:
        DescartesError

    """
    return _classify(q.circles)


def base_quadruple(z: GaussInt) -> Quadruple:
    """
    The semi-proper base quadruple
    ((1, 1+2z), (1, 1+2z+2i), (0, 1), (0, -1)).

    """
    w = z * 2 + 1
    return Quadruple(
        (Circle(1, w), Circle(1, w + I * 2), Circle(0, GaussInt(1, 0)),
         Circle(0, GaussInt(-1, 0))),
        QuadKind.semi_proper_base)


def successor(q: Quadruple, rotation: int = 0) -> Quadruple:
    """
    Rotates the parents of q, then replaces the first parent by the child
    and the child by the Soddy completion.

    """
    c0, c1, c2, c3 = q.rotate(rotation).circles
    child = Circle(2 * (c0.c + c2.c + c3.c) - c1.c,
                   (c0.w + c2.w + c3.w) * 2 - c1.w)
    return Quadruple.of(child, c0, c2, c3)


def apply_symmetry(c: Circle, sym: Symmetry) -> Circle:
    """
    Applies one of the generating symmetries of the band packing.

    """
    if sym is Symmetry.negate:
        return Circle(c.c, -c.w)
    if sym is Symmetry.conjugate:
        return Circle(c.c, c.w.conj())
    if sym is Symmetry.shift_i:
        return Circle(c.c, c.w + I * (2 * c.c))
    return Circle(c.c, c.w + 2 * c.c)


def ford_circle(p: int, q: int) -> Circle:
    """
    The Ford circle (q², 1 + 2pq i) for the reduced fraction p/q.

    Raises:
        ValueError

    """
    if q < 1 or math.gcd(p, q) != 1:
        raise ValueError(f"{p}/{q} is not a reduced fraction")
    return Circle(q * q, GaussInt(1, 2 * p * q))


def diamond_circle(k: int) -> Circle:
    """
    The k-th diamond circle (2k(k+1), 2k²-1 + 2k(k+1) i).

    """
    if k < 1:
        raise ValueError(f"Diamond index must be positive, got {k}")
    return Circle(2 * k * (k + 1),
                  GaussInt(2 * k * k - 1, 2 * k * (k + 1)))


class StateTracker(Protocol[State]):
    """
    Per-node state carried alongside a forest walk.

    """
    def base(self, z: GaussInt) -> State: ...

    def rotate(self, state: State, r: int) -> State: ...

    def succeed(self, state: State) -> State: ...


@dataclasses.dataclass(eq=True, frozen=True)
class ForestNode(Generic[State]):
    """
    A node of the semi-proper forest in walk orientation with its tracked
    state.

    """
    __slots__ = ("quad", "state",)

    quad: Quadruple
    state: Optional[State]


def walk_forest(max_curvature: int, window: Window,
                tracker: Optional[StateTracker] = None) \
        -> Iterator[ForestNode]:
    """
    Walks the semi-proper forest depth first from the base quadruples of
    every cell meeting the window, yielding each proper node with child
    curvature at most max_curvature and child center in the window. Base
    nodes have two children (parent rotations 1 and 2); proper nodes have
    three. Curvature only grows along the forest, so branches are cut at
    max_curvature.

    Args:
        max_curvature (int): The largest child curvature to visit.
        window (Window): The window the child centers must lie in.
        tracker (StateTracker, optional): Per-node state to carry.

    """
    for z in window.cells():
        base = base_quadruple(z)
        base_state = tracker.base(z) if tracker is not None else None
        stack = [(base, base_state, r) for r in (2, 1)]
        while stack:
            parent, state, r = stack.pop()
            quad = successor(parent, r)
            if quad.child.c > max_curvature:
                continue
            if quad.kind is not QuadKind.proper:
                raise DescartesError(f"Forest produced {quad.kind.name} "
                                     f"quadruple {quad}")
            if tracker is not None:
                state = tracker.succeed(tracker.rotate(state, r))
            if window.contains(quad.child.center):
                yield ForestNode(quad, state)
            stack.extend((quad, state, r) for r in (2, 1, 0))


def enumerate_band(max_curvature: int, window: Window) -> Iterator[Quadruple]:
    """
    Enumerates every proper quadruple with child curvature at most
    max_curvature and child center in the window, each once, in canonical
    rotation.

    """
    if max_curvature < 1:
        raise ValueError("max_curvature must be at least 1")
    for node in walk_forest(max_curvature, window):
        yield node.quad.canonical()


@functools.lru_cache(maxsize=4096)
def find_quadruple(circle: Circle) -> Quadruple:
    """
    Finds the quadruple of the forest whose child is the circle, in
    canonical rotation. Curvature-one circles return their base quadruple.

    Raises:
        ValueError

    """
    return find_node(circle).quad.canonical()


def find_node(circle: Circle, tracker: Optional[StateTracker] = None) \
        -> ForestNode:
    """
    Finds the forest node, in walk orientation, whose child is the circle.

    Raises:
        ValueError

    """
    if circle.is_line:
        raise ValueError("Lines are not children of any quadruple")
    if circle.c == 1:
        if circle.w.re % 2 != 1 or circle.w.im % 2 != 0:
            raise ValueError(f"{circle} is not a circle of the band packing")
        z = GaussInt((circle.w.re - 1) // 2, circle.w.im // 2)
        state = tracker.base(z) if tracker is not None else None
        return ForestNode(base_quadruple(z), state)
    for node in walk_forest(circle.c, Window.point(circle.center), tracker):
        if node.quad.child == circle:
            LOGGER.debug(f"Found quadruple {node.quad} for {circle}")
            return node
    raise ValueError(f"{circle} is not a circle of the band packing")
