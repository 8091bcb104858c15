#! /usr/bin/env python3
"""
Closed-form odometers of the two degenerate families of the band packing:
the Ford circles (q², 1 + 2pq i) and the diamond circles, with the checks
of their Laplacian patterns.

"""
import functools
import math
import types
from typing import Dict, List, Mapping, Tuple

from .exactmath import GaussInt
from .exceptions import GluingError
from .latvec import VAPair
from .odometer import (GlobalOdometer, laplacian_values, periodic_extension)
from .packing import diamond_circle, ford_circle
from .reports import CheckReport


# A closed rectangle of vertices (x0, x1, y0, y1).
Box = Tuple[int, int, int, int]


def ford_parents(p: int, q: int) -> Tuple[int, int, int, int]:
    """
    The Farey parents p1/q1 and p2/q2 of p/q, q >= 2, with p1 q - q1 p = 1,
    p2 = p - p1 and q2 = q - q1.

    Raises:
        ValueError

    """
    if q < 2 or math.gcd(p, q) != 1:
        raise ValueError(f"{p}/{q} is not a reduced fraction with q >= 2")
    q1 = pow(-p, -1, q)
    p1 = (1 + q1 * p) // q
    return p1, q1, p - p1, q - q1


def ford_pairs(p: int, q: int) -> Tuple[VAPair, VAPair, VAPair]:
    """
    The translation rules of the Ford odometer: g(x + v) = g(x) + a·x +
    g(v) for v = (0, -q), (q, q1) and (-q, q2).

    """
    if q == 1:
        p1, q1, p2, q2 = 1, 0, p - 1, 1
    else:
        p1, q1, p2, q2 = ford_parents(p, q)
    return (VAPair(GaussInt(0, -q), GaussInt(-p, 0)),
            VAPair(GaussInt(q, q1), GaussInt(p1, p)),
            VAPair(GaussInt(-q, q2), GaussInt(p2, -p)))


def ford_boxes(p: int, q: int) -> Tuple[Box, Box, Box, Box]:
    """
    The squares E1 = [0,q1]², E2 = [q2,q]², E3 = [q1,q] x [0,q2] and
    E4 = [0,q2] x [q1,q] covering [0,q]².

    """
    _, q1, _, q2 = ford_parents(p, q)
    return ((0, q1, 0, q1), (q2, q, q2, q), (q1, q, 0, q2), (0, q2, q1, q))


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@functools.lru_cache(maxsize=512)
def ford_values(p: int, q: int) -> Mapping[GaussInt, int]:
    """
    The Ford odometer on [0,q]²: ⌈(p/q) x1 x2⌉ on the outer two layers, and
    copies of the parent odometers, tilted by the copy rules, on the
    squares E1 ... E4.

    Raises:
        ValueError
        GluingError

    """
    ford_circle(p, q)
    if q == 1:
        return types.MappingProxyType(
            {GaussInt(a, b): a * (a - 1) // 2 + p * a * b
             for a in (0, 1) for b in (0, 1)})

    p1, q1, p2, q2 = ford_parents(p, q)
    g1, g2 = ford_values(p1, q1), ford_values(p2, q2)
    values: Dict[GaussInt, int] = {}

    def put(x: GaussInt, value: int, rule: str):
        old = values.setdefault(x, value)
        if old != value:
            raise GluingError(f"Ford odometer {p}/{q}: rule {rule} gives "
                              f"{value} at {x}, expected {old}")

    for a in range(q + 1):
        for b in range(q + 1):
            if not (2 <= a <= q - 2 and 2 <= b <= q - 2):
                put(GaussInt(a, b), _ceil_div(p * a * b, q), "B")
    for a in range(q1 + 1):
        for b in range(q1 + 1):
            put(GaussInt(a, b), g1[GaussInt(a, b)], "E1")
            x = GaussInt(a + q2, b + q2)
            put(x, g1[GaussInt(a, b)] + p2 * (x.re + x.im) - p2 * q2 + 1,
                "E2")
    for a in range(q2 + 1):
        for b in range(q2 + 1):
            put(GaussInt(a + q1, b), g2[GaussInt(a, b)] + p1 * b, "E3")
            put(GaussInt(a, b + q1), g2[GaussInt(a, b)] + p1 * a, "E4")
    if len(values) != (q + 1) ** 2:
        raise GluingError(f"Ford odometer {p}/{q} is not defined on all of "
                          "[0,q]²")
    return types.MappingProxyType(values)


def ford_odometer(p: int, q: int) -> GlobalOdometer:
    """
    The closed-form odometer of the Ford circle of p/q.

    Raises:
        ValueError
        GluingError

    """
    circle = ford_circle(p, q)
    reps = [GaussInt(a, b) for a in range(q) for b in range(q)]
    return periodic_extension(circle, ford_pairs(p, q), ford_values(p, q),
                              reps=reps)


def _on_box_boundary(box: Box, x: GaussInt) -> bool:
    x0, x1, y0, y1 = box
    return (x0 <= x.re <= x1 and y0 <= x.im <= y1
            and (x.re in (x0, x1) or x.im in (y0, y1)))


def ford_laplacian_checks(p: int, q: int) -> CheckReport:
    """
    Checks Δg = 1 on [0,q]² \\ [1,q-1]² and, inside, Δg = 1, 0, -2 at the
    vertices on exactly 2, 3, 4 of the boundaries of E1 ... E4.

    """
    g = ford_odometer(p, q)
    square = [GaussInt(a, b) for a in range(q + 1) for b in range(q + 1)]
    expected: Dict[GaussInt, int] = {}
    boxes = ford_boxes(p, q) if q >= 2 else ()
    for x in square:
        if x.re in (0, q) or x.im in (0, q):
            expected[x] = 1
            continue
        k = sum(_on_box_boundary(box, x) for box in boxes)
        if k >= 2:
            expected[x] = {2: 1, 3: 0, 4: -2}[k]
    return _compare(f"ford {p}/{q}", g, expected)


def diamond_in_tile(k: int, x: GaussInt) -> bool:
    a, b = abs(x.re), abs(x.im - k)
    return max(a, b, a + b - 1) <= k


def diamond_in_core(k: int, x: GaussInt) -> bool:
    return abs(x.re) + abs(x.im - k) <= k - 1


def diamond_pairs(k: int) -> Tuple[VAPair, VAPair, VAPair]:
    return (VAPair(GaussInt(0, -2 * k), GaussInt(-k, k - 1)),
            VAPair(GaussInt(k + 1, k), GaussInt(k, 1)),
            VAPair(GaussInt(-k - 1, k), GaussInt(0, -k)))


@functools.lru_cache(maxsize=512)
def diamond_values(k: int) -> Mapping[GaussInt, int]:
    """
    ½|x1|(|x1| - 1) - ⌊¼(x1 - x2)²⌋ on the diamond tile T_k.

    """
    diamond_circle(k)
    values = {}
    for a in range(-k - 1, k + 2):
        for b in range(-1, 2 * k + 2):
            x = GaussInt(a, b)
            if diamond_in_tile(k, x):
                values[x] = abs(a) * (abs(a) - 1) // 2 - (a - b) ** 2 // 4
    return types.MappingProxyType(values)


def diamond_odometer(k: int) -> GlobalOdometer:
    """
    The closed-form odometer of the k-th diamond circle.

    Raises:
        ValueError
        GluingError

    """
    return periodic_extension(diamond_circle(k), diamond_pairs(k),
                              diamond_values(k))


def diamond_laplacian_checks(k: int) -> CheckReport:
    """
    Checks Δg = 1 on T_k \\ T_k' and Δg = (-1)^(x1+x2) - 1[x1 = 0] on the
    interior T_k'.

    """
    g = diamond_odometer(k)
    expected = {}
    for x in diamond_values(k):
        if diamond_in_core(k, x):
            expected[x] = (-1) ** ((x.re + x.im) % 2) - (x.re == 0)
        else:
            expected[x] = 1
    return _compare(f"diamond {k}", g, expected)


def _compare(name: str, g: GlobalOdometer,
             expected: Dict[GaussInt, int]) -> CheckReport:
    points = sorted(expected)
    failures: List[str] = []
    for x, value in zip(points, laplacian_values(g, points)):
        if value != expected[x]:
            failures.append(f"{name}: Δg({x}) = {value}, expected "
                            f"{expected[x]}")
    return CheckReport.from_failures("family_laplacian", len(points),
                                     failures)
