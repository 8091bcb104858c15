#! /usr/bin/env python3
"""
This module computes the Gaussian-integer pairs v(C, C'), a(C, C') attached
to ordered pairs of tangent circles by walking the semi-proper forest, the
peak matrix A_C of a circle, and the lattice spanned by the v vectors.

"""
from __future__ import annotations

import dataclasses
import functools
import json
import logging
import os
import threading
from typing import Any, Dict, Iterator, List, Optional, Tuple

from .exactmath import (Fraction, GaussInt, HermiteBasis, I, RatSym2,
                        hermite_basis)
from .exceptions import LatticeMismatchError
from .packing import (Circle, Quadruple, Symmetry, apply_symmetry,
                      diamond_circle, find_node, ford_circle, successor)


LOGGER = logging.getLogger(__name__)

CACHE_VERSION = 1

Triple = Tuple[GaussInt, GaussInt, GaussInt]


def _rotate3(t: Triple, r: int) -> Triple:
    r %= 3
    return t[r:] + t[:r]  # type: ignore


@dataclasses.dataclass(eq=True, frozen=True)
class VAPair:
    """
    The pair v(C, C'), a(C, C') for an ordered pair of tangent circles.

    """
    __slots__ = ("v", "a",)

    v: GaussInt
    a: GaussInt

    def to_json(self) -> Dict[str, List[int]]:
        return {"v": list(self.v.as_pair()), "a": list(self.a.as_pair())}


@dataclasses.dataclass(eq=True, frozen=True)
class LatticeState:
    """
    The parent pairs of a quadruple (C0, C1, C2, C3): s holds
    (v(C2,C1), v(C3,C2), v(C1,C3)) and t the matching a vectors.

    """
    __slots__ = ("s", "t",)

    s: Triple
    t: Triple

    @classmethod
    def base(cls, z: GaussInt) -> LatticeState:
        return cls((GaussInt(-1, 0), GaussInt(0, 0), GaussInt(1, 0)),
                   (-z - 1 - I, GaussInt(1, 0), z + I))

    def rotate(self, r: int) -> LatticeState:
        return LatticeState(_rotate3(self.s, r), _rotate3(self.t, r))

    def succeed(self) -> LatticeState:
        """
        The state of the successor quadruple, whose parents are
        (C0, C2, C3).

        """
        s1, s2, s3 = self.s
        t1, t2, t3 = self.t
        return LatticeState((s1 - I * s2, s2, s3 + I * s2),
                            (t1 + I * t2, t2, t3 - I * t2))

    def child_vectors(self) -> Tuple[Triple, Triple]:
        """
        Computes (v_10, v_20, v_30) and (a_10, a_20, a_30).

        """
        s1, s2, s3 = self.s
        t1, t2, t3 = self.t
        return ((s3 - I * s1, s1 - I * s2, s2 - I * s3),
                (t3 + I * t1, t1 + I * t2, t2 + I * t3))


class LatticeTracker():
    """
    Carries a LatticeState along a forest walk.

    """
    def base(self, z: GaussInt) -> LatticeState:
        return LatticeState.base(z)

    def rotate(self, state: LatticeState, r: int) -> LatticeState:
        return state.rotate(r)

    def succeed(self, state: LatticeState) -> LatticeState:
        return state.succeed()


@dataclasses.dataclass(eq=True, frozen=True)
class QuadrupleVectors:
    """
    The canonical quadruple of a circle with its parent state and the three
    child pairs (v_i0, a_i0) = (v(C_i, C_0), a(C_i, C_0)).

    """
    __slots__ = ("quad", "state", "v", "a",)

    quad: Quadruple
    state: LatticeState
    v: Triple
    a: Triple

    @classmethod
    def from_state(cls, quad: Quadruple,
                   state: LatticeState) -> QuadrupleVectors:
        v, a = state.child_vectors()
        return cls(quad, state, v, a)

    @property
    def circle(self) -> Circle:
        return self.quad.child

    def pair(self, i: int) -> VAPair:
        """
        The child pair (v_i0, a_i0) for i in 1, 2, 3.

        """
        return VAPair(self.v[i - 1], self.a[i - 1])

    def reversed_pair(self, i: int) -> VAPair:
        """
        The pair (v_0i, a_0i) = (i v_i0, -i a_i0).

        """
        return VAPair(I * self.v[i - 1], -(I * self.a[i - 1]))

    def parent_pair(self, i: int) -> VAPair:
        """
        The pair (v_kj, a_kj) opposite parent i, where (i, j, k) is a
        cyclic rotation of (1, 2, 3).

        """
        idx = {1: 1, 2: 2, 3: 0}[i]
        return VAPair(self.state.s[idx], self.state.t[idx])

    @property
    def lattice(self) -> Lattice2:
        return Lattice2(self.v[0], self.v[1])

    def to_json(self) -> Dict[str, Any]:
        return {
            "circle": self.circle.to_json(),
            "pairs": [dict(parent=p.to_json(), **self.pair(i).to_json())
                      for i, p in enumerate(self.quad.parents, start=1)],
        }


@functools.lru_cache(maxsize=4096)
def quadruple_vectors(circle: Circle) -> QuadrupleVectors:
    """
    Computes the canonical quadruple of the circle together with its lattice
    vectors by walking the forest from the base quadruple.

    Raises:
        ValueError

    """
    node = find_node(circle, LatticeTracker())
    r = node.quad.canonical_rotation()
    return QuadrupleVectors.from_state(node.quad.rotate(r),
                                       node.state.rotate(r))


def base_vectors(z: GaussInt) -> Tuple[VAPair, VAPair, VAPair]:
    """
    The parent pairs (C2,C1), (C3,C2), (C1,C3) of the base quadruple at z.

    """
    state = LatticeState.base(z)
    return tuple(VAPair(v, a)  # type: ignore
                 for v, a in zip(state.s, state.t))


def successor_vectors(qv: QuadrupleVectors,
                      rotation: int = 0) -> QuadrupleVectors:
    """
    Computes the vectors of the successor of the quadruple after rotating
    its parents.

    """
    state = qv.state.rotate(rotation).succeed()
    return QuadrupleVectors.from_state(successor(qv.quad, rotation), state)


def peak_matrix(circle: Circle) -> RatSym2:
    """
    The peak matrix ½[[r + x1, x2], [x2, r - x1]] of a circle with radius r
    and center (x1, x2).

    Raises:
        ValueError

    """
    if circle.is_line:
        raise ValueError("Lines have no peak matrix")
    c, w = circle.c, circle.w
    return RatSym2(Fraction(1 + w.re, 2 * c), Fraction(w.im, 2 * c),
                   Fraction(1 - w.re, 2 * c))


@dataclasses.dataclass(eq=True, frozen=True)
class Lattice2:
    """
    A full-rank sublattice of Z[i] with basis b1, b2.

    """
    __slots__ = ("b1", "b2",)

    b1: GaussInt
    b2: GaussInt

    def __post_init__(self):
        if self.b1.cross(self.b2) == 0:
            raise ValueError(f"Degenerate lattice basis {self.b1}, {self.b2}")

    @property
    def det(self) -> int:
        return abs(self.b1.cross(self.b2))

    @property
    def hnf(self) -> HermiteBasis:
        return _hermite(self.b1, self.b2)

    def coords(self, x: GaussInt) -> Tuple[Fraction, Fraction]:
        """
        Solves x = m b1 + n b2 for rational m, n.

        """
        det = self.b1.cross(self.b2)
        return (Fraction(x.cross(self.b2), det),
                Fraction(self.b1.cross(x), det))

    def contains(self, x: GaussInt) -> bool:
        return all(c.denominator == 1 for c in self.coords(x))

    def residue(self, x: GaussInt) -> GaussInt:
        """
        The representative of x + L in the box [0, alpha) x [0, gamma) of
        the Hermite basis.

        """
        alpha, beta, gamma = self.hnf
        k = x.im // gamma
        return GaussInt((x.re - k * beta) % alpha, x.im - k * gamma)

    def residues(self) -> Iterator[GaussInt]:
        alpha, _, gamma = self.hnf
        for r1 in range(alpha):
            for r2 in range(gamma):
                yield GaussInt(r1, r2)


@functools.lru_cache(maxsize=4096)
def _hermite(b1: GaussInt, b2: GaussInt) -> HermiteBasis:
    return hermite_basis(b1, b2)


def lattice_LC(circle: Circle) -> Lattice2:  # pylint: disable=invalid-name
    """
    Sweeps the residues of the lattice spanned by v_10, v_20 and checks that
    the zero residue is the only one mapped to Z² by the peak matrix, so that
    the lattice of integral peak matrix products equals it.

    Args:
        circle (Circle): A circle of positive curvature.

    Returns:
        The lattice as a Lattice2.

    Raises:
        LatticeMismatchError

    """
    qv = quadruple_vectors(circle)
    lattice = qv.lattice
    A = peak_matrix(circle)
    if lattice.det != circle.c:
        raise LatticeMismatchError(
            f"Lattice determinant {lattice.det} differs from curvature "
            f"{circle.c} for {circle}")
    for v in qv.v:
        if not A.is_integral_on(v):
            raise LatticeMismatchError(
                f"A_C v is not integral for v = {v}, C = {circle}")
    extra = [r for r in lattice.residues()
             if r != GaussInt(0, 0) and A.is_integral_on(r)]
    if extra:
        raise LatticeMismatchError(
            f"Residues {', '.join(map(str, extra))} are integral for A_C "
            f"but lie outside the lattice of {circle}")
    return lattice


def check_identities(qv: QuadrupleVectors) -> List[str]:
    """
    Checks the vector identities of a quadruple.

    Returns:
        A list of failure messages, empty when all identities hold.

    """
    failures: List[str] = []
    c = qv.quad.circles
    c0 = c[0]
    zero = GaussInt(0, 0)
    if sum(qv.v, zero) != zero:
        failures.append(f"v_i0 do not sum to zero for {c0}")
    if sum(qv.a, zero) != zero:
        failures.append(f"a_i0 do not sum to zero for {c0}")
    if sum(qv.state.s, zero) != zero:
        failures.append(f"parent v do not sum to zero for {c0}")
    if sum(qv.state.t, zero) != zero:
        failures.append(f"parent a do not sum to zero for {c0}")
    A = peak_matrix(c0)
    pairs = [(c[i], c0, qv.pair(i)) for i in (1, 2, 3)]
    pairs += [(c[j], c[i], VAPair(v, a)) for (j, i), v, a
              in zip(((2, 1), (3, 2), (1, 3)), qv.state.s, qv.state.t)]
    for first, second, pair in pairs:
        v, a = pair.v, pair.a
        if v * v != first.w * second.c - second.w * first.c:
            failures.append(f"v² identity fails for ({first}, {second})")
        if (v * a) * 2 != first.w + second.w:
            failures.append(f"2va identity fails for ({first}, {second})")
        if v.norm() != first.c + second.c:
            failures.append(f"|v|² identity fails for ({first}, {second})")
    s1, _, s3 = qv.state.s
    if qv.v[0] != s3 - I * s1:
        failures.append(f"v_10 = v_13 - i v_21 fails for {c0}")
    if (s3.conj() * s1).re != -c[1].c:
        failures.append(f"Re(conj(v_13) v_21) = -c_1 fails for {c0}")
    for i in (1, 2, 3):
        pair = qv.pair(i)
        if tuple(map(Fraction, pair.a.as_pair())) != A.apply(pair.v):
            failures.append(f"a_{i}0 != A_C v_{i}0 for {c0}")
    if abs(qv.v[0].cross(qv.v[1])) != c0.c:
        failures.append(f"|det| != c for {c0}")
    return failures


def ford_vectors(p: int, q: int) -> Tuple[VAPair, VAPair, VAPair]:
    """
    The closed-form child pairs of the Ford circle of p/q, q >= 2, in
    canonical parent order (p1/q1 parent, p2/q2 parent, line), where
    p1 q - q1 p = 1.

    Raises:
        ValueError

    """
    ford_circle(p, q)
    if q < 2:
        raise ValueError("Closed-form Ford vectors need q >= 2")
    q1 = pow(-p, -1, q)
    p1 = (1 + q1 * p) // q
    p2, q2 = p - p1, q - q1
    return (VAPair(GaussInt(q, q1), GaussInt(p1, p)),
            VAPair(GaussInt(-q, q2), GaussInt(p2, -p)),
            VAPair(GaussInt(0, -q), GaussInt(-p, 0)))


def diamond_vectors(k: int) -> Tuple[VAPair, VAPair, VAPair]:
    """
    The closed-form child pairs of the k-th diamond circle in canonical
    parent order. For k = 1 the parents are (1, 1+2i), (1, 1) and a line;
    for k >= 2 the diamond of index k - 1 is the largest parent and comes
    first.

    """
    diamond_circle(k)
    pairs = (VAPair(GaussInt(k + 1, k), GaussInt(k, 1)),
             VAPair(GaussInt(-k - 1, k), GaussInt(0, -k)),
             VAPair(GaussInt(0, -2 * k), GaussInt(-k, k - 1)))
    if k == 1:
        return pairs
    return pairs[2], pairs[0], pairs[1]


def translate_vectors(qv: QuadrupleVectors,
                      sym: Symmetry) -> QuadrupleVectors:
    """
    Transports the vectors of a quadruple along one of the translations of
    the band packing. The v vectors are unchanged; each a vector gains
    t·conj(v), where 2t is the translation.

    Raises:
        ValueError

    """
    if sym not in (Symmetry.shift_1, Symmetry.shift_i):
        raise ValueError(f"{sym.name} is not a translation")
    t = GaussInt(1, 0) if sym is Symmetry.shift_1 else I
    quad = Quadruple(tuple(apply_symmetry(c, sym)  # type: ignore
                           for c in qv.quad.circles), qv.quad.kind)
    state = LatticeState(qv.state.s, tuple(  # type: ignore
        a + t * v.conj() for v, a in zip(qv.state.s, qv.state.t)))
    return QuadrupleVectors.from_state(quad, state)


class VectorCache():
    """
    An append-only on-disk JSON cache of quadruple vectors, keyed by
    circle.

    """
    def __init__(self, cache_dir: Optional[str]):
        """
        Initialize the cache, loading any existing entries.

        Args:
            cache_dir (str, optional): The cache directory. No file is read
                                       or written when None.

        """
        self.path = (os.path.join(cache_dir, "vectors.json")
                     if cache_dir is not None else None)
        self._lock = threading.Lock()
        self._entries: Dict[str, Dict[str, Any]] = {}
        self._dirty = False
        if self.path is not None and os.path.exists(self.path):
            with open(self.path) as fh:
                data = json.load(fh)
            if data.get("version") != CACHE_VERSION:
                LOGGER.warning(f"Ignoring vector cache {self.path} with "
                               f"version {data.get('version')}")
            else:
                self._entries = data["vectors"]

    def __len__(self) -> int:
        return len(self._entries)

    @staticmethod
    def _key(circle: Circle) -> str:
        return f"{circle.c},{circle.w.re},{circle.w.im}"

    def vectors(self, circle: Circle) -> QuadrupleVectors:
        """
        Retrieves the vectors of the circle, computing and recording them
        if absent.

        """
        key = self._key(circle)
        entry = self._entries.get(key)
        if entry is not None:
            return _decode(entry)
        qv = quadruple_vectors(circle)
        with self._lock:
            self._entries.setdefault(key, _encode(qv))
            self._dirty = True
        return qv

    def save(self):
        """
        Writes the cache to disk if it has changed.

        """
        if self.path is None or not self._dirty:
            return
        with self._lock:
            os.makedirs(os.path.dirname(self.path) or ".", exist_ok=True)
            with open(self.path, "w") as fh:
                json.dump({"version": CACHE_VERSION,
                           "vectors": self._entries}, fh, sort_keys=True)
            self._dirty = False


def _encode(qv: QuadrupleVectors) -> Dict[str, Any]:
    return {
        "quad": [[c.c, c.w.re, c.w.im] for c in qv.quad.circles],
        "s": [list(v.as_pair()) for v in qv.state.s],
        "t": [list(a.as_pair()) for a in qv.state.t],
    }


def _decode(entry: Dict[str, Any]) -> QuadrupleVectors:
    quad = Quadruple.of(*(Circle.of(*c) for c in entry["quad"]))
    state = LatticeState(tuple(GaussInt(*v) for v in entry["s"]),  # type: ignore
                         tuple(GaussInt(*a) for a in entry["t"]))  # type: ignore
    return QuadrupleVectors.from_state(quad, state)
