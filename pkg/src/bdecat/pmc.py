"""Pointed matched circles and Reeb chords.

A pointed matched circle encodes a closed oriented surface of genus k as a
circle with 4k marked points, a 2-to-1 matching of the points into 2k pairs,
and a basepoint z.  Points are labeled 1..4k following the orientation of the
circle starting just after z; the basepoint itself sits between point 4k and
point 1 and is never labeled.

Matched pairs are indexed 1..2k.  We require that cutting the circle at all
4k points and regluing each matched pair by oriented 0-sphere surgery yields
a single circle; this is exactly the condition for the associated surface to
be connected of genus k.
"""

from __future__ import annotations

import os
from dataclasses import dataclass


class MalformedMatching(ValueError):
    """Matching is not a 2-to-1 map onto [2k]."""


class DisconnectedSurgery(ValueError):
    """Oriented surgery on the matched pairs yields more than one circle."""


def max_points() -> int:
    """Size guard for combinatorial enumeration, settable via environment."""
    return int(os.environ.get("BDECAT_MAX_POINTS", "12"))


@dataclass(frozen=True)
class PointedMatchedCircle:
    """Matching is a tuple of length 4k; entry p-1 is the pair index of point p."""

    matching: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "matching", tuple(self.matching))
        validate(self)

    @property
    def num_points(self) -> int:
        return len(self.matching)

    @property
    def genus(self) -> int:
        return self.num_points // 4

    def pair_of(self, point: int) -> int:
        return self.matching[point - 1]

    def points_of_pair(self, pair: int) -> tuple[int, int]:
        """The two points of a matched pair, in circle order."""
        pts = tuple(p for p in range(1, self.num_points + 1)
                    if self.matching[p - 1] == pair)
        return pts

    def partner(self, point: int) -> int:
        a, b = self.points_of_pair(self.pair_of(point))
        return b if point == a else a

    def minus_point(self, pair: int) -> int:
        """The first endpoint of the pair along the circle orientation."""
        return self.points_of_pair(pair)[0]

    def plus_point(self, pair: int) -> int:
        return self.points_of_pair(pair)[1]


@dataclass(frozen=True, order=True)
class ReebChord:
    """The oriented interval [start, end] in Z minus the basepoint."""

    start: int
    end: int

    def __post_init__(self):
        if not self.start < self.end:
            raise ValueError(f"chord must run with the orientation: {self}")


def validate(pmc: PointedMatchedCircle) -> None:
    """Raise unless the matching is 2-to-1 and the surgery yields one circle.

    The surgery check is an explicit traversal: the circle is cut into 4k
    arcs (arc p runs from point p to point p+1, cyclically, with the z-arc
    from 4k back to 1), and oriented surgery at a pair {p, q} redirects the
    arc ending at p to the arc starting at q and vice versa.
    """
    n = len(pmc.matching)
    if n == 0 or n % 4 != 0:
        raise MalformedMatching(f"need 4k points, got {n}")
    if n > max_points():
        raise MalformedMatching(
            f"{n} points exceeds BDECAT_MAX_POINTS={max_points()}")
    k2 = n // 2
    counts = {}
    for v in pmc.matching:
        counts[v] = counts.get(v, 0) + 1
    if sorted(counts) != list(range(1, k2 + 1)) or set(counts.values()) != {2}:
        raise MalformedMatching(
            f"matching must take each value in 1..{k2} exactly twice")

    partner = {}
    for pair in range(1, k2 + 1):
        pts = [p for p in range(1, n + 1) if pmc.matching[p - 1] == pair]
        partner[pts[0]], partner[pts[1]] = pts[1], pts[0]

    # successor(arc ending at x) = arc starting at partner(x); arcs are
    # indexed by their start point, with arc n the one through z.
    def succ(arc: int) -> int:
        endpoint = arc + 1 if arc < n else 1
        return partner[endpoint]

    unvisited = set(range(1, n + 1))
    circles = 0
    while unvisited:
        circles += 1
        start = min(unvisited)
        arc = start
        while arc in unvisited:
            unvisited.discard(arc)
            arc = succ(arc)
    if circles != 1:
        raise DisconnectedSurgery(f"surgery yields {circles} circles")


def genus(pmc: PointedMatchedCircle) -> int:
    return pmc.genus


def reverse(pmc: PointedMatchedCircle) -> PointedMatchedCircle:
    """Relabel points by p -> 4k+1-p (the orientation-reversing identity)."""
    n = pmc.num_points
    return PointedMatchedCircle(tuple(pmc.matching[n - p] for p in range(1, n + 1)))


def torus_pmc() -> PointedMatchedCircle:
    return PointedMatchedCircle((1, 2, 1, 2))


def split_pmc(genus: int) -> PointedMatchedCircle:
    """The split pointed matched circle: genus-1 blocks side by side."""
    matching = []
    for block in range(genus):
        a, b = 2 * block + 1, 2 * block + 2
        matching += [a, b, a, b]
    return PointedMatchedCircle(tuple(matching))


NAMED_PMCS = {
    "torus": torus_pmc,
    "split1": torus_pmc,
    "split2": lambda: split_pmc(2),
    "split3": lambda: split_pmc(3),
}
