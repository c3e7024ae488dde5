"""The strands algebra A(n,k) and the subalgebra A(Z) of a matched circle.

Generators of A(n,k) are partial permutations (S, T, phi): S and T are
k-element subsets of [n] and phi: S -> T is a bijection with phi(i) >= i for
every i in S (horizontal and upward-veering strands).  Multiplication
composes when the inversion counts add exactly, and the differential resolves
one crossing at a time, keeping only resolutions that drop the inversion
count by exactly one.  Everything is linear over F2: an algebra element is a
finite set of generators, and sums cancel in pairs.

For a pointed matched circle Z the subalgebra A(Z) is spanned by the
elements a(rho, s): rho a set of Reeb chords with distinct starting points
and distinct ending points, s a set of matched pairs containing M(starts)
with the leftover pairs disjoint from M(ends).  The element a(rho, s) is the
sum over all ways of occupying each leftover pair by one of its two points
as a horizontal strand.  Distinct (rho, s) give disjoint sets of generators,
which makes decomposition into this basis a lookup rather than linear
algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .pmc import PointedMatchedCircle, ReebChord


class AmbientMismatch(ValueError):
    """Operands live in strands algebras with different point counts."""


class EndpointClash(ValueError):
    """Chord set has a repeated initial or final endpoint."""


@dataclass(frozen=True, order=True)
class StrandsGenerator:
    """A basis element (S, T, phi) of A(n, k).

    phi is stored as the tuple of images of the sorted source S.
    """

    n: int
    S: tuple[int, ...]
    T: tuple[int, ...]
    phi: tuple[int, ...]

    def __post_init__(self):
        if not (len(self.S) == len(self.T) == len(self.phi)):
            raise ValueError("S, T, phi size mismatch")
        if tuple(sorted(self.S)) != self.S or tuple(sorted(self.T)) != self.T:
            raise ValueError("S and T must be sorted")
        if tuple(sorted(self.phi)) != self.T:
            raise ValueError("phi must be a bijection onto T")
        for s, t in zip(self.S, self.phi):
            if t < s:
                raise ValueError(f"downward strand {s}->{t}")
            if not (1 <= s <= self.n and 1 <= t <= self.n):
                raise ValueError("strand endpoint out of range")

    @property
    def strands(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.S, self.phi))

    @property
    def moving_strands(self) -> tuple[tuple[int, int], ...]:
        return tuple((s, t) for s, t in self.strands if s != t)

    def inversions(self) -> int:
        phi = self.phi
        return sum(1 for i in range(len(phi)) for j in range(i + 1, len(phi))
                   if phi[j] < phi[i])

    def is_idempotent(self) -> bool:
        return self.S == self.phi

    def __str__(self):
        src = "{" + ",".join(map(str, self.S)) + "}"
        dst = "{" + ",".join(map(str, self.T)) + "}"
        img = "[" + ",".join(map(str, self.phi)) + "]"
        return f"{src}->{dst}:{img}"


@dataclass(frozen=True)
class AlgebraElement:
    """An F2-linear combination of strands generators, homogeneous in k."""

    n: int
    terms: frozenset[StrandsGenerator]

    def __post_init__(self):
        object.__setattr__(self, "terms", frozenset(self.terms))
        sizes = {len(g.S) for g in self.terms}
        if len(sizes) > 1:
            raise ValueError("mixed strand counts in one element")
        for g in self.terms:
            if g.n != self.n:
                raise AmbientMismatch("term with wrong ambient point count")

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.n != other.n:
            raise AmbientMismatch(f"{self.n} vs {other.n}")
        return AlgebraElement(self.n, self.terms ^ other.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(str(g) for g in sorted(self.terms))

    def strand_count(self) -> int | None:
        for g in self.terms:
            return len(g.S)
        return None


def zero(n: int) -> AlgebraElement:
    return AlgebraElement(n, frozenset())


def element(gens) -> AlgebraElement:
    gens = list(gens)
    return AlgebraElement(gens[0].n, frozenset(gens))


def multiply_generators(a: StrandsGenerator, b: StrandsGenerator) -> StrandsGenerator | None:
    """Compose two generators; None when the product is zero."""
    if a.n != b.n:
        raise AmbientMismatch(f"{a.n} vs {b.n}")
    if a.T != b.S:
        return None
    pos = {s: i for i, s in enumerate(b.S)}
    phi = tuple(b.phi[pos[t]] for t in a.phi)
    prod = StrandsGenerator(a.n, a.S, b.T, phi)
    if prod.inversions() != a.inversions() + b.inversions():
        return None
    return prod


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.n != y.n:
        raise AmbientMismatch(f"{x.n} vs {y.n}")
    acc: set[StrandsGenerator] = set()
    for a in x.terms:
        for b in y.terms:
            p = multiply_generators(a, b)
            if p is not None:
                acc ^= {p}
    return AlgebraElement(x.n, frozenset(acc))


def differential_generator(a: StrandsGenerator) -> set[StrandsGenerator]:
    """Resolutions of single crossings that drop inv by exactly one."""
    out: set[StrandsGenerator] = set()
    inv = a.inversions()
    phi = list(a.phi)
    m = len(phi)
    for i in range(m):
        for j in range(i + 1, m):
            if phi[j] < phi[i]:
                swapped = phi[:]
                swapped[i], swapped[j] = swapped[j], swapped[i]
                try:
                    res = StrandsGenerator(a.n, a.S, a.T, tuple(swapped))
                except ValueError:
                    continue
                if res.inversions() == inv - 1:
                    out ^= {res}
    return out


def differential(x: AlgebraElement) -> AlgebraElement:
    acc: set[StrandsGenerator] = set()
    for g in x.terms:
        acc ^= differential_generator(g)
    return AlgebraElement(x.n, frozenset(acc))


def idempotent(n: int, S) -> StrandsGenerator:
    S = tuple(sorted(S))
    return StrandsGenerator(n, S, S, S)


def generators_of_ank(n: int, k: int):
    """Every generator of A(n, k): sources, targets, and upward bijections."""
    for S in itertools.combinations(range(1, n + 1), k):
        for images in itertools.permutations(range(1, n + 1), k):
            if all(t >= s for s, t in zip(S, images)):
                yield StrandsGenerator(n, S, tuple(sorted(images)), images)


def _check_chords(rho) -> tuple[ReebChord, ...]:
    rho = tuple(sorted(rho))
    starts = [c.start for c in rho]
    ends = [c.end for c in rho]
    if len(set(starts)) != len(starts) or len(set(ends)) != len(ends):
        raise EndpointClash(f"chords share endpoints: {rho}")
    return rho


def a0(n: int, rho, num_strands: int) -> AlgebraElement:
    """The summand of a0(rho) in A(n, num_strands).

    Sum over all ways of adding horizontal strands at positions disjoint
    from every chord endpoint.
    """
    rho = _check_chords(rho)
    blocked = {c.start for c in rho} | {c.end for c in rho}
    extra = num_strands - len(rho)
    if extra < 0:
        return zero(n)
    free = [p for p in range(1, n + 1) if p not in blocked]
    acc = set()
    for H in itertools.combinations(free, extra):
        strands = sorted([(c.start, c.end) for c in rho] + [(p, p) for p in H])
        S = tuple(s for s, _ in strands)
        phi = tuple(t for _, t in strands)
        T = tuple(sorted(phi))
        acc.add(StrandsGenerator(n, S, T, phi))
    return AlgebraElement(n, frozenset(acc))


def _section_filter(pmc: PointedMatchedCircle, g: StrandsGenerator) -> bool:
    """True when both S and T occupy each matched pair at most once."""
    src = [pmc.pair_of(p) for p in g.S]
    dst = [pmc.pair_of(p) for p in g.T]
    return len(set(src)) == len(src) and len(set(dst)) == len(dst)


def a_of(pmc: PointedMatchedCircle, rho, i: int) -> AlgebraElement:
    """I a0(rho) I in the summand A(4k, k+i): the A(Z) element of a chord set."""
    n = pmc.num_points
    k = pmc.genus
    raw = a0(n, rho, k + i)
    kept = frozenset(g for g in raw.terms if _section_filter(pmc, g))
    return AlgebraElement(n, kept)


def pair_idempotent(pmc: PointedMatchedCircle, pairs) -> AlgebraElement:
    """I(s) = sum over sections of s of the elementary idempotent I(S)."""
    pairs = sorted(set(pairs))
    n = pmc.num_points
    choices = [pmc.points_of_pair(p) for p in pairs]
    acc = set()
    for pick in itertools.product(*choices):
        acc.add(idempotent(n, pick))
    return AlgebraElement(n, frozenset(acc))


def left_right_pairs(pmc: PointedMatchedCircle, x: AlgebraElement) -> tuple[frozenset[int], frozenset[int]]:
    """The unique (s, t) with I(s) x I(t) = x; raises when x is inhomogeneous."""
    if not x.terms:
        raise ValueError("zero element has no idempotent pair")
    ss = {frozenset(pmc.pair_of(p) for p in g.S) for g in x.terms}
    ts = {frozenset(pmc.pair_of(p) for p in g.T) for g in x.terms}
    if len(ss) != 1 or len(ts) != 1:
        raise ValueError("element is not idempotent-homogeneous")
    return next(iter(ss)), next(iter(ts))


def pinch(pmc: PointedMatchedCircle, s, x: AlgebraElement, t) -> AlgebraElement:
    """I(s) x I(t): keep terms whose pair supports are exactly s and t."""
    s, t = frozenset(s), frozenset(t)
    kept = frozenset(
        g for g in x.terms
        if frozenset(pmc.pair_of(p) for p in g.S) == s
        and frozenset(pmc.pair_of(p) for p in g.T) == t)
    return AlgebraElement(x.n, kept)


def chord_signature(pmc: PointedMatchedCircle, g: StrandsGenerator):
    """The (rho, s) basis label of a generator of A(Z)."""
    rho = tuple(sorted(ReebChord(s, t) for s, t in g.moving_strands))
    s = frozenset(pmc.pair_of(p) for p in g.S)
    return rho, s


def _basis_element(pmc: PointedMatchedCircle, rho, s) -> AlgebraElement:
    """a(rho, s): all completions of rho by sections of the leftover pairs."""
    n = pmc.num_points
    extra = sorted(s - {pmc.pair_of(c.start) for c in rho})
    choices = [pmc.points_of_pair(p) for p in extra]
    acc = set()
    for pick in itertools.product(*choices):
        strands = sorted([(c.start, c.end) for c in rho] + [(p, p) for p in pick])
        S = tuple(x for x, _ in strands)
        phi = tuple(y for _, y in strands)
        T = tuple(sorted(phi))
        acc.add(StrandsGenerator(n, S, T, phi))
    return AlgebraElement(n, frozenset(acc))


def _chord_sets(pmc: PointedMatchedCircle, max_size: int):
    """Chord sets with distinct starts, distinct ends, and M injective on both."""
    n = pmc.num_points
    chords = [ReebChord(s, e) for s in range(1, n + 1) for e in range(s + 1, n + 1)]
    out = [()]
    def extend(prefix, used_starts, used_ends, start_pairs, end_pairs, begin):
        if len(prefix) == max_size:
            return
        for idx in range(begin, len(chords)):
            c = chords[idx]
            sp, ep = pmc.pair_of(c.start), pmc.pair_of(c.end)
            if (c.start in used_starts or c.end in used_ends
                    or sp in start_pairs or ep in end_pairs):
                continue
            new = prefix + (c,)
            out.append(new)
            extend(new, used_starts | {c.start}, used_ends | {c.end},
                   start_pairs | {sp}, end_pairs | {ep}, idx + 1)
    extend((), set(), set(), set(), set(), 0)
    return out


@lru_cache(maxsize=None)
def basis_of_AZ(pmc: PointedMatchedCircle, i: int) -> tuple[AlgebraElement, ...]:
    """An F2-basis of A(Z, i), as elements a(rho, s) = I(s) a(rho) I(t)."""
    k = pmc.genus
    count = k + i
    if not 0 <= count <= 2 * k:
        return ()
    all_pairs = set(range(1, 2 * k + 1))
    basis = []
    for rho in _chord_sets(pmc, count):
        if len(rho) > count:
            continue
        start_pairs = {pmc.pair_of(c.start) for c in rho}
        end_pairs = {pmc.pair_of(c.end) for c in rho}
        candidates = sorted(all_pairs - start_pairs - end_pairs)
        for extra in itertools.combinations(candidates, count - len(rho)):
            s = frozenset(start_pairs | set(extra))
            basis.append(_basis_element(pmc, rho, s))
    return tuple(sorted(basis, key=lambda e: sorted(e.terms)))


class AZBasis:
    """Indexed basis of A(Z, i) with signature-based decomposition."""

    def __init__(self, pmc: PointedMatchedCircle, i: int = 0):
        self.pmc = pmc
        self.i = i
        self.elements = basis_of_AZ(pmc, i)
        self._by_signature = {}
        for idx, el in enumerate(self.elements):
            for g in el.terms:
                self._by_signature[g] = idx

    def __len__(self):
        return len(self.elements)

    def decompose(self, x: AlgebraElement) -> tuple[int, ...]:
        """Indices of the basis elements whose F2-sum is x."""
        remaining = set(x.terms)
        indices = set()
        while remaining:
            g = next(iter(remaining))
            idx = self._by_signature.get(g)
            if idx is None:
                raise ValueError(f"term {g} is not in A(Z, {self.i})")
            el = self.elements[idx].terms
            if not el <= remaining:
                raise ValueError(f"element is not in the span of A(Z, {self.i})")
            remaining -= el
            indices ^= {idx}
        return tuple(sorted(indices))
