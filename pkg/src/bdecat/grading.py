"""The unrefined grading group G'(4k), refinement data, and the Z/2 grading m.

Elements of G'(4k) are pairs (j; alpha): j is a Maslov component in (1/4)Z
and alpha is an integer vector of multiplicities over the 4k-1 intervals of
the circle strictly between consecutive marked points (the interval through
the basepoint is excluded; classes never cross z).  The group law twists the
Maslov components by the linking pairing L(alpha, beta) = m(beta, d alpha),
where m(alpha, p) is the average multiplicity of the two intervals adjacent
to the point p.  The central element lambda = (1; 0) generates the kernel of
the projection to homology.

Refinement data for the middle summand consists of the base pair set
s0 = {1..k} and, for every k-element pair set t, the group element
psi(t) = gr'(a(rho^t)) where rho^t is the chord set joining the minus
endpoint of pair i to the minus endpoint of the i-th element of t.  The Z/2
grading is m = f o gr, where f is the homomorphism sending lambda and every
refined pair-chord grading g_i to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .pmc import PointedMatchedCircle, ReebChord
from .strands import AlgebraElement, StrandsGenerator, left_right_pairs


class NotMiddleSummand(ValueError):
    """Refinement data only exists on the weight-k idempotents."""


class NotHomogeneous(ValueError):
    """Element mixes gradings or idempotent pairs."""


class NotInGZ(ValueError):
    """spin^c component is not a span of matched-pair chord classes."""


def chord_vector(n: int, chord: ReebChord) -> tuple[int, ...]:
    """The interval vector of a single chord: +1 on intervals start..end-1."""
    v = [0] * (n - 1)
    for i in range(chord.start, chord.end):
        v[i - 1] += 1
    return tuple(v)


def multiplicity(alpha: tuple[int, ...], p: int) -> Fraction:
    """Average multiplicity of alpha on the two intervals adjacent to point p."""
    n1 = len(alpha)  # 4k - 1 intervals

    def get(i):
        return alpha[i - 1] if 1 <= i <= n1 else 0

    return Fraction(get(p - 1) + get(p), 2)


def boundary(alpha: tuple[int, ...]) -> dict[int, int]:
    """d alpha as a 0-chain on points: interval p contributes a_{p+1} - a_p."""
    n1 = len(alpha)
    out = {}
    for q in range(1, n1 + 2):
        left = alpha[q - 2] if 2 <= q <= n1 + 1 else 0
        right = alpha[q - 1] if 1 <= q <= n1 else 0
        c = left - right
        if c:
            out[q] = c
    return out


def linking(alpha: tuple[int, ...], beta: tuple[int, ...]) -> Fraction:
    """L(alpha, beta) = m(beta, d alpha)."""
    if len(alpha) != len(beta):
        raise ValueError("interval vectors of different ambient circles")
    return sum((c * multiplicity(beta, q) for q, c in boundary(alpha).items()),
               Fraction(0))


@dataclass(frozen=True)
class GradingElement:
    j: Fraction
    alpha: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "j", Fraction(self.j))
        object.__setattr__(self, "alpha", tuple(self.alpha))
        half_pts = sum(1 for p in range(1, len(self.alpha) + 2)
                       if multiplicity(self.alpha, p).denominator == 2)
        if (self.j - Fraction(half_pts, 4)).denominator != 1:
            raise ValueError(
                f"Maslov component {self.j} violates the quarter-integer "
                f"constraint for alpha={self.alpha}")

    def __str__(self):
        return f"({self.j}; {','.join(map(str, self.alpha))})"


def identity_grading(n: int) -> GradingElement:
    return GradingElement(Fraction(0), (0,) * (n - 1))


def lam(n: int) -> GradingElement:
    """The central element lambda = (1; 0)."""
    return GradingElement(Fraction(1), (0,) * (n - 1))


def gmul(x: GradingElement, y: GradingElement) -> GradingElement:
    if len(x.alpha) != len(y.alpha):
        raise ValueError("ambient mismatch")
    alpha = tuple(a + b for a, b in zip(x.alpha, y.alpha))
    return GradingElement(x.j + y.j + linking(x.alpha, y.alpha), alpha)


def ginv(x: GradingElement) -> GradingElement:
    alpha = tuple(-a for a in x.alpha)
    return GradingElement(-x.j + linking(x.alpha, x.alpha), alpha)


def gpow(x: GradingElement, n: int) -> GradingElement:
    out = identity_grading(len(x.alpha) + 1)
    step = x if n >= 0 else ginv(x)
    for _ in range(abs(n)):
        out = gmul(out, step)
    return out


def gr_prime_generator(g: StrandsGenerator) -> GradingElement:
    """gr'(a) = (inv(a) - m([a], S); [a])."""
    alpha = [0] * (g.n - 1)
    for s, t in g.strands:
        for i in range(s, t):
            alpha[i - 1] += 1
    alpha = tuple(alpha)
    iota = g.inversions() - sum((multiplicity(alpha, s) for s in g.S), Fraction(0))
    return GradingElement(iota, alpha)


def gr_prime(x: AlgebraElement) -> GradingElement:
    """gr' of a homogeneous element; raises when the terms disagree."""
    grades = {gr_prime_generator(g) for g in x.terms}
    if len(grades) != 1:
        raise NotHomogeneous(f"element has gradings {grades}")
    return next(iter(grades))


def reverse_grading(x: GradingElement) -> GradingElement:
    """R(j; alpha): the map induced by the orientation-reversing identity.

    Points relabel by p -> 4k+1-p, and every interval reverses orientation,
    so the multiplicity vector is reversed and negated; j is unchanged.
    """
    return GradingElement(x.j, tuple(-a for a in reversed(x.alpha)))


@dataclass(frozen=True)
class RefinementData:
    base: frozenset[int]
    psi: dict  # k-element frozenset of pairs -> GradingElement

    def psi_of(self, t) -> GradingElement:
        key = frozenset(t)
        if key not in self.psi:
            raise NotMiddleSummand(f"no refinement element for {set(t)}")
        return self.psi[key]


def _refinement_chords(pmc: PointedMatchedCircle, t: frozenset[int]) -> list[ReebChord]:
    ordered = sorted(t)
    chords = []
    for i, ti in enumerate(ordered, start=1):
        if i != ti:
            chords.append(ReebChord(pmc.minus_point(i), pmc.minus_point(ti)))
    return chords


def _gr_of_chords(pmc: PointedMatchedCircle, chords) -> GradingElement:
    """gr' of the chords-only strands diagram (homngeneity makes completions agree)."""
    if not chords:
        return identity_grading(pmc.num_points)
    strands = sorted((c.start, c.end) for c in chords)
    S = tuple(s for s, _ in strands)
    phi = tuple(t for _, t in strands)
    g = StrandsGenerator(pmc.num_points, S, tuple(sorted(phi)), phi)
    return gr_prime_generator(g)


@lru_cache(maxsize=None)
def default_refinement(pmc: PointedMatchedCircle) -> RefinementData:
    """s0 = {1..k}; psi(t) = gr'(a(rho^t)) for each k-element pair set t."""
    import itertools

    k = pmc.genus
    base = frozenset(range(1, k + 1))
    psi = {}
    for t in itertools.combinations(range(1, 2 * k + 1), k):
        t = frozenset(t)
        psi[t] = _gr_of_chords(pmc, _refinement_chords(pmc, t))
    return RefinementData(base, psi)


def reverse_refinement(pmc: PointedMatchedCircle, ref: RefinementData) -> RefinementData:
    """psi_{-Z}(t) = R(psi_Z([2k] \\ t))^{-1}, base [2k] \\ s0."""
    k = pmc.genus
    all_pairs = frozenset(range(1, 2 * k + 1))
    psi = {all_pairs - t: ginv(reverse_grading(g)) for t, g in ref.psi.items()}
    return RefinementData(all_pairs - ref.base, psi)


def refine(x: GradingElement, t1, t2, ref: RefinementData) -> GradingElement:
    """gr = psi(t1) gr' psi(t2)^{-1} for an element between idempotents t1, t2."""
    return gmul(gmul(ref.psi_of(t1), x), ginv(ref.psi_of(t2)))


@lru_cache(maxsize=None)
def _pair_chord_data(pmc: PointedMatchedCircle):
    """Interval vectors of the matched-pair chords and the deltas L(rho_i, rho_j)."""
    n = pmc.num_points
    k2 = 2 * pmc.genus
    vectors = []
    for i in range(1, k2 + 1):
        lo, hi = pmc.points_of_pair(i)
        vectors.append(chord_vector(n, ReebChord(lo, hi)))
    delta = [[linking(vectors[i], vectors[j]) for j in range(k2)] for i in range(k2)]
    for row in delta:
        for v in row:
            assert v.denominator == 1, "pair-chord linkings must be integers"
    return tuple(vectors), tuple(tuple(int(v) for v in row) for row in delta)


def h_coordinates(pmc: PointedMatchedCircle, alpha: tuple[int, ...]) -> tuple[int, ...]:
    """Write alpha as an integer combination of the pair-chord classes."""
    vectors, _ = _pair_chord_data(pmc)
    cols = len(vectors)
    rows = len(alpha)
    # Exact Gaussian elimination on the (rows x cols) system.
    mat = [[Fraction(vectors[j][i]) for j in range(cols)] + [Fraction(alpha[i])]
           for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        mat[r] = [v / mat[r][c] for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if mat[i][cols] != 0:
            raise NotInGZ(f"alpha={alpha} is not in the span of pair chords")
    h = [0] * cols
    for idx, c in enumerate(pivots):
        val = mat[idx][cols]
        if val.denominator != 1:
            raise NotInGZ(f"alpha={alpha} needs fractional coefficients")
        h[c] = int(val)
    return tuple(h)


def f_s(x: GradingElement, pmc: PointedMatchedCircle, s0=None) -> int:
    """The homomorphism G(Z) -> Z/2 in base-idempotent coordinates.

    f(j; h) = j - (1/2) sum_{i in s} h_i + (1/2) sum_{i not in s} h_i
              + sum_{i<j} h_i h_j delta_{ij},  reduced mod 2.
    """
    if s0 is None:
        s0 = frozenset(range(1, pmc.genus + 1))
    h = h_coordinates(pmc, x.alpha)
    _, delta = _pair_chord_data(pmc)
    total = Fraction(x.j)
    for i, hi in enumerate(h, start=1):
        total += Fraction(hi, 2) * (1 if i not in s0 else -1)
    for i in range(len(h)):
        for j in range(i + 1, len(h)):
            total += h[i] * h[j] * delta[i][j]
    assert total.denominator == 1, f"f_s({x}) is not an integer"
    return int(total) % 2


def m_of(x: AlgebraElement, pmc: PointedMatchedCircle,
         ref: RefinementData | None = None) -> int:
    """m(a) = f(gr(a)) for a homogeneous middle-summand element."""
    if ref is None:
        ref = default_refinement(pmc)
    s, t = left_right_pairs(pmc, x)
    if len(s) != pmc.genus or len(t) != pmc.genus:
        raise NotMiddleSummand(f"idempotent weights {len(s)}, {len(t)}")
    return f_s(refine(gr_prime(x), s, t, ref), pmc, ref.base)
