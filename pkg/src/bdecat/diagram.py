"""Combinatorial bordered Heegaard diagrams and the intersection-matrix theorem.

A diagram is pure incidence data: a pointed matched circle for the boundary
(2k alpha-arcs, ordered by their first endpoints), g-k alpha-circles, g
beta-circles, and a list of signed intersection points.  Generators pick one
point on each beta-circle, one on each alpha-circle, and at most one on each
alpha-arc; the sign of a generator is

    s(x) = sign(sigma_{o(x)}) * sign(sigma_x) * product of point signs,

where sigma_x reads off the beta indices along the occupied alpha-curves
(arcs first, then circles) and sigma_{o(x)} sorts (J(o), J(complement))
inside S_{2k}.

The signed intersection matrix M(H) has a row per alpha-circle followed by a
row per alpha-arc and a column per beta-circle.  Deleting the arc rows named
by a k-element subset s leaves a square matrix whose determinant counts the
generators with unoccupied arc set s, up to the fixed sign
(-1)^{k(g-k)} sign(sigma_{complement of s}).  The relative first homology
order and the kernel of H_1(F) -> H_1(Y) are read off the matrix by exact
integer column reduction; rows get swapped in matched pairs first, which
converts raw intersection counts into coordinates dual to the arcs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .grothendieck import ExteriorClass, LaurentHalf, basis_class
from .pmc import PointedMatchedCircle


class TheoremViolation(AssertionError):
    pass


class BadIndex(IndexError):
    pass


# ---------------------------------------------------------------------------
# exact integer linear algebra


def det_int(rows: list[list[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    a = [row[:] for row in rows]
    sign = 1
    prev = 1
    for col in range(n - 1):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) // prev
            a[r][col] = 0
        prev = a[col][col]
    return sign * a[-1][-1]


def smith_normal_form(rows: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form, nonnegative with divisibility."""
    a = [row[:] for row in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    top = 0
    while top < min(m, n):
        # find a nonzero pivot
        piv = next(((r, c) for r in range(top, m) for c in range(top, n)
                    if a[r][c] != 0), None)
        if piv is None:
            break
        r0, c0 = piv
        a[top], a[r0] = a[r0], a[top]
        for row in a:
            row[top], row[c0] = row[c0], row[top]
        while True:
            # clear the pivot column with row operations
            for r in range(m):
                if r != top and a[r][top] != 0:
                    if a[r][top] % a[top][top] == 0:
                        q = a[r][top] // a[top][top]
                        a[r] = [x - q * y for x, y in zip(a[r], a[top])]
                    else:
                        g, x, y = _xgcd(a[top][top], a[r][top])
                        p, q = a[top][top] // g, a[r][top] // g
                        rt, rr = a[top], a[r]
                        a[top] = [x * u + y * v for u, v in zip(rt, rr)]
                        a[r] = [-q * u + p * v for u, v in zip(rt, rr)]
            if any(a[r][top] != 0 for r in range(m) if r != top):
                continue
            # clear the pivot row with column operations
            for c in range(n):
                if c != top and a[top][c] != 0:
                    if a[top][c] % a[top][top] == 0:
                        q = a[top][c] // a[top][top]
                        for row in a:
                            row[c] -= q * row[top]
                    else:
                        g, x, y = _xgcd(a[top][top], a[top][c])
                        p, q = a[top][top] // g, a[top][c] // g
                        for row in a:
                            u, v = row[top], row[c]
                            row[top] = x * u + y * v
                            row[c] = -q * u + p * v
            if all(a[r][top] == 0 for r in range(m) if r != top) and \
               all(a[top][c] == 0 for c in range(n) if c != top):
                break
        diag.append(abs(a[top][top]))
        top += 1
    # enforce the divisibility chain
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            if diag[i] and diag[j] % diag[i] != 0:
                g = gcd(diag[i], diag[j])
                diag[j] = diag[i] * diag[j] // g
                diag[i] = g
    return diag


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def column_echelon(rows: list[list[int]], top_rows: int):
    """Unimodular column reduction making the first top_rows rows echelon.

    Returns (reduced matrix, pivot column indices).  The non-pivot columns
    vanish on the first top_rows rows, so they span the sublattice of the
    column lattice supported below.
    """
    a = [row[:] for row in rows]
    n = len(a[0]) if a else 0
    pivots = []
    col = 0
    for r in range(top_rows):
        piv = next((c for c in range(col, n) if a[r][c] != 0), None)
        if piv is None:
            continue
        for row in a:
            row[col], row[piv] = row[piv], row[col]
        # gcd-reduce the remaining columns against the pivot column
        for c in range(col + 1, n):
            while a[r][c] != 0:
                if abs(a[r][col]) > abs(a[r][c]):
                    for row in a:
                        row[col], row[c] = row[c], row[col]
                q = a[r][c] // a[r][col]
                for row in a:
                    row[c] -= q * row[col]
        # clear the already-placed pivot columns to the left for tidiness
        for c in range(col):
            if a[r][c] != 0 and a[r][col] != 0 and a[r][c] % a[r][col] == 0:
                q = a[r][c] // a[r][col]
                for row in a:
                    row[c] -= q * row[col]
        pivots.append(col)
        col += 1
    return a, pivots


# ---------------------------------------------------------------------------
# diagrams


@dataclass(frozen=True)
class DiagramPoint:
    alpha: tuple[str, int]  # ("arc", i) with i in [2k], or ("circle", i)
    beta: int
    sign: int
    id: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("point sign must be +1 or -1")
        kind, _ = self.alpha
        if kind not in ("arc", "circle"):
            raise ValueError(f"bad alpha kind {kind}")


@dataclass(frozen=True)
class DiagramGenerator:
    points: tuple[DiagramPoint, ...]
    occupied: frozenset[int]
    sigma_x_sign: int
    sigma_o_sign: int
    sign: int


@dataclass
class BorderedDiagram:
    pmc: PointedMatchedCircle
    genus: int
    alpha_circles: int
    points: list[DiagramPoint] = field(default_factory=list)

    def __post_init__(self):
        k = self.pmc.genus
        if self.alpha_circles != self.genus - k:
            raise ValueError(
                f"need g - k = {self.genus - k} alpha-circles, "
                f"got {self.alpha_circles}")
        for p in self.points:
            kind, idx = p.alpha
            if kind == "arc" and not 1 <= idx <= 2 * k:
                raise ValueError(f"arc index {idx} outside [2k]")
            if kind == "circle" and not 1 <= idx <= self.alpha_circles:
                raise ValueError(f"circle index {idx} out of range")
            if not 1 <= p.beta <= self.genus:
                raise ValueError(f"beta index {p.beta} out of range")
        # a beta circle meeting no alpha curve is allowed; it just kills
        # every generator and zeroes the intersection matrix column

    @property
    def k(self) -> int:
        return self.pmc.genus


def _perm_sign(seq) -> int:
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq))
              if seq[j] < seq[i])
    return -1 if inv % 2 else 1


def sigma_o_sign(k: int, occupied) -> int:
    """Sign of the permutation (1..k) -> J(o), (k+1..2k) -> J(complement)."""
    occ = sorted(occupied)
    comp = sorted(set(range(1, 2 * k + 1)) - set(occupied))
    return _perm_sign(occ + comp)


def enumerate_generators(d: BorderedDiagram) -> list[DiagramGenerator]:
    """All matchings: one point per beta, one per circle, at most one per arc."""
    by_beta: dict[int, list[DiagramPoint]] = {b: [] for b in range(1, d.genus + 1)}
    for p in d.points:
        by_beta[p.beta].append(p)
    out: list[DiagramGenerator] = []

    def search(beta: int, chosen: list[DiagramPoint],
               arcs_used: set[int], circles_used: set[int]):
        if beta > d.genus:
            if len(circles_used) != d.alpha_circles:
                return
            arc_pts = sorted((p for p in chosen if p.alpha[0] == "arc"),
                             key=lambda p: p.alpha[1])
            circ_pts = sorted((p for p in chosen if p.alpha[0] == "circle"),
                              key=lambda p: p.alpha[1])
            seq = [p.beta for p in arc_pts + circ_pts]
            sx = _perm_sign(seq)
            so = sigma_o_sign(d.k, arcs_used)
            total = sx * so
            for p in chosen:
                total *= p.sign
            out.append(DiagramGenerator(
                points=tuple(arc_pts + circ_pts),
                occupied=frozenset(arcs_used),
                sigma_x_sign=sx,
                sigma_o_sign=so,
                sign=total))
            return
        remaining = d.genus - beta + 1
        if len(circles_used) + remaining < d.alpha_circles:
            return
        for p in by_beta[beta]:
            kind, idx = p.alpha
            if kind == "arc":
                if idx in arcs_used:
                    continue
                arcs_used.add(idx)
                search(beta + 1, chosen + [p], arcs_used, circles_used)
                arcs_used.discard(idx)
            else:
                if idx in circles_used:
                    continue
                circles_used.add(idx)
                search(beta + 1, chosen + [p], arcs_used, circles_used)
                circles_used.discard(idx)

    search(1, [], set(), set())
    return out


def intersection_matrix(d: BorderedDiagram) -> list[list[int]]:
    """(g+k) x g signed counts: alpha-circle rows, then alpha-arc rows."""
    rows = [[0] * d.genus for _ in range(d.alpha_circles + 2 * d.k)]
    for p in d.points:
        kind, idx = p.alpha
        r = idx - 1 if kind == "circle" else d.alpha_circles + idx - 1
        rows[r][p.beta - 1] += p.sign
    return rows


def deleted_matrix(d: BorderedDiagram, s) -> list[list[int]]:
    """M(H) with the arc rows named by s removed."""
    m = intersection_matrix(d)
    keep = list(range(d.alpha_circles)) + [
        d.alpha_circles + i - 1 for i in range(1, 2 * d.k + 1) if i not in s]
    return [m[r] for r in keep]


def cfd_class_from_determinants(d: BorderedDiagram) -> ExteriorClass:
    """Coefficient of a_s is det of M(H) with the s arc rows deleted."""
    out = ExteriorClass(d.k, {})
    for s in itertools.combinations(range(1, 2 * d.k + 1), d.k):
        c = det_int(deleted_matrix(d, set(s)))
        if c:
            out = out + basis_class(d.k, s, LaurentHalf.monomial(0, c))
    return out


def enumerated_class(d: BorderedDiagram) -> ExteriorClass:
    """[CFD(H)]: signed generator count per unoccupied arc set."""
    out = ExteriorClass(d.k, {})
    for g in enumerate_generators(d):
        unoccupied = frozenset(range(1, 2 * d.k + 1)) - g.occupied
        out = out + basis_class(d.k, unoccupied, LaurentHalf.monomial(0, g.sign))
    return out


def duality_sign(d: BorderedDiagram, s) -> int:
    """The constant relating det M(H)_s to the signed generator count."""
    comp = frozenset(range(1, 2 * d.k + 1)) - frozenset(s)
    block = -1 if (d.k * d.alpha_circles) % 2 else 1
    return block * sigma_o_sign(d.k, comp)


@dataclass
class HomologyKernel:
    b1_rel: int
    order: int | None  # None means infinite
    kernel_wedge: ExteriorClass


def _swapped_matrix(d: BorderedDiagram) -> list[list[int]]:
    """M'(H): arc rows swapped in matched pairs, with intersection-form signs.

    Row j of the swapped block is the coefficient of the j-th handle class in
    the expansion of each beta-circle: with the cores paired so that
    a_{2i-1} . a_{2i} = +1, the coefficient of a_{2i-1} is +(beta . arc 2i)
    and the coefficient of a_{2i} is -(beta . arc 2i-1).
    """
    m = intersection_matrix(d)
    rows = [m[r][:] for r in range(d.alpha_circles)]
    for i in range(1, 2 * d.k + 1):
        if i % 2:
            rows.append(m[d.alpha_circles + i][:])
        else:
            rows.append([-v for v in m[d.alpha_circles + i - 2]])
    return rows


def homology_kernel(d: BorderedDiagram) -> HomologyKernel:
    """Rank defect, |H_1(Y, dY)|, and the top wedge of ker(H_1(F) -> H_1(Y))."""
    g, k = d.genus, d.k
    mprime = _swapped_matrix(d)
    top = [row[:] for row in mprime[: g - k]]
    rank = sum(1 for v in smith_normal_form(top) if v) if top else 0
    b1 = (g - k) - rank
    if b1 > 0:
        return HomologyKernel(b1, None, ExteriorClass(k, {}))
    reduced, pivots = column_echelon(mprime, g - k)
    free_cols = [c for c in range(g) if c not in pivots]
    order = 1
    for r, c in enumerate(pivots):
        order *= abs(reduced[r][c])
    wedge = ExteriorClass(k, {})
    if len(free_cols) == k:
        a_block = [[reduced[g - k + r][c] for c in free_cols]
                   for r in range(2 * k)]
        for s in itertools.combinations(range(1, 2 * k + 1), k):
            minor = det_int([a_block[i - 1] for i in s])
            if minor:
                wedge = wedge + basis_class(k, s, LaurentHalf.monomial(0, minor))
    return HomologyKernel(0, order, wedge)


def h1_rel_order_oracle(d: BorderedDiagram) -> int | None:
    """|Z^{g-k} / im(M^top)| by Smith normal form; None when infinite."""
    top = _swapped_matrix(d)[: d.genus - d.k]
    if not top:
        return 1
    diag = smith_normal_form(top)
    if len(diag) < len(top) or any(v == 0 for v in diag):
        return None
    order = 1
    for v in diag:
        order *= v
    return order


def verify_cfdker(d: BorderedDiagram) -> HomologyKernel:
    """Check span[CFD] = |H_1(Y, dY)| * Lambda^k ker(i*) on this diagram.

    The comparison uses the enumerated class (the determinants twisted by
    the per-subset duality sign), componentwise up to one global sign.
    """
    hk = homology_kernel(d)
    cls = enumerated_class(d)
    if hk.b1_rel > 0:
        if cls:
            raise TheoremViolation(
                f"b1(Y, dY) = {hk.b1_rel} > 0 but [CFD] = {cls}")
        return hk
    target = hk.kernel_wedge.scale(hk.order)
    if not target and not cls:
        return hk
    for eps in (1, -1):
        if cls.scale(eps) == target:
            return hk
    raise TheoremViolation(
        f"[CFD] = {cls} is not +-{hk.order} * kernel wedge {hk.kernel_wedge}")


def arc_slide_rows(matrix: list[list[int]], i: int, j: int,
                   num_circles: int, subtract: bool = False) -> list[list[int]]:
    """Row operation of sliding arc i over arc j: add row g-k+j to row g-k+i."""
    rows = [row[:] for row in matrix]
    ri, rj = num_circles + i - 1, num_circles + j - 1
    if i == j or not (0 <= ri < len(rows) and 0 <= rj < len(rows)):
        raise BadIndex(f"bad arc indices {i}, {j}")
    sign = -1 if subtract else 1
    rows[ri] = [a + sign * b for a, b in zip(rows[ri], rows[rj])]
    return rows


def az_sign_report(pmc: PointedMatchedCircle) -> dict:
    """Optional cross-check of the intersection-sign grading against m.

    The sign grading on middle-summand algebra elements is pinned by three
    properties: idempotents have sign +1, products multiply signs, and the
    differential flips them.  Those properties determine the signs only up
    to an independent choice on each element that is neither an idempotent,
    a product, nor a differential; for the candidate s = (-1)^m we report
    which relations hold and which elements stay gauge, rather than
    asserting a convention the combinatorial data cannot pin.
    """
    from .grading import m_of
    from .strands import basis_of_AZ, differential, multiply

    basis = basis_of_AZ(pmc, 0)
    sign = {el: (-1) ** m_of(el, pmc) for el in basis}
    idempotents = {el for el in basis
                   if all(g.is_idempotent() for g in el.terms)}
    idempotents_positive = all(sign[el] == 1 for el in idempotents)

    products = [(a, b, multiply(a, b)) for a in basis for b in basis
                if multiply(a, b)]
    differentials = [(a, differential(a)) for a in basis if differential(a)]
    failures = []
    for a, b, ab in products:
        if (-1) ** m_of(ab, pmc) != sign[a] * sign[b]:
            failures.append(("product", str(a), str(b)))
    for a, d in differentials:
        if (-1) ** m_of(d, pmc) != -sign[a]:
            failures.append(("differential", str(a)))

    # fixed-point closure of the elements whose sign the relations pin down
    determined = set(idempotents)
    single_products = [(a, b, ab) for a, b, ab in products if ab in sign]
    single_diffs = [(a, d) for a, d in differentials if d in sign]
    changed = True
    while changed:
        changed = False
        for a, b, ab in single_products:
            known = sum(x in determined for x in (a, b, ab))
            if known == 2:
                determined.update({a, b, ab})
                changed = True
        for a, d in single_diffs:
            if (a in determined) != (d in determined):
                determined.update({a, d})
                changed = True
    return {
        "basis_size": len(basis),
        "idempotents_positive": idempotents_positive,
        "product_relations_checked": len(products),
        "differential_relations_checked": len(differentials),
        "relation_failures": failures,
        "gauge_elements": len(basis) - len(determined),
    }
