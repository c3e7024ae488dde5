"""The torus algebra and the Alexander weight maps for torus boundary.

The torus circle has four points matched (1,2,1,2); the middle summand of
its algebra has two idempotents iota0 (pair 1) and iota1 (pair 2) and six
Reeb elements rho1, rho2, rho3, rho12, rho23, rho123 named by the boundary
intervals they cover.  The only nonzero chord products are
rho1*rho2 = rho12, rho2*rho3 = rho23, rho1*rho23 = rho12*rho3 = rho123.

The spin^c component of the unrefined grading is the interval multiplicity
triple (r1, r2, r3).  For the n-framed knot complement the Alexander weight
of a coefficient is ((n+1)/2) r1 + ((n-1)/2) r2 + ((-n-1)/2) r3; for a
pattern of winding p in the 0-framed solid torus it is d - p (r2 + r3) with
d the basepoint multiplicity (zero for every hat-flavor operation).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import strands
from .dmodules import AInfModule, TypeDStructure
from .grading import m_of
from .pmc import ReebChord, torus_pmc
from .strands import AlgebraElement, multiply


class BigradingViolation(ValueError):
    pass


ELEMENT_CHORDS = {
    "rho1": (ReebChord(1, 2),),
    "rho2": (ReebChord(2, 3),),
    "rho3": (ReebChord(3, 4),),
    "rho12": (ReebChord(1, 3),),
    "rho23": (ReebChord(2, 4),),
    "rho123": (ReebChord(1, 4),),
}

INTERVALS = {
    "iota0": (0, 0, 0),
    "iota1": (0, 0, 0),
    "rho1": (1, 0, 0),
    "rho2": (0, 1, 0),
    "rho3": (0, 0, 1),
    "rho12": (1, 1, 0),
    "rho23": (0, 1, 1),
    "rho123": (1, 1, 1),
}

_NONZERO_PRODUCTS = {
    ("rho1", "rho2"): "rho12",
    ("rho2", "rho3"): "rho23",
    ("rho1", "rho23"): "rho123",
    ("rho12", "rho3"): "rho123",
}


class TorusAlgebra:
    """The eight named elements of A(Z(T^2), 0) with their m gradings."""

    def __init__(self):
        self.pmc = torus_pmc()
        self.elements: dict[str, AlgebraElement] = {
            "iota0": strands.pair_idempotent(self.pmc, {1}),
            "iota1": strands.pair_idempotent(self.pmc, {2}),
        }
        for name, chords in ELEMENT_CHORDS.items():
            self.elements[name] = strands.a_of(self.pmc, chords, 0)
        self.names: dict[AlgebraElement, str] = {v: k for k, v in self.elements.items()}
        self.m: dict[str, int] = {name: m_of(el, self.pmc)
                                  for name, el in self.elements.items()}
        self._verify_table()

    def _verify_table(self):
        names = [n for n in self.elements if n.startswith("rho")]
        for a in names:
            for b in names:
                prod = multiply(self.elements[a], self.elements[b])
                expected = _NONZERO_PRODUCTS.get((a, b))
                got = self.names.get(prod) if prod else None
                if got != expected:
                    raise AssertionError(
                        f"{a}*{b}: expected {expected}, strands gave {got}")
        unit = self.elements["iota0"] + self.elements["iota1"]
        for name, el in self.elements.items():
            if multiply(unit, el) != el or multiply(el, unit) != el:
                raise AssertionError(f"iota0+iota1 is not a unit on {name}")

    def name_of(self, el: AlgebraElement) -> str | None:
        return self.names.get(el)


@lru_cache(maxsize=1)
def torus_algebra() -> TorusAlgebra:
    return TorusAlgebra()


def alexander_weight_cfd(r: tuple[int, int, int], n: int) -> Fraction:
    """Alexander weight of an interval triple for the n-framed complement."""
    r1, r2, r3 = r
    return (Fraction(n + 1, 2) * r1 + Fraction(n - 1, 2) * r2
            + Fraction(-n - 1, 2) * r3)


def alexander_weight_cfa(r: tuple[int, int, int], d: int, p: int) -> Fraction:
    """Alexander weight of (r; d) for a pattern of winding p in the solid torus.

    The interval functional is the refined coordinate q2 = (-r1+r2+r3)/2, the
    unique choice that kills the periodic class (0, 1, 1; p) and makes the
    box-tensor differential preserve the satellite Alexander grading.
    """
    r1, r2, r3 = r
    return d - p * Fraction(-r1 + r2 + r3, 2)


def coefficient_name(coeff: AlgebraElement) -> str:
    """Name a torus-algebra coefficient; raises for foreign elements."""
    name = torus_algebra().name_of(coeff)
    if name is None:
        raise BigradingViolation(f"coefficient {coeff} is not a torus element")
    return name


def check_bigrading(N: TypeDStructure, n: int) -> None:
    """Every delta edge must drop (m, a) by the coefficient's weight.

    For a triple (x, rho_I, y): a(x) - a(y) = alexander_weight_cfd([rho_I], n)
    and m(x) = m(rho_I) + m(y) + 1 mod 2.
    """
    alg = torus_algebra()
    for src, coeff, dst in N.delta:
        name = coefficient_name(coeff)
        gs, gd = N.generators[src], N.generators[dst]
        want_m = (alg.m[name] + gd.m + 1) % 2
        if gs.m != want_m:
            raise BigradingViolation(
                f"({src}, {name}, {dst}): m({src})={gs.m}, expected {want_m}")
        if gs.a is None or gd.a is None:
            continue
        want_da = alexander_weight_cfd(INTERVALS[name], n)
        if gs.a - gd.a != want_da:
            raise BigradingViolation(
                f"({src}, {name}, {dst}): a drop {gs.a - gd.a}, expected {want_da}")


def check_cfa_weights(M: AInfModule, p: int) -> None:
    """Hat-flavor operations never cross the second basepoint, so d = 0 and
    a(y) = a(x) + sum of -p (r2 + r3) over the inputs."""
    alg = torus_algebra()
    for x, ids, y in M.ops:
        gx, gy = M.generators[x], M.generators[y]
        if gx.a is None or gy.a is None:
            continue
        total = Fraction(0)
        for idx in ids:
            name = coefficient_name(M.basis.elements[idx])
            total += alexander_weight_cfa(INTERVALS[name], 0, p)
        if gy.a != gx.a + total:
            raise BigradingViolation(
                f"op ({x}; ...; {y}): a({y})={gy.a}, expected {gx.a + total}")
