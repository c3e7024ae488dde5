"""Type D structures of 0-framed knot complements from reduced CFK^- data.

Input is a horizontally and vertically simplified basis: generators with
integer (maslov, alexander) bigradings, vertical and horizontal arrows with
at most one of each touching any generator, a unique generator xi_v with no
vertical arrow and a unique xi_h with no horizontal arrow, and the integer
tau.  Arrows point in the direction of the differential: a vertical arrow
x -> y of length l has A(y) = A(x) - l and M(y) = M(x) - 1, a horizontal
arrow has A(y) = A(x) + l and M(y) = M(x) - 1 + 2l.

Each arrow becomes a chain of coefficient maps through l new iota1
generators, and one unstable chain joins xi_v to xi_h with shape dictated by
the sign of tau:

    vertical   x -> y:  x --rho1--> v1 <--rho23-- ... <--rho23-- vl <--rho123-- y
    horizontal x -> y:  x --rho3--> h1 --rho23--> ... --rho23--> hl --rho2--> y
    tau = 0:            xi_v --rho12--> xi_h
    tau > 0:            xi_v --rho1--> u1 <--rho23-- ... <--rho23-- u_{2tau} <--rho3-- xi_h
    tau < 0:            xi_v --rho123--> u1 --rho23--> ... --rho23--> u_{2|tau|} --rho2--> xi_h

Calibration: iota0 generators carry a = +alexander and m = maslov mod 2, and
the chains above are the unique assignment for which every edge satisfies
the 0-framed bigrading constraint and the iota1 generators cancel in pairs
within each Alexander grading.  The labels "vertical"/"horizontal" refer to
the arrow's direction on the (U, A) plot of the input complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dmodules import ModuleGenerator, TypeDStructure, check_type_d
from .grothendieck import (LaurentHalf, class_of, normalize_symmetric)
from .pmc import torus_pmc
from .torus import check_bigrading, torus_algebra


class CFKInvariantViolation(ValueError):
    pass


class CalibrationConflict(ValueError):
    """Chain endpoint gradings disagree with the stored CFK bigradings."""


class Mismatch(ValueError):
    """a1 component differs from the Euler characteristic of the input."""


class A2NonZero(ValueError):
    pass


@dataclass(frozen=True)
class CFKGenerator:
    name: str
    maslov: int
    alexander: int


@dataclass(frozen=True)
class Arrow:
    src: str
    dst: str
    length: int


@dataclass
class CFKComplex:
    generators: list[CFKGenerator]
    vertical: list[Arrow] = field(default_factory=list)
    horizontal: list[Arrow] = field(default_factory=list)
    tau: int = 0

    def __post_init__(self):
        self.by_name = {g.name: g for g in self.generators}
        if len(self.by_name) != len(self.generators):
            raise CFKInvariantViolation("duplicate generator names")
        self.xi_v = self._distinguished(self.vertical, "vertical")
        self.xi_h = self._distinguished(self.horizontal, "horizontal")
        at_one = sum((-1) ** (g.maslov % 2) for g in self.generators)
        if at_one not in (1, -1):
            raise CFKInvariantViolation(
                f"Euler characteristic at t=1 is {at_one}, not +-1")

    def _distinguished(self, arrows, kind) -> str:
        touched: dict[str, int] = {g.name: 0 for g in self.generators}
        for ar in arrows:
            if ar.length < 1:
                raise CFKInvariantViolation(f"{kind} arrow of length {ar.length}")
            for end in (ar.src, ar.dst):
                if end not in touched:
                    raise CFKInvariantViolation(f"unknown generator {end}")
                touched[end] += 1
        for name, count in touched.items():
            if count > 1:
                raise CFKInvariantViolation(
                    f"{name} touches {count} {kind} arrows")
        untouched = [name for name, count in touched.items() if count == 0]
        if len(untouched) != 1:
            raise CFKInvariantViolation(
                f"expected a unique generator with no {kind} arrow, "
                f"found {untouched}")
        return untouched[0]

    def euler(self) -> LaurentHalf:
        total = LaurentHalf.zero()
        for g in self.generators:
            total = total + LaurentHalf.monomial(
                g.alexander, -1 if g.maslov % 2 else 1)
        return total


IOTA0 = frozenset({1})
IOTA1 = frozenset({2})


def build_cfd(cfk: CFKComplex) -> TypeDStructure:
    """CFD of the 0-framed complement, bigraded per the chain tables."""
    alg = torus_algebra()
    rho = alg.elements

    gens: list[ModuleGenerator] = []
    delta: list[tuple] = []
    for g in cfk.generators:
        gens.append(ModuleGenerator(g.name, IOTA0, g.maslov % 2,
                                    Fraction(g.alexander)))

    def require(cond, msg):
        if not cond:
            raise CalibrationConflict(msg)

    for ar in cfk.vertical:
        x, y = cfk.by_name[ar.src], cfk.by_name[ar.dst]
        require(y.alexander == x.alexander - ar.length,
                f"vertical {ar.src}->{ar.dst}: alexander drop != length")
        require((y.maslov - x.maslov) % 2 == 1,
                f"vertical {ar.src}->{ar.dst}: maslov parity")
        v = []
        for j in range(1, ar.length + 1):
            name = f"v[{ar.src}>{ar.dst}]{j}"
            gens.append(ModuleGenerator(
                name, IOTA1, (x.maslov + 1) % 2,
                Fraction(x.alexander) + Fraction(1, 2) - j))
            v.append(name)
        delta.append((ar.src, rho["rho1"], v[0]))
        for j in range(ar.length - 1):
            delta.append((v[j + 1], rho["rho23"], v[j]))
        delta.append((ar.dst, rho["rho123"], v[-1]))

    for ar in cfk.horizontal:
        x, y = cfk.by_name[ar.src], cfk.by_name[ar.dst]
        require(y.alexander == x.alexander + ar.length,
                f"horizontal {ar.src}->{ar.dst}: alexander rise != length")
        require((y.maslov - x.maslov) % 2 == 1,
                f"horizontal {ar.src}->{ar.dst}: maslov parity")
        h = []
        for j in range(1, ar.length + 1):
            name = f"h[{ar.src}>{ar.dst}]{j}"
            gens.append(ModuleGenerator(
                name, IOTA1, (x.maslov + 1) % 2,
                Fraction(x.alexander) - Fraction(1, 2) + j))
            h.append(name)
        delta.append((ar.src, rho["rho3"], h[0]))
        for j in range(ar.length - 1):
            delta.append((h[j], rho["rho23"], h[j + 1]))
        delta.append((h[-1], rho["rho2"], ar.dst))

    xv, xh = cfk.by_name[cfk.xi_v], cfk.by_name[cfk.xi_h]
    require(xh.alexander == xv.alexander - 2 * cfk.tau,
            "unstable chain: a(xi_h) != a(xi_v) - 2 tau")
    require((xh.maslov - xv.maslov) % 2 == 0,
            "unstable chain: xi_v and xi_h have different m parity")
    if cfk.tau == 0:
        delta.append((cfk.xi_v, rho["rho12"], cfk.xi_h))
    elif cfk.tau > 0:
        u = []
        for j in range(1, 2 * cfk.tau + 1):
            name = f"u{j}"
            gens.append(ModuleGenerator(
                name, IOTA1, (xv.maslov + 1) % 2,
                Fraction(xv.alexander) + Fraction(1, 2) - j))
            u.append(name)
        delta.append((cfk.xi_v, rho["rho1"], u[0]))
        for j in range(2 * cfk.tau - 1):
            delta.append((u[j + 1], rho["rho23"], u[j]))
        delta.append((cfk.xi_h, rho["rho3"], u[-1]))
    else:
        u = []
        for j in range(1, -2 * cfk.tau + 1):
            name = f"u{j}"
            gens.append(ModuleGenerator(
                name, IOTA1, xv.maslov % 2,
                Fraction(xv.alexander) - Fraction(1, 2) + j))
            u.append(name)
        delta.append((cfk.xi_v, rho["rho123"], u[0]))
        for j in range(-2 * cfk.tau - 1):
            delta.append((u[j], rho["rho23"], u[j + 1]))
        delta.append((u[-1], rho["rho2"], cfk.xi_h))

    N = TypeDStructure(torus_pmc(), gens, delta)
    check_type_d(N)
    check_bigrading(N, 0)
    return N


def verify_a1(cfd: TypeDStructure, cfk: CFKComplex) -> LaurentHalf:
    """The a1 component of [CFD] must be the Euler characteristic of CFK."""
    component = class_of(cfd).coefficient(IOTA0)
    lhs = normalize_symmetric(component)
    rhs = normalize_symmetric(cfk.euler())
    if lhs != rhs:
        raise Mismatch(f"a1 component {lhs} differs from chi(CFK) = {rhs}")
    return lhs.poly


def verify_a2_zero(cfd: TypeDStructure) -> None:
    """The a2 component vanishes with per-exponent m balance among iota1."""
    component = class_of(cfd).coefficient(IOTA1)
    if component:
        raise A2NonZero(f"a2 component is {component}")
    census: dict[Fraction, list[int]] = {}
    for g in cfd.generators.values():
        if g.idempotent == IOTA1:
            census.setdefault(g.a, [0, 0])[g.m] += 1
    for a, (even, odd) in sorted(census.items()):
        if even != odd:
            raise A2NonZero(
                f"iota1 generators at a={a}: {even} with m=0, {odd} with m=1")
