"""The K0 value type: exterior algebra classes with Laurent coefficients.

K0 of the surface algebra is the free Z-module on subsets s of [2k], written
a_s = a_{j1} ^ ... ^ a_{jn} for the increasingly ordered elements of s, with
coefficients in Z[t^{1/2}, t^{-1/2}].  The class of a graded module counts
its generators: [M] = sum over generators of (-1)^m t^a a_{idempotent}.  The
pairing makes the a_s orthonormal, so the pairing of two classes is the sum
over equal subsets of the products of their Laurent coefficients.

Half-integer exponents are stored as doubled integers; nothing here ever
touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple


class MissingGrading(ValueError):
    """A generator lacks the Z/2 grading needed for its sign."""


class GenusMismatch(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


def _to_doubled(e) -> int:
    f = Fraction(e)
    if (2 * f).denominator != 1:
        raise ValueError(f"exponent {e} is not a half-integer")
    return int(2 * f)


@dataclass(frozen=True)
class LaurentHalf:
    """Sparse Laurent polynomial in t^(1/2); keys are doubled exponents."""

    coeffs: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def from_dict(d: dict[int, int]) -> "LaurentHalf":
        return LaurentHalf(tuple(sorted((e, c) for e, c in d.items() if c)))

    @staticmethod
    def monomial(exponent, coeff: int = 1) -> "LaurentHalf":
        return LaurentHalf.from_dict({_to_doubled(exponent): coeff})

    @staticmethod
    def zero() -> "LaurentHalf":
        return LaurentHalf()

    @staticmethod
    def one() -> "LaurentHalf":
        return LaurentHalf.monomial(0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "LaurentHalf") -> "LaurentHalf":
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentHalf.from_dict(d)

    def __neg__(self) -> "LaurentHalf":
        return LaurentHalf(tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: "LaurentHalf") -> "LaurentHalf":
        return self + (-other)

    def __mul__(self, other: "LaurentHalf") -> "LaurentHalf":
        d: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentHalf.from_dict(d)

    def scale(self, c: int) -> "LaurentHalf":
        return LaurentHalf.from_dict({e: c * v for e, v in self.coeffs})

    def evaluate_at_one(self) -> int:
        return sum(c for _, c in self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs, reverse=True):
            if e == 0:
                term = str(abs(c))
            else:
                expo = "" if e == 2 else ("^(%d/2)" % e if e % 2 else "^%d" % (e // 2))
                term = ("" if abs(c) == 1 else str(abs(c)) + "*") + "t" + expo
            parts.append(("- " if c < 0 else "+ ") + term)
        head = parts[0][2:] if parts[0].startswith("+ ") else "-" + parts[0][2:]
        return " ".join([head] + parts[1:])


def substitute(x, w: int):
    """Replace t by t^w (exponent scaling); works on polynomials and classes."""
    if isinstance(x, LaurentHalf):
        return LaurentHalf.from_dict({w * e: c for e, c in x.coeffs})
    if isinstance(x, ExteriorClass):
        return ExteriorClass(x.genus,
                             {s: substitute(c, w) for s, c in x.coeffs.items()})
    raise TypeError(f"cannot substitute in {type(x)!r}")


class NormalizedPolynomial(NamedTuple):
    poly: LaurentHalf
    symmetric: bool  # False flags a NotSymmetrizable input

    def __str__(self):
        tag = "" if self.symmetric else "  [not symmetrizable]"
        return f"{self.poly}{tag}"


def normalize_symmetric(p: LaurentHalf) -> NormalizedPolynomial:
    """Center the exponents and fix the sign so q(t) = q(1/t) and q(1) >= 0.

    When no monomial shift makes the polynomial symmetric, return the
    centered representative (if the centering shift is integral in t^(1/2))
    flagged as not symmetrizable.
    """
    if not p:
        raise ZeroPolynomial("cannot normalize the zero polynomial")
    exps = [e for e, _ in p.coeffs]
    span = min(exps) + max(exps)
    if span % 2 != 0:
        shift = -(span // 2)  # best-effort centering; symmetry is impossible
        centered = LaurentHalf.from_dict({e + shift: c for e, c in p.coeffs})
        return NormalizedPolynomial(centered, False)
    shift = -span // 2
    centered = LaurentHalf.from_dict({e + shift: c for e, c in p.coeffs})
    d = centered.as_dict()
    symmetric = all(d.get(-e) == c for e, c in d.items())
    if not symmetric:
        return NormalizedPolynomial(centered, False)
    total = centered.evaluate_at_one()
    if total < 0 or (total == 0 and d[max(d)] < 0):
        centered = -centered
    return NormalizedPolynomial(centered, True)


@dataclass(frozen=True)
class ExteriorClass:
    """Element of Lambda* H_1(F; Z) tensor Z[t^(1/2), t^(-1/2)]."""

    genus: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {frozenset(s): c for s, c in self.coeffs.items() if c}
        for s in clean:
            if not all(1 <= j <= 2 * self.genus for j in s):
                raise ValueError(f"subset {set(s)} outside [2k]")
        object.__setattr__(self, "coeffs", clean)

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, s) -> LaurentHalf:
        return self.coeffs.get(frozenset(s), LaurentHalf.zero())

    def __add__(self, other: "ExteriorClass") -> "ExteriorClass":
        if self.genus != other.genus:
            raise GenusMismatch(f"{self.genus} vs {other.genus}")
        d = dict(self.coeffs)
        for s, c in other.coeffs.items():
            d[s] = d.get(s, LaurentHalf.zero()) + c
        return ExteriorClass(self.genus, d)

    def __neg__(self) -> "ExteriorClass":
        return ExteriorClass(self.genus, {s: -c for s, c in self.coeffs.items()})

    def scale(self, c: int) -> "ExteriorClass":
        return ExteriorClass(self.genus, {s: v.scale(c) for s, v in self.coeffs.items()})

    def __str__(self):
        if not self.coeffs:
            return "0"
        def label(s):
            return "a{" + ",".join(map(str, sorted(s))) + "}"
        parts = [f"({self.coeffs[s]})*{label(s)}"
                 for s in sorted(self.coeffs, key=lambda s: (len(s), sorted(s)))]
        return " + ".join(parts)


def basis_class(genus: int, s, poly: LaurentHalf | None = None) -> ExteriorClass:
    return ExteriorClass(genus, {frozenset(s): poly or LaurentHalf.one()})


def class_of(module) -> ExteriorClass:
    """[M] = sum over generators of (-1)^m t^a a_{idempotent}."""
    genus = module.pmc.genus
    out = ExteriorClass(genus, {})
    for gen in module.generators.values():
        if gen.m is None:
            raise MissingGrading(f"generator {gen.name} has no Z/2 grading")
        a = gen.a if gen.a is not None else Fraction(0)
        sign = -1 if gen.m % 2 else 1
        out = out + basis_class(genus, gen.idempotent, LaurentHalf.monomial(a, sign))
    return out


def pair(x: ExteriorClass, y: ExteriorClass) -> LaurentHalf:
    """The inner product with the a_s orthonormal, Laurent-bilinear."""
    if x.genus != y.genus:
        raise GenusMismatch(f"{x.genus} vs {y.genus}")
    total = LaurentHalf.zero()
    for s, c in x.coeffs.items():
        if s in y.coeffs:
            total = total + c * y.coeffs[s]
    return total


def euler_of_complex(complex_) -> LaurentHalf:
    """chi = sum over generators of (-1)^m t^a."""
    total = LaurentHalf.zero()
    for gen in complex_.generators.values():
        if gen.m is None:
            raise MissingGrading(f"generator {gen.name} has no Z/2 grading")
        a = gen.a if gen.a is not None else Fraction(0)
        total = total + LaurentHalf.monomial(a, -1 if gen.m % 2 else 1)
    return total
