from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bdecat.dmodules import ChainComplex, ModuleGenerator
from bdecat.grothendieck import (GenusMismatch, LaurentHalf,
                                 ZeroPolynomial, basis_class, class_of,
                                 euler_of_complex, normalize_symmetric, pair,
                                 substitute)

H = Fraction(1, 2)


def poly(*pairs) -> LaurentHalf:
    """Build from (exponent, coefficient) pairs with Fraction exponents."""
    out = LaurentHalf.zero()
    for e, c in pairs:
        out = out + LaurentHalf.monomial(Fraction(e), c)
    return out


laurents = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5)


def from_dict(d):
    return LaurentHalf.from_dict(d)


def test_substitute_examples():
    delta = poly((1, 1), (0, -1), (-1, 1))
    assert substitute(delta, 2) == poly((2, 1), (0, -1), (-2, 1))
    assert substitute(delta, 1) == delta
    cls = basis_class(1, {1}, LaurentHalf.monomial(H))
    assert substitute(cls, 3).coefficient({1}) == LaurentHalf.monomial(Fraction(3, 2))


@settings(deadline=None, max_examples=150)
@given(laurents, laurents, st.integers(1, 4))
def test_substitute_is_a_ring_homomorphism(a, b, w):
    x, y = from_dict(a), from_dict(b)
    assert substitute(x + y, w) == substitute(x, w) + substitute(y, w)
    assert substitute(x * y, w) == substitute(x, w) * substitute(y, w)


def test_normalize_flags_coefficient_asymmetry():
    # -t^2 + t: centering gives -t^(1/2) + t^(-1/2), whose coefficient
    # pattern is antisymmetric; no monomial shift symmetrizes it
    res = normalize_symmetric(poly((2, -1), (1, 1)))
    assert not res.symmetric
    assert res.poly == poly((H, -1), (-H, 1))


def test_normalize_flags_odd_exponent_span():
    # t^2 + t^(3/2) cannot even be centered on a half-integer grid
    res = normalize_symmetric(poly((2, 1), (Fraction(3, 2), 1)))
    assert not res.symmetric


def test_normalize_antisymmetric_representative_is_flagged():
    res = normalize_symmetric(poly((3, 1), (2, -1)))
    assert not res.symmetric
    assert res.poly == poly((H, 1), (-H, -1))


def test_normalize_sign_convention():
    res = normalize_symmetric(poly((1, -1), (0, 1), (-1, -1)))
    assert res.symmetric
    assert res.poly == poly((1, 1), (0, -1), (-1, 1))


def test_normalize_rejects_zero():
    with pytest.raises(ZeroPolynomial):
        normalize_symmetric(LaurentHalf.zero())


@settings(deadline=None, max_examples=150)
@given(laurents)
def test_normalize_is_idempotent(d):
    p = from_dict(d)
    if not p:
        return
    first = normalize_symmetric(p)
    again = normalize_symmetric(first.poly)
    assert again.poly == first.poly and again.symmetric == first.symmetric


def test_pair_orthonormality():
    a12 = basis_class(2, {1, 2})
    assert pair(a12, a12) == LaurentHalf.one()
    a1, a2 = basis_class(2, {1}), basis_class(2, {2})
    assert not pair(a1, a2)
    assert pair(a1 + a12, a1) == LaurentHalf.one()


def test_pair_genus_mismatch():
    with pytest.raises(GenusMismatch):
        pair(basis_class(1, {1}), basis_class(2, {1}))


@settings(deadline=None, max_examples=100)
@given(laurents, laurents, laurents)
def test_pair_symmetric_and_bilinear(a, b, c):
    x = basis_class(1, {1}, from_dict(a)) + basis_class(1, {2}, from_dict(b))
    y = basis_class(1, {2}, from_dict(c)) + basis_class(1, set(), from_dict(a))
    assert pair(x, y) == pair(y, x)
    assert pair(x + y, y) == pair(x, y) + pair(y, y)


def test_class_of_single_generator(torus):
    from bdecat.dmodules import TypeDStructure
    N = TypeDStructure(torus, [ModuleGenerator("x", {1}, 0, 0)], [])
    assert class_of(N) == basis_class(1, {1})


def test_class_is_additive_over_disjoint_unions(torus):
    from bdecat.dmodules import TypeDStructure
    a = TypeDStructure(torus, [ModuleGenerator("x", {1}, 0, 1)], [])
    b = TypeDStructure(torus, [ModuleGenerator("y", {2}, 1, 0)], [])
    both = TypeDStructure(torus, [ModuleGenerator("x", {1}, 0, 1),
                                  ModuleGenerator("y", {2}, 1, 0)], [])
    assert class_of(both) == class_of(a) + class_of(b)


def test_euler_examples():
    empty = ChainComplex(generators={}, differential=frozenset())
    assert not euler_of_complex(empty)
    two = ChainComplex(generators={
        "a": ModuleGenerator("a", {1}, 0, 1),
        "b": ModuleGenerator("b", {1}, 1, 1)}, differential=frozenset())
    assert not euler_of_complex(two)


def test_triangle_class_is_single_monomial():
    from tests.conftest import load_fixture
    triangle = load_fixture("typed_triangle")
    cls = class_of(triangle)
    assert set(cls.coeffs) == {frozenset({1})}
    assert cls.coefficient({1}) == LaurentHalf.monomial(H, -1)
