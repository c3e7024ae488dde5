import itertools
from fractions import Fraction

import pytest

from bdecat.dmodules import AInfModule, ModuleGenerator
from bdecat.grothendieck import LaurentHalf, normalize_symmetric, substitute
from bdecat.satellite import (PatternClass,
                              check_satellite_formula, decompose,
                              satellite_polynomial)
from tests.conftest import CFK_NAMES, PATTERN_NAMES, load_fixture

H = Fraction(1, 2)


def test_core_pattern_decomposition():
    q, p = decompose(load_fixture("cfa_core"))
    assert q == LaurentHalf.one()
    assert not p


def test_meridian_style_decomposition(torus):
    pc = PatternClass(AInfModule(torus, [ModuleGenerator("w", {2}, 0, 0)], []), 1)
    q, p = decompose(pc)
    assert not q
    assert p == LaurentHalf.one()


def test_two_generator_p_component(torus):
    gens = [ModuleGenerator("w1", {2}, 0, 2), ModuleGenerator("w2", {2}, 1, -1)]
    pc = PatternClass(AInfModule(torus, gens, []), 1)
    q, p = decompose(pc)
    assert not q
    assert p == LaurentHalf.monomial(2) + LaurentHalf.monomial(-1, -1)


def test_core_against_trefoil():
    res = satellite_polynomial(load_fixture("cfa_core"),
                               load_fixture("cfk_trefoil_right"))
    assert res.symmetric
    assert res.poly == (LaurentHalf.monomial(1) + LaurentHalf.monomial(0, -1)
                        + LaurentHalf.monomial(-1))


def test_core_against_figure8():
    res = satellite_polynomial(load_fixture("cfa_core"),
                               load_fixture("cfk_figure8"))
    assert res.poly == (LaurentHalf.monomial(1, -1) + LaurentHalf.monomial(0, 3)
                        + LaurentHalf.monomial(-1, -1))


def test_any_pattern_against_unknot_returns_q():
    unknot = load_fixture("cfk_unknot")
    for name in PATTERN_NAMES:
        pc = load_fixture(name)
        q, _ = decompose(pc)
        if not q:
            continue
        assert satellite_polynomial(pc, unknot) == normalize_symmetric(q)


@pytest.mark.parametrize("pattern,companion",
                         list(itertools.product(PATTERN_NAMES, CFK_NAMES)))
def test_formula_on_all_shipped_pairs(pattern, companion):
    check_satellite_formula(load_fixture(pattern), load_fixture(companion))


def test_winding2_pattern_p_is_invisible():
    """Q = 1 with arbitrary nonzero P against the trefoil gives t^2 - 1 + t^-2."""
    res = satellite_polynomial(load_fixture("cfa_winding2"),
                               load_fixture("cfk_trefoil_right"))
    assert res.poly == (LaurentHalf.monomial(2) + LaurentHalf.monomial(0, -1)
                        + LaurentHalf.monomial(-2))


def test_p_perturbation_invariance(torus):
    """Adding iota1 generators perturbs P but never the satellite polynomial."""
    base = load_fixture("cfa_trefoil_pattern")
    companion = load_fixture("cfk_trefoil_right")
    reference = satellite_polynomial(base, companion)
    for extra_m, extra_a in ((0, H), (1, Fraction(-3, 2)), (0, 2)):
        gens = list(base.cfa.generators.values()) + [
            ModuleGenerator("pert", {2}, extra_m, extra_a)]
        perturbed = PatternClass(AInfModule(torus, gens, []), base.winding)
        assert decompose(perturbed)[1] != decompose(base)[1]
        assert satellite_polynomial(perturbed, companion) == reference


def test_satellite_evaluates_to_unit_at_one():
    for pattern in PATTERN_NAMES:
        pc = load_fixture(pattern)
        q, _ = decompose(pc)
        if q.evaluate_at_one() not in (1, -1):
            continue
        for companion in CFK_NAMES:
            res = satellite_polynomial(pc, load_fixture(companion))
            assert res.poly.evaluate_at_one() in (1, -1)


def test_core_winding_fixture_integrity():
    """The core carries winding 1: satellite = substitute(Delta, k) iff k = 1."""
    core = load_fixture("cfa_core")
    assert core.winding == 1
    companion = load_fixture("cfk_trefoil_right")
    from bdecat.cfk2cfd import build_cfd, verify_a1
    delta = verify_a1(build_cfd(companion), companion)
    assert satellite_polynomial(core, companion).poly == substitute(delta, 1)
    wrong = PatternClass(core.cfa, 2)
    assert satellite_polynomial(wrong, companion).poly != substitute(delta, 1)


def test_pairing_equals_q_times_delta_before_normalization():
    """The identity is exact, not just exact up to the symmetrization:
    the a2 component of the companion class vanishes, so the cross term
    drops out of the raw pairing."""
    from bdecat.cfk2cfd import build_cfd
    from bdecat.grothendieck import class_of, pair
    for pattern, companion in itertools.product(PATTERN_NAMES, CFK_NAMES):
        pc = load_fixture(pattern)
        cfk = load_fixture(companion)
        cfd = build_cfd(cfk)
        raw = pair(class_of(pc.cfa), substitute(class_of(cfd), pc.winding))
        q, _ = decompose(pc)
        delta = class_of(cfd).coefficient(frozenset({1}))
        assert raw == q * substitute(delta, pc.winding)
