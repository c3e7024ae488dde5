from fractions import Fraction

import pytest

from bdecat.dmodules import ModuleGenerator, TypeDStructure
from bdecat.strands import multiply
from bdecat.torus import (BigradingViolation, INTERVALS, alexander_weight_cfa,
                          alexander_weight_cfd, check_bigrading,
                          check_cfa_weights, torus_algebra)
from tests.conftest import load_fixture

H = Fraction(1, 2)

EXPECTED_PRODUCTS = {
    ("rho1", "rho2"): "rho12",
    ("rho2", "rho3"): "rho23",
    ("rho1", "rho23"): "rho123",
    ("rho12", "rho3"): "rho123",
}


LEFT_IDEM = {"iota0": "iota0", "iota1": "iota1",
             "rho1": "iota0", "rho2": "iota1", "rho3": "iota0",
             "rho12": "iota0", "rho23": "iota1", "rho123": "iota0"}
RIGHT_IDEM = {"iota0": "iota0", "iota1": "iota1",
              "rho1": "iota1", "rho2": "iota0", "rho3": "iota1",
              "rho12": "iota0", "rho23": "iota1", "rho123": "iota1"}


def expected_product(a: str, b: str) -> str | None:
    if a.startswith("iota"):
        return b if LEFT_IDEM[b] == a else None
    if b.startswith("iota"):
        return a if RIGHT_IDEM[a] == b else None
    return EXPECTED_PRODUCTS.get((a, b))


def test_full_multiplication_table(talg):
    """All 64 products of the eight named elements."""
    checked = 0
    for a in talg.elements:
        for b in talg.elements:
            prod = multiply(talg.elements[a], talg.elements[b])
            expected = expected_product(a, b)
            if expected is None:
                assert not prod, f"{a}*{b} should vanish"
            else:
                assert prod == talg.elements[expected], f"{a}*{b}"
            checked += 1
    assert checked == 64


def test_rho2_rho1_vanishes(talg):
    assert not multiply(talg.elements["rho2"], talg.elements["rho1"])


def test_unit_decomposition(talg):
    unit = talg.elements["iota0"] + talg.elements["iota1"]
    for el in talg.elements.values():
        assert multiply(unit, el) == el
        assert multiply(el, unit) == el


def test_cfd_weights_at_framing_zero():
    assert alexander_weight_cfd((1, 0, 0), 0) == H
    assert alexander_weight_cfd((0, 1, 0), 0) == -H
    assert alexander_weight_cfd((0, 0, 1), 0) == -H
    assert alexander_weight_cfd((0, 0, 0), 5) == 0


@pytest.mark.parametrize("n", range(-3, 4))
def test_framed_longitude_class_is_in_the_kernel(n):
    assert alexander_weight_cfd((1, n + 1, n), n) == 0
    assert alexander_weight_cfd((2, 2 * (n + 1), 2 * n), n) == 0


def test_cfa_weights():
    # the periodic class ((0,1,1); d = p) is in the kernel for every winding
    for p in range(4):
        assert alexander_weight_cfa((0, 1, 1), p, p) == 0
        assert alexander_weight_cfa((0, 2, 2), 2 * p, p) == 0
    assert alexander_weight_cfa((0, 0, 0), 1, 7) == 1
    assert alexander_weight_cfa((5, 2, 9), 4, 0) == 4  # winding 0 ignores r


def test_cfa_weight_compatible_with_cfd_weight():
    """The weighted box-tensor differential preserves a: the A-side gain
    p * w_cfd cancels the D-side drop w_cfd scaled by the winding weight."""
    for r in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)):
        for p in range(4):
            assert alexander_weight_cfa(r, 0, p) == \
                p * alexander_weight_cfd(r, 0)


def test_m_values_multiplicative(talg):
    m = talg.m
    assert m["rho12"] == (m["rho1"] + m["rho2"]) % 2
    assert m["rho23"] == (m["rho2"] + m["rho3"]) % 2
    assert m["rho123"] == (m["rho1"] + m["rho2"] + m["rho3"]) % 2


def test_intervals_table_matches_grading(talg):
    from bdecat.grading import gr_prime
    for name, el in talg.elements.items():
        assert gr_prime(el).alpha == INTERVALS[name]


def test_check_bigrading_accepts_unknot_loop(talg, torus):
    N = TypeDStructure(torus, [ModuleGenerator("x", {1}, 0, 0)],
                       [("x", talg.elements["rho12"], "x")])
    check_bigrading(N, 0)


def test_check_bigrading_accepts_built_cfd():
    from bdecat.cfk2cfd import build_cfd
    cfd = build_cfd(load_fixture("cfk_trefoil_right"))
    check_bigrading(cfd, 0)


def test_check_bigrading_rejects_shifted_a(talg, torus):
    # a drop 1 across a rho12 arrow whose weight is 0
    gens = [ModuleGenerator("x", {1}, 0, 2), ModuleGenerator("y", {1}, 0, 1)]
    N = TypeDStructure(torus, gens, [("x", talg.elements["rho12"], "y")])
    with pytest.raises(BigradingViolation):
        check_bigrading(N, 0)


def test_check_bigrading_rejects_wrong_m(talg, torus):
    # rho1 has m = 0, so the edge needs m(x) = m(y) + 1
    gens = [ModuleGenerator("x", {1}, 0, Fraction(1, 2)),
            ModuleGenerator("y", {2}, 0, 0)]
    N = TypeDStructure(torus, gens, [("x", talg.elements["rho1"], "y")])
    with pytest.raises(BigradingViolation):
        check_bigrading(N, 0)


def test_check_cfa_weights_fixture():
    pattern = load_fixture("cfa_with_ops")
    check_cfa_weights(pattern.cfa, pattern.winding)


def test_check_cfa_weights_rejects_bad_a(torus, talg):
    from bdecat.dmodules import AInfModule
    M = AInfModule(torus, [ModuleGenerator("u", {1}, 0, 0),
                           ModuleGenerator("w", {2}, 1, 0)],
                   [("w", [talg.elements["rho2"]], "u")])
    with pytest.raises(BigradingViolation):
        check_cfa_weights(M, 1)
