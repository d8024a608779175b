import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellfun.algebra import GF, QQ, FieldError, LaurentPoly, Poly, RatFunc
from ellfun.height_mason import (
    AZero,
    BothPowers,
    BZero,
    Exemption,
    MasonTriple,
    MasonVerdict,
    MasonViolation,
    NotUnitDifference,
    classify_unit_difference,
    height,
    height_by_places,
    laurent_space,
    frobenius_root_search,
    mason_check,
    mason_harness,
    random_triple,
    unit_difference_pairs,
    unit_difference_pairs_brute,
)
from ellfun.parser import parse_ratfunc
from strategies import field_st, nonzero_ratfuncs


@given(st.data())
def test_height_sum_equals_degree_formula(data):
    F = data.draw(field_st)
    x = data.draw(nonzero_ratfuncs(F, 4))
    assert height_by_places(x) == height(x) == max(x.num.degree, x.den.degree)


def test_height_of_zero():
    with pytest.raises(ValueError):
        height(RatFunc.constant(QQ, 0))


def test_height_counts_residue_degree():
    # T^2 + 1 is a single place of degree 2 over GF(3)
    x = parse_ratfunc("1/(T^2+1)", "GF(3)")
    assert height_by_places(x) == 2


# -- Mason ---------------------------------------------------------------------


def test_tight_triple():
    # T - (T + 1) + 1 = 0: V = {0, -1, inf}, H(T / -(T+1)) = 1
    F = GF(5)
    T = RatFunc.gen(F)
    v = mason_check(MasonTriple.completing(T, RatFunc.constant(F, 1)))
    assert v.exempt is Exemption.NOT_EXEMPT
    assert (v.v_size, v.height, v.slack) == (3, 1, 0)


def test_pth_power_triple_is_exempt():
    # T^2 + 1 = (T + 1)^2 in characteristic 2 exceeds the bound, but the ratio is a square
    F = GF(2)
    T = RatFunc.gen(F)
    v = mason_check(MasonTriple.completing(T**2, RatFunc.constant(F, 1)))
    assert v.exempt is Exemption.RATIO_PTH_POWER
    assert v.slack == -1


def test_violation_is_raised_for_non_exempt():
    with pytest.raises(MasonViolation):
        MasonVerdict(Exemption.NOT_EXEMPT, v_size=3, height=2)


def test_constant_ratio_is_exempt():
    F = QQ
    T = RatFunc.gen(F)
    v = mason_check(MasonTriple.completing(T, 2 * T))
    assert v.exempt is Exemption.RATIO_CONSTANT


def test_triple_must_vanish():
    T = RatFunc.gen(QQ)
    with pytest.raises(ValueError):
        MasonTriple(T, T, T)
    with pytest.raises(ValueError):
        MasonTriple.completing(T, -T)


def test_explicit_place_set_must_be_admissible():
    F = GF(5)
    T = RatFunc.gen(F)
    t = MasonTriple.completing(T, RatFunc.constant(F, 1))
    v = mason_check(t)
    with pytest.raises(ValueError):
        mason_check(t, places=v.places[:1])
    # a larger admissible set only adds slack
    from ellfun.algebra import Place

    extra = v.places + (Place.finite(Poly.gen(F) + 2),)
    assert mason_check(t, places=extra).slack == 1


@pytest.mark.parametrize("F", [QQ, GF(2), GF(3), GF(5), GF(2, 2)])
@settings(max_examples=100)
@given(seed=st.integers(0, 2**32))
def test_mason_random(F, seed):
    t = random_triple(F, random.Random(seed))
    v = mason_check(t)
    if v.exempt is Exemption.NOT_EXEMPT:
        assert v.slack >= 0


def test_harness_reports_tight_triple():
    res = mason_harness(GF(3), 200, seed=5)
    assert res.triples == 200
    assert not res.violations
    assert res.tight is not None and mason_check(res.tight).slack == 0


# -- unit differences A^3 - B^2 --------------------------------------------------


def _L(F, coeffs, shift=0):
    return LaurentPoly(Poly(F, coeffs), shift)


def test_classify_families():
    F = GF(5)
    assert isinstance(classify_unit_difference(_L(F, [2], 2), _L(F, [1], 3)), BothPowers)
    assert isinstance(classify_unit_difference(_L(F, []), _L(F, [3], -1)), AZero)
    assert isinstance(classify_unit_difference(_L(F, [4], 1), _L(F, [])), BZero)
    assert isinstance(classify_unit_difference(_L(F, [1, 1]), _L(F, [1])), NotUnitDifference)


def test_classify_rejects_small_characteristic():
    with pytest.raises(FieldError):
        classify_unit_difference(_L(GF(3), [1]), _L(GF(3), [1]))


def test_polynomial_constant_difference_forces_constants():
    # A, B in k[T] with A^3 - B^2 in k^x: only constants
    F = GF(5)
    for A, B in unit_difference_pairs(F, 2, 0):
        if A.is_polynomial() and B.is_polynomial() and (A**3 - B**2).shift == 0:
            cls = classify_unit_difference(A, B)
            assert getattr(cls, "n") == 0


@pytest.mark.parametrize("F,deg,shift", [(GF(5), 1, 1), (GF(7), 1, 1), (GF(5), 2, 0)])
def test_fast_enumerator_matches_double_loop(F, deg, shift):
    fast = sorted(map(str, unit_difference_pairs(F, deg, shift)))
    brute = sorted(map(str, unit_difference_pairs_brute(F, deg, shift)))
    assert fast == brute


def test_laurent_space_size():
    F = GF(5)
    # zero, plus nonzero unit parts with nonzero constant term, times shifts
    n_units = sum(4 * (4 * 5 ** (d - 1) if d else 1) for d in range(3))
    assert len(laurent_space(F, 2, 1)) == 1 + n_units * 3


def test_reconstruction_roundtrip():
    F = GF(7)
    for A, B in unit_difference_pairs(F, 1, 2):
        cls = classify_unit_difference(A, B)
        assert cls.reconstruct(F) == (A, B)


# -- root search ---------------------------------------------------------------------


def _brute_roots(p, r, m, n, Q1, Q, c, bound):
    F = Q1.field
    zero = Poly(F, [])
    out = []
    for tup in itertools.product(list(F.elements()), repeat=bound + 1):
        Y = Poly(F, list(tup))
        if Y ** (p**r) - Y**n * Q1**m - Q1 ** (m + 1) * Q - Poly(F, [c]) == zero:
            out.append(Y)
    return out


@pytest.mark.parametrize("p,r,m,n", [(2, 1, 1, 1), (2, 2, 1, 3), (3, 1, 2, 1), (3, 1, 1, 2)])
def test_root_search_agrees_with_direct_evaluation(p, r, m, n):
    F = GF(p)
    T = Poly.gen(F)
    for Q1 in (T, T + 1):
        for Q in (Poly(F, []), T):
            found = frobenius_root_search(p, r, m, n, Q1, Q, 1, 3)
            brute = _brute_roots(p, r, m, n, Q1, Q, 1, 3)
            assert (found is None) == (not brute)


def test_root_search_detects_a_root(monkeypatch):
    # with the side conditions switched off, c = 0 and Q = 0 make Y = 0 a root
    import ellfun.height_mason as hm

    monkeypatch.setattr(hm, "_check_root_search", lambda *a: None)
    F = GF(3)
    root = hm.frobenius_root_search(3, 1, 1, 1, Poly.gen(F), Poly(F, []), 0, 2)
    assert root is not None and root.is_zero()


def test_root_search_shards_cover_the_root(monkeypatch):
    import ellfun.height_mason as hm

    monkeypatch.setattr(hm, "_check_root_search", lambda *a: None)
    F = GF(3)
    # roots of Y^3 - Y T: Y = 0 only (Y^2 = T has no polynomial solution)
    hits = [hm.frobenius_root_search(3, 1, 1, 1, Poly.gen(F), Poly(F, []), 0, 2, shard=(i, 4)) for i in range(4)]
    assert [h is not None for h in hits] == [True, False, False, False]


@pytest.mark.parametrize(
    "args",
    [
        (2, 1, 2, 1),  # m >= p^r
        (2, 1, 1, 2),  # n divisible by p
        (3, 1, 0, 1),  # m < 1
    ],
)
def test_root_search_side_conditions(args):
    p, r, m, n = args
    F = GF(p)
    with pytest.raises(ValueError):
        frobenius_root_search(p, r, m, n, Poly.gen(F), Poly(F, []), 1, 2)
