import itertools

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ellfun.algebra import GF, QQ, FieldError, Poly, RatFunc
from ellfun.parser import parse_ratfunc
from ellfun.weierstrass import (
    Example,
    SingularEquation,
    WeierstrassEq,
    discriminant_char2,
    discriminant_char3_reduced,
    invariants,
    j_char2,
    j_char3_reduced,
    named_example,
)
from strategies import curves, field_st

Tsym, Xsym = sympy.symbols("T X")


def rf(text, F):
    return parse_ratfunc(text, F)


@given(st.data())
def test_classical_identities(data):
    F = data.draw(field_st)
    integral = data.draw(st.booleans())
    W = data.draw(curves(F, 2 if integral else 1, integral=integral))
    inv = invariants(W)
    assert 4 * inv.b8 == inv.b2 * inv.b6 - inv.b4 * inv.b4
    assert 1728 * inv.delta == inv.c4**3 - inv.c6**2


def _sympy_coeff(x):
    n = sum(sympy.Rational(c.numerator, c.denominator) * Tsym**i for i, c in enumerate(x.num.coeffs))
    d = sum(sympy.Rational(c.numerator, c.denominator) * Tsym**i for i, c in enumerate(x.den.coeffs))
    return n / d


@settings(max_examples=25)
@given(curves(QQ, 1, integral=False))
def test_delta_against_cubic_discriminant(W):
    # 16 * delta is the discriminant of 4x^3 + b2 x^2 + 2 b4 x + b6
    a1, a2, a3, a4, a6 = (_sympy_coeff(a) for a in W.coeffs)
    b2 = a1**2 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3**2 + 4 * a6
    disc = sympy.discriminant(4 * Xsym**3 + b2 * Xsym**2 + 2 * b4 * Xsym + b6, Xsym)
    ours = _sympy_coeff(invariants(W).delta)
    assert sympy.cancel(sympy.together(disc - 16 * ours)) == 0


def test_short_form_invariants_match_general():
    F = GF(7)
    T = Poly.gen(F)
    for a4, a6 in [(T**2 + 3, T**3 + T), (Poly(F, []), T + 1), (2 * T, Poly(F, []))]:
        W = WeierstrassEq.from_coeffs(F, [0, 0, 0, a4, a6])
        inv_short = invariants(W)
        A4, A6 = RatFunc(a4), RatFunc(a6)
        assert inv_short.delta == -64 * A4**3 - 432 * A6**2
        assert inv_short.c4 == -48 * A4
        assert inv_short.c6 == -864 * A6
        # a non-integral twin goes through the general formulas
        u = RatFunc(Poly(F, [1]), T + 1)
        Wt = WeierstrassEq(F, *(a * u**w for a, w in zip(W.coeffs, (1, 2, 3, 4, 6))))
        assert invariants(Wt).delta == inv_short.delta * u**12


# -- named examples, hand-derived ------------------------------------------


def test_legendre():
    W = named_example(Example.LEGENDRE)
    inv = invariants(W)
    assert inv.delta == rf("16*T^2*(T-1)^2", QQ)
    assert inv.j == rf("2^8*(T^2-T+1)^3/(T^2*(T-1)^2)", QQ)


def test_j1728():
    W = named_example("j1728")
    assert invariants(W).delta == rf("1728*T^6", QQ)
    assert W.j() == RatFunc.constant(QQ, 1728)


@pytest.mark.parametrize(
    "which,tag,delta,j",
    [
        (Example.CHAR2_TWO_BAD, "GF(2)", "T", "1/T"),
        (Example.CHAR3_TWO_BAD, "GF(3)", "T^4", "T^2"),
        (Example.CHAR2_GOOD_A1, "GF(2)", "1", "1"),
        (Example.CHAR3_GOOD_EVERYWHERE_A1, "GF(3)", "1", "0"),
    ],
)
def test_small_characteristic_examples(which, tag, delta, j):
    W = named_example(which)
    assert W.field.tag == tag
    assert W.discriminant() == rf(delta, tag)
    assert W.j() == rf(j, tag)


def test_unknown_example():
    with pytest.raises(ValueError):
        named_example("nope")


def test_singular_rejected():
    W = WeierstrassEq.from_coeffs(QQ, [0, 0, 0, 0, 0])
    with pytest.raises(SingularEquation):
        W.validated()
    assert W.j() is None


# -- specialized formulas, exhaustive on degree <= 1 coefficients -------------


def _linear_polys(F):
    return [Poly(F, [a, b]) for a in F.elements() for b in F.elements()]


def test_char2_formula_exhaustive_degree1():
    F = GF(2)
    space = _linear_polys(F)
    n = 0
    for cs in itertools.product(space, repeat=5):
        W = WeierstrassEq.from_coeffs(F, list(cs))
        d = discriminant_char2(W)
        assert d == invariants(W).delta
        if not d.is_zero():
            assert j_char2(W) == invariants(W).j
        n += 1
    assert n == 4**5


def test_char3_formula_exhaustive_degree1():
    F = GF(3)
    space = _linear_polys(F)
    zero = Poly(F, [])
    for a2, a4, a6 in itertools.product(space, repeat=3):
        W = WeierstrassEq.from_coeffs(F, [zero, a2, zero, a4, a6])
        d = discriminant_char3_reduced(W)
        assert d == invariants(W).delta
        if not d.is_zero():
            assert j_char3_reduced(W) == invariants(W).j


def test_specialized_formulas_check_characteristic():
    W = named_example(Example.LEGENDRE)
    with pytest.raises(FieldError):
        discriminant_char2(W)
    with pytest.raises(FieldError):
        discriminant_char3_reduced(W)
    with pytest.raises(ValueError):
        discriminant_char3_reduced(WeierstrassEq.from_coeffs(GF(3), [1, 0, 0, 0, 1]))


@given(curves(GF(5), 2))
def test_j_constancy_shortcut(W):
    inv = invariants(W)
    assert inv.j_is_constant() == inv.j.is_constant()
