"""Weierstrass equations over k(T) and their invariants."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .algebra import dense
from .algebra.fields import GF, QQ, FieldError
from .algebra.poly import Poly
from .algebra.ratfunc import RatFunc

NAMES = ("a1", "a2", "a3", "a4", "a6")


class SingularEquation(ValueError):
    """Raised when a validated equation would have zero discriminant."""


@dataclass(frozen=True)
class WeierstrassEq:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with a_i in k(T).

    Construction does not check smoothness; use :meth:`validated` at API
    boundaries.
    """

    field: object
    a1: RatFunc
    a2: RatFunc
    a3: RatFunc
    a4: RatFunc
    a6: RatFunc

    @classmethod
    def from_coeffs(cls, field, coeffs):
        if len(coeffs) != 5:
            raise ValueError("expected five coefficients [a1, a2, a3, a4, a6]")
        return cls(field, *(RatFunc.coerce(field, c) for c in coeffs))

    @property
    def coeffs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def validated(self):
        if self.discriminant().is_zero():
            raise SingularEquation(f"singular equation (discriminant 0): {self}")
        return self

    def discriminant(self):
        return invariants(self).delta

    def j(self):
        return invariants(self).j

    def is_integral(self):
        return all(a.is_polynomial() for a in self.coeffs)

    def is_constant(self):
        return all(a.is_constant() for a in self.coeffs)

    def __str__(self):
        return format_equation(self)


def _paren(x):
    s = str(x)
    if x.is_polynomial() and len([c for c in x.num.coeffs if c]) == 1 and not s.startswith("-"):
        return s
    return f"({s})"


def format_equation(W):
    """Render in the textual grammar accepted by the parser."""
    lhs = ["y^2"]
    rhs = ["x^3"]
    for coeff, mon, side in (
        (W.a1, "x*y", lhs),
        (W.a3, "y", lhs),
        (W.a2, "x^2", rhs),
        (W.a4, "x", rhs),
        (W.a6, "", rhs),
    ):
        if coeff.is_zero():
            continue
        if not mon:
            side.append(_paren(coeff))
        elif coeff == RatFunc.constant(W.field, 1):
            side.append(mon)
        else:
            side.append(f"{_paren(coeff)}*{mon}")
    return " + ".join(lhs) + " = " + " + ".join(rhs)


@dataclass(frozen=True)
class InvariantSet:
    b2: RatFunc
    b4: RatFunc
    b6: RatFunc
    b8: RatFunc
    c4: RatFunc
    c6: RatFunc
    delta: RatFunc

    @cached_property
    def j(self) -> Optional[RatFunc]:
        return None if self.delta.is_zero() else self.c4**3 / self.delta

    def j_is_constant(self):
        """Whether j lies in k, without forming the quotient."""
        cached = self.__dict__.get("_j_constant")
        if cached is None:
            cached = self._j_is_constant()
            self.__dict__["_j_constant"] = cached
        return cached

    def _j_is_constant(self):
        if self.delta.is_zero():
            raise ValueError("singular equation")
        if self.c4.is_zero():
            return True
        if "j" in self.__dict__:
            return self.j.is_constant()
        # c4^3 / delta is constant iff the two are proportional
        if 3 * (self.c4.num.degree - self.c4.den.degree) != self.delta.num.degree - self.delta.den.degree:
            return False
        c, d = self.c4.num, self.delta.num
        if self.c4.den.degree == 0 and self.delta.den.degree == 0:
            # integral case: compare T-adic orders first, then the dense coefficients
            F = c.field
            cc, dc = c.coeffs, d.coeffs
            if 3 * _order(cc) != _order(dc):
                return False
            c3 = dense.mul(F, dense.mul(F, list(cc), list(cc)), list(cc))
            lc_c, lc_d = self.c4.den.lc, self.delta.den.lc
            return dense.scale(F, c3, F.norm(dc[-1] * lc_c * lc_c * lc_c)) == \
                dense.scale(F, list(dc), F.norm(c3[-1] * lc_d))
        num = c**3 * d.lc * self.delta.den
        return num == d * (c**3).lc * self.c4.den**3


def _order(coeffs):
    k = 0
    while not coeffs[k]:
        k += 1
    return k


def invariants(W):
    cached = W.__dict__.get("_invariants")
    if cached is not None:
        return cached
    if W.is_integral():
        inv = _dense_invariants(W)
    else:
        a1, a2, a3, a4, a6 = W.coeffs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
        delta = -(b2 * b2) * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        inv = InvariantSet(b2, b4, b6, b8, c4, c6, delta)
    object.__setattr__(W, "_invariants", inv)
    return inv


def _dense_invariants(W):
    """Same formulas on coefficient lists; W integral."""
    F = W.field
    a1, a2, a3, a4, a6 = (list(a.num.coeffs) for a in W.coeffs)
    k = F.from_int
    add, sub, mul, sc = dense.add, dense.sub, dense.mul, dense.scale
    if not a1 and not a2 and not a3:
        return _short_invariants(F, a4, a6)
    b2 = add(F, mul(F, a1, a1), sc(F, a2, k(4)))
    b4 = add(F, sc(F, a4, k(2)), mul(F, a1, a3))
    b6 = add(F, mul(F, a3, a3), sc(F, a6, k(4)))
    b8 = sub(
        F,
        add(F, add(F, mul(F, mul(F, a1, a1), a6), sc(F, mul(F, a2, a6), k(4))), mul(F, a2, mul(F, a3, a3))),
        add(F, mul(F, mul(F, a1, a3), a4), mul(F, a4, a4)),
    )
    b2b2 = mul(F, b2, b2)
    c4 = sub(F, b2b2, sc(F, b4, k(24)))
    c6 = add(F, sub(F, sc(F, mul(F, b2b2, b2), k(-1)), sc(F, b6, k(216))), sc(F, mul(F, b2, b4), k(36)))
    b4cubed = mul(F, mul(F, b4, b4), b4)
    delta = add(
        F,
        sub(F, sc(F, mul(F, b2b2, b8), k(-1)), sc(F, b4cubed, k(8))),
        sub(F, sc(F, mul(F, mul(F, b2, b4), b6), k(9)), sc(F, mul(F, b6, b6), k(27))),
    )

    def wrap(c):
        return RatFunc._make(Poly._make(F, c), Poly._make(F, (F.one,)))

    return InvariantSet(wrap(b2), wrap(b4), wrap(b6), wrap(b8), wrap(c4), wrap(c6), wrap(delta))


def _short_invariants(F, a4, a6):
    """y^2 = x^3 + a4 x + a6: b2 = 0, so most terms drop out."""
    k = F.from_int
    sc, mul = dense.scale, dense.mul
    a4sq = mul(F, a4, a4)
    b8 = sc(F, a4sq, k(-1))
    delta = dense.add(F, sc(F, mul(F, a4sq, a4), k(-64)), sc(F, mul(F, a6, a6), k(-432)))

    def wrap(c):
        return RatFunc._make(Poly._make(F, c), Poly._make(F, (F.one,)))

    return InvariantSet(
        wrap([]), wrap(sc(F, a4, k(2))), wrap(sc(F, a6, k(4))), wrap(b8),
        wrap(sc(F, a4, k(-48))), wrap(sc(F, a6, k(-864))), wrap(delta),
    )


def discriminant_char2(W):
    """a3^4 + a1^3 a3^3 + a1^4 (a1^2 a6 + a1 a3 a4 + a2 a3^2 + a4^2)."""
    if W.field.characteristic != 2:
        raise FieldError("characteristic-2 discriminant formula needs characteristic 2")
    a1, a2, a3, a4, a6 = W.coeffs
    return a3**4 + a1**3 * a3**3 + a1**4 * (a1**2 * a6 + a1 * a3 * a4 + a2 * a3**2 + a4**2)


def j_char2(W):
    d = discriminant_char2(W)
    return None if d.is_zero() else W.a1**12 / d


def discriminant_char3_reduced(W):
    """-a4^3 + a2^2 a4^2 - a2^3 a6 for y^2 = x^3 + a2 x^2 + a4 x + a6."""
    if W.field.characteristic != 3:
        raise FieldError("characteristic-3 discriminant formula needs characteristic 3")
    if not (W.a1.is_zero() and W.a3.is_zero()):
        raise ValueError("the characteristic-3 formula needs a1 = a3 = 0")
    a2, a4, a6 = W.a2, W.a4, W.a6
    return -(a4**3) + a2**2 * a4**2 - a2**3 * a6


def j_char3_reduced(W):
    d = discriminant_char3_reduced(W)
    return None if d.is_zero() else W.a2**6 / d


class Example(enum.Enum):
    LEGENDRE = "legendre"
    J1728_TWO_BAD = "j1728"
    CHAR2_TWO_BAD = "char2-two-bad"
    CHAR3_TWO_BAD = "char3-two-bad"
    CHAR2_GOOD_A1 = "char2-good-a1"
    CHAR3_GOOD_EVERYWHERE_A1 = "char3-good-a1"


def named_example(which):
    """The six worked examples, each over its natural field."""
    if isinstance(which, str):
        try:
            which = Example[which.upper()] if which.upper() in Example.__members__ else Example(which)
        except ValueError:
            raise ValueError(f"unknown example {which!r}") from None
    if which is Example.LEGENDRE:
        F = QQ
        T = Poly.gen(F)
        return WeierstrassEq.from_coeffs(F, [0, -(1 + T), 0, T, 0])
    if which is Example.J1728_TWO_BAD:
        F = QQ
        T = Poly.gen(F)
        return WeierstrassEq.from_coeffs(F, [0, 0, 0, -3 * T**2, 0])
    if which is Example.CHAR2_TWO_BAD:
        F = GF(2)
        return WeierstrassEq.from_coeffs(F, [1, 1, 0, 0, Poly.gen(F)])
    if which is Example.CHAR3_TWO_BAD:
        F = GF(3)
        T = Poly.gen(F)
        return WeierstrassEq.from_coeffs(F, [0, T, 0, 0, -T])
    if which is Example.CHAR2_GOOD_A1:
        F = GF(2)
        return WeierstrassEq.from_coeffs(F, [1, Poly.gen(F), 0, 0, 1])
    if which is Example.CHAR3_GOOD_EVERYWHERE_A1:
        F = GF(3)
        return WeierstrassEq.from_coeffs(F, [0, 0, 0, -1, Poly.gen(F)])
    raise ValueError(f"unknown example {which!r}")
