"""Rational functions in T and the places of P^1."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import dense
from .fields import FieldError
from .poly import Poly, _is_scalar


class RatFunc:
    """num/den with gcd 1 and den monic; zero is 0/1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            raise TypeError("RatFunc numerator must be a Poly")
        F = num.field
        if den is None:
            self.num = num
            self.den = Poly._make(F, (F.one,))
            self._hash = None
            return
        if den.field != F:
            raise FieldError("mixed-field operands")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = num
            self.den = Poly._make(F, (F.one,))
            self._hash = None
            return
        n, d = list(num.coeffs), list(den.coeffs)
        if len(d) > 1:
            g = dense.gcd(F, n, d)
            if len(g) > 1:
                n = dense.exact_div(F, n, g)
                d = dense.exact_div(F, d, g)
        if d[-1] != F.one:
            c = F.inv(d[-1])
            n = dense.scale(F, n, c)
            d = dense.scale(F, d, c)
        self.num = Poly._make(F, n)
        self.den = Poly._make(F, d)
        self._hash = None

    @classmethod
    def _make(cls, num, den):
        x = object.__new__(cls)
        x.num = num
        x.den = den
        x._hash = None
        return x

    @classmethod
    def constant(cls, field, c):
        return cls(Poly(field, [c]))

    @classmethod
    def gen(cls, field):
        return cls(Poly.gen(field))

    @classmethod
    def coerce(cls, field, v):
        if isinstance(v, RatFunc):
            if v.field != field:
                raise FieldError("mixed-field operands")
            return v
        if isinstance(v, Poly):
            if v.field != field:
                raise FieldError("mixed-field operands")
            return cls(v)
        if hasattr(v, "to_ratfunc"):
            return v.to_ratfunc()
        return cls(Poly(field, [v]))

    @property
    def field(self):
        return self.num.field

    def _polyden(self):
        return len(self.den.coeffs) == 1

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return len(self.den.coeffs) == 1

    def is_constant(self):
        return len(self.num.coeffs) <= 1 and len(self.den.coeffs) == 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeffs[0] if self.num.coeffs else self.field.zero

    def as_poly(self):
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("mixed-field operands")
            return other
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldError("mixed-field operands")
            return RatFunc(other)
        if _is_scalar(other):
            return RatFunc(Poly(self.field, [other]))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._polyden() and o._polyden():
            return RatFunc._make(self.num + o.num, self.den)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._polyden() and o._polyden():
            return RatFunc._make(self.num * o.num, self.den)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        if o.is_constant():
            c = self.field.inv(o.num.coeffs[0])
            return RatFunc._make(self.num.scale(c), self.den)
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return RatFunc.constant(self.field, 1)
        # coprime stays coprime under powers; den**e stays monic
        return RatFunc._make(self.num**e, self.den**e)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RatFunc) else other
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __call__(self, x):
        return self.num(x) * self.field.inv(self.den(x))

    def __str__(self):
        if self.is_polynomial():
            c = self.field.inv(self.den.coeffs[0])
            if c == self.field.one:
                return str(self.num)
            return str(self.num.scale(c))
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


@dataclass(frozen=True)
class Place:
    """A closed point of P^1: Finite(g) for a monic generator g, or Infinity.

    Over Q a finite generator may be a squarefree cluster of irreducible
    factors (see ``coprime_refinement``); its residue degree then counts
    the geometric points it stands for.
    """

    generator: Optional[Poly] = None

    @classmethod
    def infinity(cls):
        return cls(None)

    @classmethod
    def finite(cls, g):
        if g.degree < 1:
            raise ValueError("place generator must be nonconstant")
        return cls(g.monic())

    @property
    def is_infinity(self):
        return self.generator is None

    @property
    def residue_degree(self):
        return 1 if self.generator is None else self.generator.degree

    def sort_key(self):
        if self.generator is None:
            return (float("inf"),)
        return (self.generator.degree,) + self.generator.sort_key()

    def __str__(self):
        return "inf" if self.generator is None else str(self.generator)

    def __repr__(self):
        return f"Place({self})"


INFINITY = Place(None)


def valuation(x, place):
    """Normalized valuation of a nonzero rational function at a place."""
    if isinstance(x, Poly):
        x = RatFunc(x)
    if x.is_zero():
        raise ValueError("the zero function has infinite valuation")
    if place.generator is None:
        return x.den.degree - x.num.degree
    g = place.generator
    vn = x.num.multiplicity(g) if x.num.degree >= g.degree else 0
    vd = x.den.multiplicity(g) if x.den.degree >= g.degree else 0
    return vn - vd


def flip(x):
    """Substitute T -> 1/T."""
    if isinstance(x, Poly):
        x = RatFunc(x)
    if x.is_zero():
        return x
    dn, dd = x.num.degree, x.den.degree
    n = x.num.reverse()
    d = x.den.reverse()
    if dn >= dd:
        d = d.shift(dn - dd)
    else:
        n = n.shift(dd - dn)
    return RatFunc(n, d)
