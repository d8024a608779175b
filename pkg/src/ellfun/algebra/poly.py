"""Univariate polynomials and Laurent polynomials in T over an exact field."""

from __future__ import annotations

from fractions import Fraction

from . import dense
from .fields import ExtElem, FieldError, QQ

NEG_INF = float("-inf")
VAR = "T"


def _is_scalar(x):
    return isinstance(x, (int, Fraction, ExtElem)) and not isinstance(x, bool)


class Poly:
    """Dense polynomial in T; coefficients lowest degree first.

    Immutable.  ``degree`` of the zero polynomial is ``NEG_INF``.
    """

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs=()):
        c = dense.strip([field.coerce(x) for x in coeffs])
        self.field = field
        self.coeffs = tuple(c)
        self._hash = None

    @classmethod
    def _make(cls, field, lst):
        p = object.__new__(cls)
        p.field = field
        p.coeffs = tuple(lst)
        p._hash = None
        return p

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def gen(cls, field):
        return cls._make(field, (field.zero, field.one))

    @classmethod
    def monomial(cls, field, c, k):
        c = field.coerce(c)
        if not c:
            return cls._make(field, ())
        return cls._make(field, [field.zero] * k + [c])

    # -- basic accessors -------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field is not self.field and other.field != self.field:
                raise FieldError(f"mixed-field operands: {self.field} and {other.field}")
            return other
        if _is_scalar(other):
            return Poly(self.field, [other])
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._make(self.field, dense.add(self.field, list(self.coeffs), list(o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._make(self.field, dense.sub(self.field, list(self.coeffs), list(o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Poly._make(self.field, dense.neg(self.field, list(self.coeffs)))

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._make(self.field, dense.mul(self.field, list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial; use RatFunc")
        if e == 0:
            return Poly._make(self.field, [self.field.one])
        return Poly._make(self.field, dense.pow_(self.field, list(self.coeffs), e))

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        q, r = dense.divmod_(self.field, list(self.coeffs), list(o.coeffs))
        return Poly._make(self.field, q), Poly._make(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        o = self._coerce(other)
        return Poly._make(self.field, dense.exact_div(self.field, list(self.coeffs), list(o.coeffs)))

    def divides(self, other):
        if not self.coeffs:
            return not other
        return not (other % self)

    def scale(self, c):
        return Poly._make(self.field, dense.scale(self.field, list(self.coeffs), self.field.coerce(c)))

    def monic(self):
        if not self.coeffs:
            return self
        return Poly._make(self.field, dense.monic(self.field, list(self.coeffs)))

    def derivative(self):
        return Poly._make(self.field, dense.deriv(self.field, list(self.coeffs)))

    def __call__(self, x):
        if isinstance(x, Poly):
            return self.compose(x)
        return dense.evaluate(self.field, list(self.coeffs), self.field.coerce(x))

    def compose(self, other):
        o = self._coerce(other)
        return Poly._make(self.field, dense.compose(self.field, list(self.coeffs), list(o.coeffs)))

    def shift(self, k):
        """Multiply by T**k, k >= 0."""
        return Poly._make(self.field, dense.shift(self.field, list(self.coeffs), k))

    def reverse(self, d=None):
        """T**d * self(1/T) for d >= degree (default: the degree)."""
        if not self.coeffs:
            return self
        if d is None:
            d = len(self.coeffs) - 1
        if d < len(self.coeffs) - 1:
            raise ValueError("reversal length below degree")
        c = list(self.coeffs) + [self.field.zero] * (d + 1 - len(self.coeffs))
        return Poly._make(self.field, dense.strip(c[::-1]))

    def multiplicity(self, g):
        """Largest k with g**k | self (self nonzero)."""
        if not self.coeffs:
            raise ValueError("zero has infinite multiplicity")
        k, _ = dense.valuation_at(self.field, list(self.coeffs), list(g.coeffs))
        return k

    def split_multiplicity(self, g):
        k, rest = dense.valuation_at(self.field, list(self.coeffs), list(g.coeffs))
        return k, Poly._make(self.field, rest)

    def low_order(self):
        """Multiplicity of T."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero has infinite order")

    def map_coeffs(self, fn, field=None):
        field = field or self.field
        return Poly(field, [fn(c) for c in self.coeffs])

    # -- comparison & hashing --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs and self.field == other.field
        if _is_scalar(other):
            try:
                return self.coeffs == Poly(self.field, [other]).coeffs
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def sort_key(self):
        key = [len(self.coeffs)]
        for c in reversed(self.coeffs):
            key.extend(self.field.sort_key(c))
        return tuple(key)

    # -- printing ---------------------------------------------------------
    def __str__(self):
        return format_dense(self.field, self.coeffs, VAR)

    def __repr__(self):
        return f"Poly({self}, {self.field})"


def format_dense(F, coeffs, var):
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        neg = False
        if F is QQ or F == QQ:
            neg = c < 0
            c = -c if neg else c
        cs = F.fmt(c)
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mon:
            term = cs
        elif c == F.one:
            term = mon
        else:
            term = f"{cs}*{mon}"
        parts.append(("-" if neg else "+", term))
    sign, first = parts[0]
    out = ("-" if sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


class LaurentPoly:
    """unit_part * T**shift with unit_part(0) != 0 (or zero)."""

    __slots__ = ("unit_part", "shift")

    def __init__(self, poly, shift=0):
        if poly.is_zero():
            self.unit_part = poly
            self.shift = 0
            return
        k = poly.low_order()
        self.unit_part = Poly._make(poly.field, poly.coeffs[k:]) if k else poly
        self.shift = shift + k

    @property
    def field(self):
        return self.unit_part.field

    @classmethod
    def from_coeffs(cls, field, coeffs, low):
        """Build sum coeffs[i] * T**(low + i)."""
        return cls(Poly(field, coeffs), low)

    @classmethod
    def from_ratfunc(cls, x):
        den = x.den
        if den.is_zero() or any(den.coeffs[:-1]) or den.lc != den.field.one:
            raise ValueError("not a Laurent polynomial")
        return cls(x.num, -(len(den.coeffs) - 1))

    def is_zero(self):
        return self.unit_part.is_zero()

    def is_unit(self):
        return len(self.unit_part.coeffs) == 1

    def is_polynomial(self):
        return self.is_zero() or self.shift >= 0

    def terms(self):
        """Mapping exponent -> coefficient for the nonzero terms."""
        return {self.shift + i: c for i, c in enumerate(self.unit_part.coeffs) if c}

    @property
    def low(self):
        return self.shift

    @property
    def high(self):
        return self.shift + len(self.unit_part.coeffs) - 1

    def _align(self, other):
        lo = min(self.shift, other.shift)
        a = self.unit_part.shift(self.shift - lo)
        b = other.unit_part.shift(other.shift - lo)
        return a, b, lo

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, Poly):
            return LaurentPoly(other)
        if _is_scalar(other):
            return LaurentPoly(Poly(self.field, [other]))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        a, b, lo = self._align(o)
        return LaurentPoly(a + b, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(-self.unit_part, self.shift)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LaurentPoly(self.unit_part * o.unit_part, self.shift + o.shift)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            c = self.field.inv(self.unit_part.coeffs[0])
            return LaurentPoly(Poly(self.field, [self.field.pow(c, -e)]), self.shift * e)
        return LaurentPoly(self.unit_part**e, self.shift * e)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return self.is_zero() and o.is_zero()
        return self.shift == o.shift and self.unit_part == o.unit_part

    def __hash__(self):
        return hash((self.unit_part, self.shift))

    def to_ratfunc(self):
        from .ratfunc import RatFunc

        F = self.field
        if self.shift >= 0:
            return RatFunc(self.unit_part.shift(self.shift))
        return RatFunc(self.unit_part, Poly.monomial(F, F.one, -self.shift))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        F = self.field
        for e, c in sorted(self.terms().items(), reverse=True):
            mon = "" if e == 0 else (VAR if e == 1 else f"{VAR}^{e}")
            cs = F.fmt(c)
            parts.append(cs if not mon else (mon if c == F.one else f"{cs}*{mon}"))
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"
