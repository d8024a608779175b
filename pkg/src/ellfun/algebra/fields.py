"""Exact coefficient fields: Q, F_p and F_{p^n}.

Raw elements are ``Fraction`` for Q, ``int`` in ``[0, p)`` for F_p and
:class:`ExtElem` for extension fields.  A field object knows how to
normalize, invert, enumerate and format its raw elements; polynomial code
never looks at the concrete element type.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache

import gmpy2

from . import dense


class FieldError(ValueError):
    pass


class Rationals:
    characteristic = 0
    order = None
    is_finite = False
    zero = Fraction(0)
    one = Fraction(1)

    def norm(self, x):
        return x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, v):
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        raise FieldError(f"{v!r} is not a rational number")

    def pow(self, x, e):
        return x**e

    def fmt(self, x):
        return str(x)

    def sort_key(self, x):
        return (x,)

    def random(self, rng, size=5):
        num = rng.randint(-size, size)
        den = rng.randint(1, size)
        return Fraction(num, den)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"

    tag = property(lambda self: "Q")


QQ = Rationals()


class _FiniteField:
    is_finite = True

    def pow(self, x, e):
        if e < 0:
            x, e = self.inv(x), -e
        result = self.one
        while e:
            if e & 1:
                result = self.norm(result * x)
            e >>= 1
            if e:
                x = self.norm(x * x)
        return result

    def pth_root(self, x):
        """Inverse Frobenius; finite fields are perfect."""
        return self.pow(x, self.order // self.characteristic)

    def frob(self, x):
        return self.pow(x, self.characteristic)

    def is_nth_power(self, x, n):
        if not x:
            return True
        g = gcd_int(n, self.order - 1)
        return self.pow(x, (self.order - 1) // g) == self.one

    def nonzero_elements(self):
        return [x for x in self.elements() if x]


def gcd_int(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class PrimeField(_FiniteField):
    prime_degree = 1
    zero = 0
    one = 1

    def __init__(self, p):
        p = int(p)
        if p < 2 or not gmpy2.is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p

    def norm(self, x):
        return x % self.p

    def inv(self, x):
        if not x % self.p:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def coerce(self, v):
        if isinstance(v, int):
            return v % self.p
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise FieldError(f"{v} is not defined in {self.tag}")
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        raise FieldError(f"{v!r} is not an element of {self.tag}")

    def elements(self):
        return range(self.p)

    def random(self, rng, size=None):
        return rng.randrange(self.p)

    def pth_root(self, x):
        return x

    def frob(self, x):
        return x

    def to_vector(self, x):
        return [x]

    def from_vector(self, v):
        return v[0] % self.p

    def fmt(self, x):
        return str(x)

    def sort_key(self, x):
        return (x,)

    @property
    def tag(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.tag


class ExtElem:
    """Element of an extension field: residue of a base polynomial."""

    __slots__ = ("field", "c", "_h")

    def __init__(self, field, c):
        self.field = field
        self.c = tuple(c)
        self._h = None

    def _other(self, o):
        F = self.field
        if isinstance(o, ExtElem):
            if o.field is F or o.field == F:
                return o.c
            if o.field == F.base:
                return (o,) if o else ()
            raise FieldError("mixed extension fields")
        if not isinstance(o, (int, Fraction)) or isinstance(o, bool):
            return None
        b = F.base.coerce(o)
        return (b,) if b else ()

    def __add__(self, o):
        F = self.field
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return ExtElem(F, dense.add(F.base, list(self.c), list(oc)))

    __radd__ = __add__

    def __sub__(self, o):
        F = self.field
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return ExtElem(F, dense.sub(F.base, list(self.c), list(oc)))

    def __rsub__(self, o):
        F = self.field
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return ExtElem(F, dense.sub(F.base, list(oc), list(self.c)))

    def __neg__(self):
        F = self.field
        return ExtElem(F, dense.neg(F.base, list(self.c)))

    def __mul__(self, o):
        F = self.field
        if isinstance(o, int) and not isinstance(o, bool):
            return ExtElem(F, dense.scale(F.base, list(self.c), F.base.from_int(o)))
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        prod = dense.mul(F.base, list(self.c), list(oc))
        return ExtElem(F, dense.rem(F.base, prod, F.modulus))

    __rmul__ = __mul__

    def __pow__(self, e):
        return self.field.pow(self, e)

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, o):
        if isinstance(o, ExtElem):
            return self.c == o.c and self.field == o.field
        if isinstance(o, int):
            return self.c == tuple(dense.strip([self.field.base.from_int(o)]))
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(self.c)
        return self._h

    def __repr__(self):
        return self.field.fmt(self)


class ExtensionField(_FiniteField):
    """F = base[a]/(modulus) with modulus monic irreducible over base."""

    def __init__(self, base, modulus, name="a", check=True):
        if not base.is_finite:
            raise FieldError("extension fields are built over finite fields")
        mod = dense.strip([base.coerce(c) if not isinstance(c, ExtElem) else c for c in modulus])
        if len(mod) < 2:
            raise FieldError("modulus must have positive degree")
        mod = dense.monic(base, mod)
        if check and not dense.is_irreducible(base, mod):
            raise FieldError("modulus is reducible")
        self.base = base
        self.modulus = mod
        self.degree = len(mod) - 1
        self.characteristic = base.characteristic
        self.order = base.order**self.degree
        self.prime_degree = base.prime_degree * self.degree
        self.name = name
        self.zero = ExtElem(self, ())
        self.one = ExtElem(self, (base.one,))
        self.gen = ExtElem(self, dense.rem(base, [base.zero, base.one], mod))

    def norm(self, x):
        return x

    def embed(self, b):
        return ExtElem(self, (b,) if b else ())

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def coerce(self, v):
        if isinstance(v, ExtElem):
            if v.field == self:
                return v
            if v.field == self.base:
                return self.embed(v)
            raise FieldError("element of a different field")
        return self.embed(self.base.coerce(v))

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = dense.xgcd(self.base, list(x.c), self.modulus)
        return ExtElem(self, s)

    def elements(self):
        base_elems = list(self.base.elements())
        for tup in itertools.product(base_elems, repeat=self.degree):
            yield ExtElem(self, dense.strip(list(tup)))

    def random(self, rng, size=None):
        return ExtElem(self, dense.strip([self.base.random(rng) for _ in range(self.degree)]))

    def to_vector(self, x):
        out = []
        c = list(x.c) + [self.base.zero] * (self.degree - len(x.c))
        for b in c:
            out.extend(self.base.to_vector(b))
        return out

    def from_vector(self, v):
        d = self.base.prime_degree
        coeffs = [self.base.from_vector(v[i * d:(i + 1) * d]) for i in range(self.degree)]
        return ExtElem(self, dense.strip(coeffs))

    def fmt(self, x):
        if not x.c:
            return "0"
        terms = []
        for i, c in enumerate(x.c):
            if not c:
                continue
            cs = self.base.fmt(c)
            if i == 0:
                terms.append(cs)
            else:
                mon = self.name if i == 1 else f"{self.name}^{i}"
                terms.append(mon if c == self.base.one else f"{cs}*{mon}")
        s = "+".join(terms)
        return s if len(terms) == 1 else f"({s})"

    def sort_key(self, x):
        out = []
        for c in list(x.c) + [self.base.zero] * (self.degree - len(x.c)):
            out.extend(self.base.sort_key(c))
        return tuple(out)

    @property
    def tag(self):
        if isinstance(self.base, PrimeField) and self.modulus == canonical_modulus(self.characteristic, self.degree):
            return f"GF({self.characteristic}^{self.degree})"
        return f"{self.base.tag}[{self.name}]/({_fmt_dense(self.base, self.modulus, self.name)})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("EXT", self.base, tuple(self.modulus)))

    def __repr__(self):
        return self.tag


def _fmt_dense(F, a, var):
    parts = []
    for i in range(len(a) - 1, -1, -1):
        if a[i]:
            mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            c = F.fmt(a[i])
            if not mon:
                parts.append(c)
            elif a[i] == F.one:
                parts.append(mon)
            else:
                parts.append(f"{c}*{mon}")
    return " + ".join(parts) or "0"


@lru_cache(maxsize=None)
def _prime_field(p):
    return PrimeField(p)


def GF(p, n=1):
    """The field with p**n elements, using a canonical modulus for n > 1."""
    if n == 1:
        return _prime_field(p)
    return _ext_field(p, n)


@lru_cache(maxsize=None)
def _ext_field(p, n):
    return ExtensionField(_prime_field(p), canonical_modulus(p, n), check=False)


@lru_cache(maxsize=None)
def canonical_modulus(p, n):
    """Lexicographically first monic irreducible of degree n over F_p."""
    F = _prime_field(p)
    for tail in itertools.product(range(p), repeat=n):
        cand = list(tail) + [1]
        if cand[0] and dense.is_irreducible(F, cand):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")


def first_irreducible(F, n):
    """First monic irreducible of degree n over a finite field F (enumeration order)."""
    if n == 1:
        return [F.zero, F.one]
    elems = list(F.elements())
    for tail in itertools.product(elems, repeat=n):
        cand = list(tail) + [F.one]
        if cand[0] and dense.is_irreducible(F, cand):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {n}")


@lru_cache(maxsize=None)
def extension_of_degree(F, n):
    """A degree-n extension of the finite field F (F itself for n = 1)."""
    if n == 1:
        return F
    return ExtensionField(F, first_irreducible(F, n), name="b" if isinstance(F, ExtensionField) else "a",
                          check=False)


_TAG = re.compile(r"^\s*(?:(Q|QQ)|GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\))\s*$")


def field_from_tag(tag):
    """Parse ``Q``, ``GF(p)`` or ``GF(p^n)``."""
    m = _TAG.match(tag)
    if not m:
        raise FieldError(f"unknown field tag {tag!r}")
    if m.group(1):
        return QQ
    p = int(m.group(2))
    n = int(m.group(3) or 1)
    return GF(p, n)
