"""Changes of variables and the reduced forms in characteristic 2 and 3.

A transform (u, r, s, t) takes the old equation in (x, y) to the new one in
(x', y') via x = u^2 x' + r, y = u^3 y' + u^2 s x' + t.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.fields import FieldError
from .algebra.ratfunc import RatFunc
from .weierstrass import WeierstrassEq, invariants


_IDENTITY = {}


@dataclass(frozen=True)
class Transform:
    u: RatFunc
    r: RatFunc
    s: RatFunc
    t: RatFunc

    def __post_init__(self):
        if self.u.is_zero():
            raise ValueError("transform needs u != 0")

    @classmethod
    def make(cls, field, u=1, r=0, s=0, t=0):
        c = RatFunc.coerce
        return cls(c(field, u), c(field, r), c(field, s), c(field, t))

    @classmethod
    def identity(cls, field):
        tr = _IDENTITY.get(field)
        if tr is None:
            tr = _IDENTITY[field] = cls.make(field)
        return tr

    @property
    def field(self):
        return self.u.field

    def is_identity(self):
        if self is _IDENTITY.get(self.u.field):
            return True
        one = RatFunc.constant(self.field, 1)
        return self.u == one and self.r.is_zero() and self.s.is_zero() and self.t.is_zero()

    def __str__(self):
        return f"(u={self.u}, r={self.r}, s={self.s}, t={self.t})"


def apply(W, tr):
    """Coefficients of the new equation."""
    if tr.u.is_zero():
        raise ValueError("transform needs u != 0")
    a1, a2, a3, a4, a6 = W.coeffs
    u, r, s, t = tr.u, tr.r, tr.s, tr.t
    if r.is_zero() and s.is_zero() and t.is_zero():
        # pure scaling: a_i' = a_i / u^i
        inv = u.inverse()
        p2 = inv * inv
        p3 = p2 * inv
        return WeierstrassEq(W.field, a1 * inv, a2 * p2, a3 * p3, a4 * (p2 * p2), a6 * (p3 * p3))
    if u.is_constant() and u.constant_value() == W.field.one:
        ui = [1, 1, 1, 1, 1, 1, 1]
    else:
        inv = u.inverse()
        ui = [None, inv, inv**2, inv**3, inv**4, None, inv**6]
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1
    if ui[1] == 1:
        return WeierstrassEq(W.field, n1, n2, n3, n4, n6)
    return WeierstrassEq(W.field, n1 * ui[1], n2 * ui[2], n3 * ui[3], n4 * ui[4], n6 * ui[6])


def compose(t1, t2):
    """Transform equal to applying t1 first, then t2."""
    u1, r1, s1, t1_ = t1.u, t1.r, t1.s, t1.t
    u2, r2, s2, t2_ = t2.u, t2.r, t2.s, t2.t
    return Transform(
        u1 * u2,
        r1 + u1 * u1 * r2,
        s1 + u1 * s2,
        t1_ + u1 * u1 * s1 * r2 + u1**3 * t2_,
    )


def invert(tr):
    u, r, s, t = tr.u, tr.r, tr.s, tr.t
    ui = u.inverse()
    return Transform(ui, -r * ui**2, -s * ui, (r * s - t) * ui**3)


# -- reduced forms (characteristic 2 and 3) --------------------------------------


@dataclass(frozen=True)
class Char3JNonzero:
    """y^2 = x^3 + a2 x^2 + a6."""

    a2: RatFunc
    a6: RatFunc

    def equation(self, F):
        z = RatFunc.constant(F, 0)
        return WeierstrassEq(F, z, self.a2, z, z, self.a6)

    def delta(self):
        return -(self.a2**3) * self.a6

    def j(self):
        return -(self.a2**3) / self.a6


@dataclass(frozen=True)
class Char3JZero:
    """y^2 = x^3 + a4 x + a6."""

    a4: RatFunc
    a6: RatFunc

    def equation(self, F):
        z = RatFunc.constant(F, 0)
        return WeierstrassEq(F, z, z, z, self.a4, self.a6)

    def delta(self):
        return -(self.a4**3)

    def j(self):
        return RatFunc.constant(self.a4.field, 0)


@dataclass(frozen=True)
class Char2JNonzero:
    """y^2 + xy = x^3 + a2 x^2 + a6."""

    a2: RatFunc
    a6: RatFunc

    def equation(self, F):
        z = RatFunc.constant(F, 0)
        return WeierstrassEq(F, RatFunc.constant(F, 1), self.a2, z, z, self.a6)

    def delta(self):
        return self.a6

    def j(self):
        return self.a6.inverse()


@dataclass(frozen=True)
class Char2JZero:
    """y^2 + a3 y = x^3 + a4 x + a6."""

    a3: RatFunc
    a4: RatFunc
    a6: RatFunc

    def equation(self, F):
        z = RatFunc.constant(F, 0)
        return WeierstrassEq(F, z, z, self.a3, self.a4, self.a6)

    def delta(self):
        return self.a3**4

    def j(self):
        return RatFunc.constant(self.a3.field, 0)


REDUCED_FORMS = (Char3JNonzero, Char3JZero, Char2JNonzero, Char2JZero)


def as_reduced_form(W):
    """The ReducedForm W literally is, or None."""
    F = W.field
    a1, a2, a3, a4, a6 = W.coeffs
    one = RatFunc.constant(F, 1)
    p = F.characteristic
    if p == 3 and a1.is_zero() and a3.is_zero():
        if a4.is_zero() and not a2.is_zero():
            return Char3JNonzero(a2, a6)
        if a2.is_zero():
            return Char3JZero(a4, a6)
    if p == 2:
        if a1 == one and a3.is_zero() and a4.is_zero():
            return Char2JNonzero(a2, a6)
        if a1.is_zero() and a2.is_zero():
            return Char2JZero(a3, a4, a6)
    return None


def to_reduced_form(W):
    """Move W into the matching reduced form; returns (form, transform)."""
    F = W.field
    p = F.characteristic
    if p not in (2, 3):
        raise FieldError("reduced forms are defined in characteristic 2 and 3")
    if invariants(W).delta.is_zero():
        raise ValueError("singular equation")
    steps = []
    cur = W

    def step(**kw):
        nonlocal cur
        tr = Transform.make(F, **kw)
        if not tr.is_identity():
            cur = apply(cur, tr)
            steps.append(tr)

    if p == 3:
        # complete the square: -1/2 = 1 in characteristic 3
        if not (cur.a1.is_zero() and cur.a3.is_zero()):
            step(s=cur.a1, t=cur.a3)
        if not cur.a2.is_zero():
            if not cur.a4.is_zero():
                step(r=cur.a4 / cur.a2)
            form = Char3JNonzero(cur.a2, cur.a6)
        else:
            form = Char3JZero(cur.a4, cur.a6)
    else:
        if not cur.a1.is_zero():
            if cur.a1 != RatFunc.constant(F, 1):
                step(u=cur.a1)
            if not cur.a3.is_zero():
                step(r=cur.a3)
            if not cur.a4.is_zero():
                step(t=cur.a4)
            form = Char2JNonzero(cur.a2, cur.a6)
        else:
            if not cur.a2.is_zero():
                step(r=cur.a2)
            form = Char2JZero(cur.a3, cur.a4, cur.a6)
    total = Transform.identity(F)
    for tr in steps:
        total = compose(total, tr)
    return form, total


def stabilizer_check(form, tr):
    """Whether tr has the shape of the substitutions preserving this form."""
    one = RatFunc.constant(tr.field, 1)
    zero = lambda x: x.is_zero()  # noqa: E731
    if isinstance(form, Char3JNonzero):
        return zero(tr.r) and zero(tr.s) and zero(tr.t)
    if isinstance(form, Char3JZero):
        return zero(tr.s) and zero(tr.t)
    if isinstance(form, Char2JNonzero):
        return tr.u == one and zero(tr.r) and zero(tr.t)
    if isinstance(form, Char2JZero):
        return tr.r == tr.s * tr.s
    raise TypeError(f"not a reduced form: {form!r}")
