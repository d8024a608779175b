"""Integral and minimal models on the two affine charts of P^1, bad-reduction reports.

Chart AtZero has coordinate T and ring k[T]; chart AtInfinity has
coordinate S = 1/T and ring k[S].  Models on AtInfinity are stored as
rational functions in the same variable (printed as T) standing for S, so
the place at infinity is the place S = 0 of that chart.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional

from .algebra import dense
from .algebra.factor import factored, finite_places, squarefree_decomposition
from .algebra.fields import ExtElem, ExtensionField
from .algebra.poly import Poly
from .algebra.ratfunc import INFINITY, Place, RatFunc, flip
from .transform import Transform, apply, compose
from .weierstrass import InvariantSet, WeierstrassEq, invariants


class Chart(enum.Enum):
    AT_ZERO = "0"
    AT_INFINITY = "inf"

    @classmethod
    def parse(cls, s):
        s = str(s).strip().lower()
        if s in ("0", "zero", "atzero", "at_zero"):
            return cls.AT_ZERO
        if s in ("inf", "infinity", "atinfinity", "at_infinity"):
            return cls.AT_INFINITY
        raise ValueError(f"unknown chart {s!r}; expected 0 or inf")


def chart_model(W, chart):
    """W rewritten in the chart coordinate (T -> 1/S on AtInfinity)."""
    if chart is Chart.AT_ZERO:
        return W
    return WeierstrassEq(W.field, *(flip(a) for a in W.coeffs))


def place_on_chart(place, chart):
    """The generator, in the chart coordinate, of a place visible on that chart."""
    F_gen = place.generator
    if chart is Chart.AT_ZERO:
        if F_gen is None:
            raise ValueError("infinity is not on the chart at zero")
        return F_gen
    if F_gen is None:
        return None  # caller supplies S itself
    if F_gen.degree == 1 and not F_gen.coeffs[0]:
        raise ValueError("T = 0 is not on the chart at infinity")
    return F_gen.reverse().monic()


# -- integralization ---------------------------------------------------------


def _ceil_div(a, b):
    return -((-a) // b)


@lru_cache(maxsize=256)
def _inverse_power_scaling(F, e):
    """The transform u = 1/T^e."""
    if not e:
        return Transform.identity(F)
    return Transform.make(F, u=RatFunc(Poly(F, [1]), Poly.gen(F) ** e))


def integralize(W, chart=Chart.AT_ZERO):
    """Integral model on the chart via a scaling u = 1/d; returns (model, transform)."""
    F = W.field
    weights = (1, 2, 3, 4, 6)
    if chart is Chart.AT_INFINITY and W.is_integral():
        # a(1/S) = rev(a)/S^deg a, cleared by u = 1/S^e with e = max ceil(deg a_i / i)
        e = max((_ceil_div(a.num.degree, w) for a, w in zip(W.coeffs, weights) if not a.is_zero()), default=0)
        one = Poly._make(F, (F.one,))
        zero = F.zero

        def rev(x, n):
            # S^n x(1/S) for a polynomial x of degree <= n
            c = x.num.coeffs
            k = 0
            while not c[k]:
                k += 1
            return RatFunc._make(Poly._make(F, (zero,) * (n + 1 - len(c)) + c[:k - 1 if k else None:-1]), one)

        out = [rev(a, w * e) if not a.is_zero() else a for a, w in zip(W.coeffs, weights)]
        M = WeierstrassEq(F, *out)
        # invariants are weighted homogeneous, so they transform the same way
        inv = invariants(W)
        object.__setattr__(M, "_invariants", InvariantSet(*(
            rev(x, w * e) if not x.is_zero() else x
            for x, w in zip((inv.b2, inv.b4, inv.b6, inv.b8, inv.c4, inv.c6, inv.delta), (2, 4, 6, 8, 4, 6, 12)))))
        return M, _inverse_power_scaling(F, e)
    M = chart_model(W, chart)
    dens = [a.den for a in M.coeffs if a.den.degree > 0]
    if not dens:
        return M, Transform.identity(F)
    d = Poly(F, [1])
    weights = (1, 2, 3, 4, 6)
    for place in finite_places(dens):
        g = place.generator
        need = 0
        for a, w in zip(M.coeffs, weights):
            if a.is_zero() or a.den.degree < 1:
                continue
            v = a.den.multiplicity(g)
            need = max(need, _ceil_div(v, w))
        d = d * g**need
    tr = Transform.make(F, u=RatFunc(Poly(F, [1]), d))
    return apply(M, tr), tr


# -- local minimization ------------------------------------------------------


@dataclass(frozen=True)
class LocalData:
    place: Place
    v_delta_min: int
    minimizing_transform: Transform
    model: Optional[WeierstrassEq] = field(default=None, compare=False)


def _v(x, g):
    """Multiplicity of g in a polynomial-valued RatFunc; a large number for zero."""
    if x.is_zero():
        return 10**9
    return x.num.multiplicity(g)


class _Residue:
    """Residue field of k[T] at an irreducible g, with reduction and lifting."""

    def __init__(self, g):
        self.g = g
        F = g.field
        self.base = F
        if g.degree == 1:
            self.K = F
            self.root = F.norm(-g.coeffs[0])
        else:
            self.K = _residue_extension(F, g.coeffs)
            self.root = None

    def reduce(self, x):
        F = self.base
        if x.is_zero():
            return self.K.zero
        p = x.num
        if self.root is not None:
            return p(self.root)
        r = dense.rem(F, list(p.coeffs), list(self.g.coeffs))
        return ExtElem(self.K, tuple(r))

    def lift(self, a):
        F = self.base
        if self.root is not None:
            return RatFunc(Poly._make(F, dense.strip([a])))
        return RatFunc(Poly._make(F, list(a.c)))

    def sqrt(self, a):
        # characteristic 2: inverse Frobenius
        return self.K.pth_root(a)

    def cbrt(self, a):
        return self.K.pth_root(a)


@lru_cache(maxsize=4096)
def _residue_extension(F, coeffs):
    return ExtensionField(F, list(coeffs), check=False)


def _div(x, g, k):
    """x / g^k as a polynomial RatFunc (assumes divisibility)."""
    if x.is_zero():
        return x
    return RatFunc(x.num.exact_div(g**k))


def _kraus_laska_step(W, g):
    """Transform making W minimal at g (residue characteristic 0 or >= 5)."""
    F = W.field
    inv = invariants(W)
    vd = _v(inv.delta, g)
    vc4 = _v(inv.c4, g)
    if vc4 < 4 or vd < 12:
        return None
    vc6 = _v(inv.c6, g)
    e = min(vc4 // 4, vc6 // 6, vd // 12)
    a1, a3 = W.a1, W.a3
    s = -a1 / 2
    r = -inv.b2 / 12
    t = -(a3 + r * a1) / 2
    short = Transform.make(F, r=r, s=s, t=t)
    scale = Transform.make(F, u=RatFunc(g**e))
    return compose(short, scale)


def _tate_step(W, g):
    """One pass of Tate's procedure at g in characteristic 2 or 3.

    Returns the transform reaching a model non-minimal by the scaling u = g,
    composed with that scaling, or None when W is already minimal at g.
    """
    F = W.field
    p = F.characteristic
    R = _Residue(g)
    red = R.reduce
    K = R.K
    N = K.norm
    total = Transform.identity(F)
    cur = W

    def step(**kw):
        nonlocal cur, total
        tr = Transform.make(F, **kw)
        if not tr.is_identity():
            cur = apply(cur, tr)
            total = compose(total, tr)

    inv = invariants(cur)
    if _v(inv.delta, g) < 12:
        return None
    # move the singular point of the reduction to (0, 0)
    if p == 2:
        a1, a2, a3, a4, a6 = (red(a) for a in cur.coeffs)
        if a1:
            x0 = N(a3 * K.inv(a1))
            y0 = N((x0 * x0 + a4) * K.inv(a1))
        else:
            x0 = R.sqrt(a4)
            y0 = R.sqrt(N(x0 * x0 * x0 + a2 * x0 * x0 + a4 * x0 + a6))
        step(r=R.lift(x0), t=R.lift(y0))
    else:
        if not (cur.a1.is_zero() and cur.a3.is_zero()):
            step(s=cur.a1, t=cur.a3)
        a2, a4, a6 = red(cur.a2), red(cur.a4), red(cur.a6)
        if a2:
            x0 = N(a4 * K.inv(a2))
        else:
            x0 = R.cbrt(N(-a6))
        step(r=R.lift(x0))
    a1, a2, a3, a4, a6 = cur.coeffs
    assert _v(a3, g) >= 1 and _v(a4, g) >= 1 and _v(a6, g) >= 1
    inv = invariants(cur)
    if _v(inv.b2, g) < 1:
        return None
    if _v(a6, g) < 2:
        return None
    if _v(inv.b8, g) < 3:
        return None
    if _v(inv.b6, g) < 3:
        return None
    # now pi | a1, a2 and pi^2 | a3, a4 and pi^3 | a6 after (1, 0, s, t)
    if p == 2:
        s = R.lift(R.sqrt(red(a2)))
        t = RatFunc(g) * R.lift(R.sqrt(red(_div(a6, g, 2))))
    else:
        s, t = a1, a3
    step(s=s, t=t)
    a1, a2, a3, a4, a6 = cur.coeffs
    b = red(_div(a2, g, 1))
    c = red(_div(a4, g, 2))
    d = red(_div(a6, g, 3))
    # roots of X^3 + b X^2 + c X + d: triple root needed to go on
    if p == 2:
        alpha = b
        if not (c == N(alpha * alpha) and d == N(alpha * alpha * alpha)):
            return None
    else:
        if b or c:
            return None
        alpha = N(-R.cbrt(d))
    step(r=RatFunc(g) * R.lift(alpha))
    a1, a2, a3, a4, a6 = cur.coeffs
    a32 = red(_div(a3, g, 2))
    a64 = red(_div(a6, g, 4))
    # Y^2 + a32 Y - a64: a double root is needed to go on
    if p == 2:
        if a32:
            return None
        root = R.sqrt(a64)
    else:
        if N(a32 * a32 + a64):
            return None
        root = a32
    step(t=RatFunc(g) ** 2 * R.lift(root))
    a1, a2, a3, a4, a6 = cur.coeffs
    if _v(a4, g) < 4:
        return None
    if _v(a6, g) < 6:
        return None
    step(u=RatFunc(g))
    return total


def _local_step(W, g):
    p = W.field.characteristic
    if p in (2, 3):
        return _tate_step(W, g)
    return _kraus_laska_step(W, g)


def local_minimal(W, place, chart=Chart.AT_ZERO):
    """Minimal discriminant exponent at a place, with the transform realizing it.

    ``W`` must be integral in the chart coordinate.  ``place`` is a Place of
    P^1 (use INFINITY with the chart at infinity); its generator is moved to
    the chart coordinate automatically.
    """
    F = W.field
    if not W.is_integral():
        raise ValueError("local_minimal needs an integral model on the chart")
    if invariants(W).delta.is_zero():
        raise ValueError("singular equation")
    if chart is Chart.AT_INFINITY and place.is_infinity:
        g = Poly.gen(F)
    else:
        g = place_on_chart(place, chart)
    total = Transform.identity(F)
    cur = W
    while True:
        tr = _local_step(cur, g)
        if tr is None:
            break
        cur = apply(cur, tr)
        total = compose(total, tr)
    v = _v(invariants(cur).delta, g)
    return LocalData(place, v, total, cur)


def _candidate_places(W):
    """Places where W may fail to be minimal, in the chart coordinate."""
    inv = invariants(W)
    d = inv.delta.num
    if d.degree < 12:
        return []
    F = W.field
    c = list(d.coeffs)
    if F.characteristic not in (2, 3) and not inv.c4.is_zero():
        # away from 2 and 3 a non-minimal place also has g^4 | c4
        c4 = list(inv.c4.num.coeffs)
        if len(c4) < 5 or len(dense.gcd(F, c, c4)) < 5:
            return []
    # g^12 | delta forces g^11 | gcd(delta, delta')
    if len(dense.gcd(W.field, c, dense.deriv(W.field, c))) - 1 < 11:
        return []
    if W.field.characteristic in (2, 3) or W.field.is_finite:
        polys = [inv.delta.num]
    else:
        # clusters on which delta, c4, c6 all have a single valuation
        polys = [x.num for x in (inv.delta, inv.c4, inv.c6) if not x.is_zero()]
    out = []
    for place in finite_places([p for p in polys if p.degree > 0]):
        if inv.delta.num.multiplicity(place.generator) >= 12:
            out.append(place)
    return out


def global_minimal(W, chart=Chart.AT_ZERO):
    """Model on the chart that is integral and minimal at every finite place of it.

    Returns (model, transform) where the transform maps the chart model of
    W (see ``chart_model``) to the result.
    """
    if invariants(W).delta.is_zero():
        raise ValueError("singular equation")
    cur, total = integralize(W, chart)
    for place in _candidate_places(cur):
        loc = local_minimal(cur, place)
        if not loc.minimizing_transform.is_identity():
            cur = loc.model
            total = compose(total, loc.minimizing_transform)
    return cur, total


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class BadPlace:
    place: Place
    v_delta_min: int
    residue_degree: int


@dataclass(frozen=True)
class ReductionReport:
    """Bad reduction over P^1.

    The geometric count is the degree of the radical of the minimal
    discriminant on the affine chart plus one if infinity is bad; the
    explicit list of bad places is factored on first access.
    """

    geometric_bad_count: int
    v_delta_infinity: int
    minimal_model_at_zero: WeierstrassEq
    minimal_model_at_infinity: WeierstrassEq
    transform_at_zero: Optional[Transform] = field(default=None, compare=False)
    transform_at_infinity: Optional[Transform] = field(default=None, compare=False)

    @cached_property
    def bad_places(self):
        d0 = self.delta_min_at_zero.num
        bad = []
        if d0.degree > 0:
            for place, e in factored(d0):
                bad.append(BadPlace(place, e, place.residue_degree))
        bad.sort(key=lambda b: b.place.sort_key())
        if self.v_delta_infinity > 0:
            bad.append(BadPlace(INFINITY, self.v_delta_infinity, 1))
        return tuple(bad)

    @property
    def infinity_bad(self):
        return self.v_delta_infinity > 0

    @property
    def delta_min_at_zero(self):
        return invariants(self.minimal_model_at_zero).delta

    def bad_set(self):
        return [b.place for b in self.bad_places]

    def good_everywhere(self):
        return self.geometric_bad_count == 0


def _radical_degree(f):
    if f.degree <= 0:
        return 0
    F = f.field
    c = list(f.coeffs)
    d = dense.deriv(F, c)
    if d and len(dense.gcd(F, c, d)) == 1:
        return f.degree
    return sum(g.degree for g, _ in squarefree_decomposition(f))


def reduction_report(W):
    """Bad places over P^1 with minimal discriminant exponents and the geometric count."""
    W = W.validated()
    m0, t0 = global_minimal(W, Chart.AT_ZERO)
    minf, tinf = global_minimal(W, Chart.AT_INFINITY)
    d0 = invariants(m0).delta.num
    finite = _radical_degree(d0)
    dinf = invariants(minf).delta.num
    vinf = dinf.multiplicity(Poly.gen(W.field))
    count = finite + (1 if vinf > 0 else 0)
    return ReductionReport(count, vinf, m0, minf, t0, tinf)


def chart_consistency(W):
    """Compare minimal exponents at finite places other than T = 0 on both charts.

    Returns a list of (place, v_on_zero_chart, v_on_infinity_chart) for the
    places where they differ; empty means consistent.
    """
    m0, _ = global_minimal(W, Chart.AT_ZERO)
    minf, _ = global_minimal(W, Chart.AT_INFINITY)
    d0 = invariants(m0).delta.num
    dinf = invariants(minf).delta.num
    T = Poly.gen(W.field)
    out = []
    seen = set()
    for poly in (d0, dinf.reverse() if dinf.degree > 0 else dinf):
        if poly.degree < 1:
            continue
        for place in finite_places([poly]):
            g = place.generator
            if g == T or g in seen:
                continue
            seen.add(g)
            gi = place_on_chart(place, Chart.AT_INFINITY)
            v0 = d0.multiplicity(g)
            vi = dinf.multiplicity(gi)
            if v0 != vi:
                out.append((place, v0, vi))
    return out
