"""Constant j-invariant and constant curves.

Away from characteristics 2 and 3 a curve with constant j is decided by its
twist class.  In characteristics 2 and 3 the decision compares the minimal
reduced models on the two charts of P^1 and solves the additive equations
relating them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.factor import embed_ratfunc, finite_places, poly_roots
from .algebra.fields import extension_of_degree
from .algebra.poly import Poly
from .algebra.ratfunc import RatFunc, flip
from .reduction import reduction_report
from .transform import (
    Char2JNonzero,
    Char3JNonzero,
    Char3JZero,
    Transform,
    apply,
    compose,
    to_reduced_form,
)
from .weierstrass import WeierstrassEq, invariants

DEFAULT_EXTENSION_BOUND = 12


class HypothesisError(ValueError):
    """The characteristic 2/3 procedure was called on a curve with bad reduction."""


# -- results -------------------------------------------------------------------


@dataclass(frozen=True)
class JNonConstant:
    def __str__(self):
        return "j-invariant is not constant"


@dataclass(frozen=True)
class BadReduction:
    places: tuple

    def __str__(self):
        return "bad reduction at " + ", ".join(self.places)


@dataclass(frozen=True)
class TwistClassObstruction:
    m: int
    exponents: tuple  # ((place, exponent), ...) with exponent not divisible by m

    def __str__(self):
        parts = ", ".join(f"{p}^{e}" for p, e in self.exponents)
        return f"twist parameter is not a constant times an {self.m}-th power ({parts})"


@dataclass(frozen=True)
class SubstitutionUnsolvable:
    constraint: str

    def __str__(self):
        return f"no solution of {self.constraint}"


@dataclass(frozen=True)
class Constant:
    model: WeierstrassEq
    witness: Transform

    kind = "Constant"

    @property
    def reason(self):
        return None


@dataclass(frozen=True)
class NonConstant:
    reason: object

    kind = "NonConstant"


@dataclass(frozen=True)
class Undecided:
    extension_bound: int
    detail: str = ""

    kind = "Undecided"

    @property
    def reason(self):
        return f"extension bound {self.extension_bound} reached" + (f": {self.detail}" if self.detail else "")


def reason_text(result):
    r = result.reason
    return None if r is None else str(r)


# -- j ---------------------------------------------------------------------------


def j_constant(W):
    return invariants(W).j_is_constant()


def _embed_eq(W, K):
    if W.field == K:
        return W
    return WeierstrassEq(K, *(embed_ratfunc(a, K) for a in W.coeffs))


def _embed_tr(tr, K):
    if tr.field == K:
        return tr
    return Transform(*(embed_ratfunc(x, K) for x in (tr.u, tr.r, tr.s, tr.t)))


def _checked_constant(W, witness, model=None):
    """Constant verdict after verifying that the witness really gives constant coefficients."""
    K = witness.field
    got = apply(_embed_eq(W, K), witness)
    if model is not None and got != model:
        raise AssertionError("witness does not reproduce the model")
    if not got.is_constant():
        raise AssertionError(f"constancy witness produced non-constant coefficients: {got}")
    return Constant(got, witness)


# -- away from characteristic 2, 3 --------------------------------------------------


def short_form_transform(W):
    """(1, -b2/12, -a1/2, -(a3 + r a1)/2), giving y^2 = x^3 - c4/48 x - c6/864."""
    F = W.field
    if F.characteristic in (2, 3):
        raise ValueError("short form needs characteristic other than 2, 3")
    inv = invariants(W)
    r = -inv.b2 / 12
    s = -W.a1 / 2
    t = -(W.a3 + r * W.a1) / 2
    return Transform.make(F, r=r, s=s, t=t)


def reference_model(F, j):
    """A fixed constant model with invariant j (j in k)."""
    j = F.coerce(j)
    if not j:
        return WeierstrassEq.from_coeffs(F, [0, 0, 0, 0, 1])
    if j == F.coerce(1728):
        return WeierstrassEq.from_coeffs(F, [0, 0, 0, 1, 0])
    a = F.norm(F.coerce(27) * j * F.inv(F.norm(F.coerce(4) * (F.coerce(1728) - j))))
    return WeierstrassEq.from_coeffs(F, [0, 0, 0, a, a])


def _exponents(x):
    out = []
    polys = [p for p in (x.num, x.den) if p.degree > 0]
    for place in finite_places(polys):
        g = place.generator
        e = (x.num.multiplicity(g) if x.num.degree > 0 else 0) - (x.den.multiplicity(g) if x.den.degree > 0 else 0)
        out.append((place, e))
    return out


def twist_class_constancy(W):
    """Decide constancy of a curve with constant j in characteristic 0 or >= 5.

    In short form y^2 = x^3 + a x + b the twist parameter is b/a (m = 2),
    a (j = 1728, m = 4) or b (j = 0, m = 6).  The curve is constant exactly
    when every place exponent of the parameter is divisible by m; the witness
    scales by the m-th root of the non-constant part.
    """
    F = W.field
    if F.characteristic in (2, 3):
        raise ValueError("twist classes here need characteristic other than 2, 3")
    W = W.validated()
    if not j_constant(W):
        return NonConstant(JNonConstant())
    ts = short_form_transform(W)
    S = apply(W, ts)
    a, b = S.a4, S.a6
    if a.is_zero():
        m, param = 6, b
    elif b.is_zero():
        m, param = 4, a
    else:
        m, param = 2, b / a
    exps = _exponents(param)
    bad = tuple((str(p), e) for p, e in exps if e % m)
    if bad:
        return NonConstant(TwistClassObstruction(m, bad))
    num = Poly(F, [1])
    den = Poly(F, [1])
    for place, e in exps:
        k = e // m
        if k > 0:
            num = num * place.generator**k
        elif k < 0:
            den = den * place.generator ** (-k)
    witness = compose(ts, Transform.make(F, u=RatFunc(num, den)))
    return _checked_constant(W, witness)


# -- additive equations over F_p -----------------------------------------------------


def _laurent_dict(x):
    """{degree: coefficient} of a rational function in k[T, 1/T]."""
    if x.is_zero():
        return {}
    den = x.den
    k = den.degree
    if any(den.coeffs[:-1]):
        raise ValueError(f"{x} is not a Laurent polynomial")
    return {i - k: c for i, c in enumerate(x.num.coeffs) if c}


def _from_dict(K, d, positive_only=False):
    """RatFunc from {degree: coeff}; with positive_only keep degrees > 0."""
    items = {k: v for k, v in d.items() if v and (k > 0 or not positive_only)}
    if not items:
        return RatFunc(Poly(K, []))
    lo = min(0, min(items))
    hi = max(items)
    coeffs = [K.zero] * (hi - lo + 1)
    for k, v in items.items():
        coeffs[k - lo] = v
    num = Poly(K, coeffs)
    return RatFunc(num, Poly.monomial(K, K.one, -lo))


def _basis(K):
    n = K.prime_degree
    out = []
    for i in range(n):
        v = [0] * n
        v[i] = 1
        out.append(K.from_vector(v))
    return out


def solve_additive(K, slots, rhs, skip_degrees=()):
    """Solve sum_k f_k(x_k) = rhs for x_k in K, each f_k additive (F_p-linear).

    ``slots`` are callables mapping an element of K to a {degree: coeff}
    dict; ``rhs`` is such a dict.  Rows for degrees in ``skip_degrees`` are
    ignored.  Returns the list of x_k, or None if there is no solution.
    """
    p = K.characteristic
    n = K.prime_degree
    basis = _basis(K)
    columns = []
    degrees = set(d for d in rhs)
    images = []
    for f in slots:
        for b in basis:
            img = f(b)
            images.append(img)
            degrees.update(img)
    degrees = sorted(d for d in degrees if d not in skip_degrees)
    row_of = {d: i for i, d in enumerate(degrees)}
    nrows = len(degrees) * n

    def vec(dct):
        v = [0] * nrows
        for d, c in dct.items():
            if d in row_of and c:
                base = row_of[d] * n
                for i, x in enumerate(K.to_vector(c)):
                    v[base + i] = int(x) % p
        return v

    for img in images:
        columns.append(vec(img))
    target = vec(rhs)
    ncols = len(columns)
    # augmented matrix, row-major
    M = [[columns[c][r] for c in range(ncols)] + [target[r]] for r in range(nrows)]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if M[r][col]), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = pow(M[row][col], p - 2, p)
        M[row] = [(x * inv) % p for x in M[row]]
        for r in range(nrows):
            if r != row and M[r][col]:
                f = M[r][col]
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if M[r][ncols]:
            return None
    sol = [0] * ncols
    for r, col in enumerate(pivots):
        sol[col] = M[r][ncols]
    out = []
    for k in range(len(slots)):
        out.append(K.from_vector(sol[k * n:(k + 1) * n]))
    return out


def solve_frobenius_laurent(K, terms, rhs, modulo_constants=True):
    """Laurent x with sum_i lam_i x^(p^i) = rhs, rhs a {degree: coeff} dict.

    ``terms`` is a list of (i, lam) with lam a constant of K.  The support
    of x is bounded by the leading Frobenius power: |deg| <= max|deg rhs| / p^imax.
    With ``modulo_constants`` the constant coefficient of both sides is
    ignored (x is then found without a constant term).  Returns a
    {degree: coeff} dict or None.
    """
    p = K.characteristic
    terms = [(i, K.coerce(lam)) for i, lam in terms if K.coerce(lam)]
    imax = max(i for i, _ in terms)
    q = p**imax
    hi = max([d for d in rhs if d > 0], default=0) // q
    lo = -(max([-d for d in rhs if d < 0], default=0) // q)
    degs = [j for j in range(lo, hi + 1) if j != 0 or not modulo_constants]

    def slot(j):
        def f(x):
            out = {}
            for i, lam in terms:
                d = j * p**i
                out[d] = K.norm(out.get(d, K.zero) + lam * K.pow(x, p**i))
            return out

        return f

    skip = (0,) if modulo_constants else ()
    sol = solve_additive(K, [slot(j) for j in degs], rhs, skip)
    if sol is None:
        return None
    return {j: c for j, c in zip(degs, sol) if c}


def frobenius_image(K, terms, x):
    """sum_i lam_i x^(p^i) for a {degree: coeff} dict x."""
    p = K.characteristic
    out = {}
    for j, c in x.items():
        for i, lam in terms:
            d = j * p**i
            out[d] = K.norm(out.get(d, K.zero) + K.coerce(lam) * K.pow(c, p**i))
    return {d: c for d, c in out.items() if c}


# -- characteristic 2 and 3 ----------------------------------------------------------


def _const(x):
    if not x.is_constant():
        raise AssertionError(f"expected a constant, got {x}")
    return x.constant_value()


def _add_dicts(K, *ds):
    out = {}
    for d in ds:
        for k, v in d.items():
            out[k] = K.norm(out.get(k, K.zero) + v)
    return {k: v for k, v in out.items() if v}


def _scale_dict(K, c, d):
    return {k: K.norm(c * v) for k, v in d.items() if K.norm(c * v)}


def _root_candidates(poly, bound):
    """Yield (K, roots, splits) for extensions K of degree 1..bound holding roots of poly."""
    F = poly.field
    deg = poly.degree
    for e in range(1, bound + 1):
        K = extension_of_degree(F, e)
        PK = Poly(K, [K.coerce(c) for c in poly.coeffs])
        roots = poly_roots(PK)
        if roots:
            yield K, roots, len(roots) == _distinct_root_count(PK, deg)


def _distinct_root_count(P, deg):
    from .algebra.factor import radical

    return radical(P).degree


@dataclass
class _Charts:
    W: WeierstrassEq  # input
    form0: object
    to0: Transform  # input -> reduced minimal model on the chart at zero
    forminf: object  # reduced minimal model on the chart at infinity, rewritten in T


def _charts(W, report):
    m0 = report.minimal_model_at_zero
    form0, tr0 = to_reduced_form(m0)
    to0 = compose(report.transform_at_zero, tr0)
    minf = report.minimal_model_at_infinity
    forminf, _ = to_reduced_form(minf)
    back = WeierstrassEq(W.field, *(flip(a) for a in forminf.equation(W.field).coeffs))
    formback, _ = to_reduced_form(back)
    return _Charts(W, form0, to0, formback)


def constancy_char23(W, extension_degree_bound=DEFAULT_EXTENSION_BOUND, affine_only=False, shortcut=True,
                     report=None):
    """Decide constancy in characteristic 2 or 3 for a curve with constant j.

    Needs good reduction everywhere over P^1.  The minimal reduced models W
    on the chart at zero and W' on the chart at infinity are related by a
    substitution of the form allowed for their reduced form; its additive
    constraint equations are solved, and the polynomial parts of the
    solutions move W to a model with constant coefficients.

    ``affine_only`` drops the comparison with W' (only the chart at zero is
    used, W' replaced by an unknown constant model); then bad reduction at
    infinity is allowed.  ``shortcut`` returns characteristic-3, j != 0
    curves directly from their reduced form.
    """
    F = W.field
    p = F.characteristic
    if p not in (2, 3):
        raise ValueError("constancy_char23 needs characteristic 2 or 3")
    W = W.validated()
    if not j_constant(W):
        raise ValueError("constancy_char23 needs constant j; use is_constant")
    if report is None:
        report = reduction_report(W)
    if affine_only:
        finite_bad = [b for b in report.bad_places if not b.place.is_infinity]
        if finite_bad:
            return NonConstant(BadReduction(tuple(str(b.place) for b in finite_bad)))
    elif report.geometric_bad_count:
        raise HypothesisError(
            "the characteristic 2/3 procedure requires good reduction everywhere over P^1; "
            "reduction_report finds bad places " + ", ".join(str(b.place) for b in report.bad_places)
        )
    ch = _charts(W, report)
    f0 = ch.form0
    if isinstance(f0, Char3JNonzero):
        return _char3_j_nonzero(ch, extension_degree_bound, affine_only, shortcut)
    if isinstance(f0, Char3JZero):
        return _char3_j_zero(ch, extension_degree_bound, affine_only)
    if isinstance(f0, Char2JNonzero):
        return _char2_j_nonzero(ch, affine_only)
    return _char2_j_zero(ch, extension_degree_bound, affine_only)


def _char3_j_nonzero(ch, bound, affine_only, shortcut):
    F = ch.W.field
    f0 = ch.form0
    if shortcut or affine_only:
        if f0.a2.is_constant() and f0.a6.is_constant():
            return _checked_constant(ch.W, ch.to0)
        return NonConstant(SubstitutionUnsolvable("a2, a6 in k for y^2 = x^3 + a2 x^2 + a6"))
    # generic: (u, 0, 0, 0) with u^2 = a2 / a2' and u^6 a6' = a6
    c = _const(f0.a2 / ch.forminf.a2)
    X = Poly(F, [-c, 0, 1])
    for K, roots, splits in _root_candidates(X, bound):
        a6 = embed_ratfunc(f0.a6, K)
        a6p = embed_ratfunc(ch.forminf.a6, K)
        for u in roots:
            if a6 == a6p * K.pow(u, 6):
                return _checked_constant(ch.W, ch.to0)
        if splits:
            return NonConstant(SubstitutionUnsolvable("u^6 a6' = a6"))
    return Undecided(bound, "u^2 = a2/a2'")


def _char3_j_zero(ch, bound, affine_only):
    F = ch.W.field
    f0 = ch.form0
    a4 = _const(f0.a4)
    terms = [(1, F.one), (0, a4)]  # r^3 + a4 r
    a6 = _laurent_dict(f0.a6)
    if affine_only:
        r = solve_frobenius_laurent(F, terms, _scale_dict(F, F.coerce(-1), a6))
        if r is None:
            return NonConstant(SubstitutionUnsolvable("r^3 + a4 r = c - a6"))
        return _finish(ch, Transform.make(F, r=_from_dict(F, r, positive_only=True)))
    c = F.norm(a4 * F.inv(_const(ch.forminf.a4)))
    X = Poly(F, [F.norm(-c), 0, 0, 0, 1])
    for K, roots, splits in _root_candidates(X, bound):
        a6K = {k: K.coerce(v) for k, v in a6.items()}
        a6p = _laurent_dict(embed_ratfunc(ch.forminf.a6, K))
        for u in roots:
            rhs = _add_dicts(K, _scale_dict(K, K.pow(u, 6), a6p), _scale_dict(K, K.coerce(-1), a6K))
            r = solve_frobenius_laurent(K, terms, rhs)
            if r is not None:
                rplus = {k: v for k, v in r.items() if k > 0}
                return _finish(ch, Transform.make(K, r=_from_dict(K, rplus)))
        if splits:
            return NonConstant(SubstitutionUnsolvable("r^3 + a4 r = u^6 a6' - a6"))
    return Undecided(bound, "u^4 = a4/a4'")


def _char2_j_nonzero(ch, affine_only):
    F = ch.W.field
    f0 = ch.form0
    terms = [(1, F.one), (0, F.one)]  # s^2 + s
    rhs = _laurent_dict(f0.a2)
    if not affine_only:
        rhs = _add_dicts(F, rhs, _laurent_dict(ch.forminf.a2))
    s = solve_frobenius_laurent(F, terms, rhs)
    if s is None:
        return NonConstant(SubstitutionUnsolvable("s^2 + s = a2 + a2'" if not affine_only else "s^2 + s = a2 + c"))
    return _finish(ch, Transform.make(F, s=_from_dict(F, s, positive_only=True)))


def _char2_j_zero(ch, bound, affine_only):
    F = ch.W.field
    f0 = ch.form0
    a3 = _const(f0.a3)
    s_terms = [(2, F.one), (0, a3)]  # s^4 + a3 s
    t_terms = [(1, F.one), (0, a3)]  # t^2 + a3 t
    a4 = _laurent_dict(f0.a4)
    if affine_only:
        return _char2_j_zero_affine(ch, bound, a3, s_terms, t_terms)
    c = F.norm(a3 * F.inv(_const(ch.forminf.a3)))
    X = Poly(F, [F.norm(-c), 0, 0, 1])
    for K, roots, splits in _root_candidates(X, bound):
        all_split = splits
        a4K = {k: K.coerce(v) for k, v in a4.items()}
        a4p = _laurent_dict(embed_ratfunc(ch.forminf.a4, K))
        a6p = _laurent_dict(embed_ratfunc(ch.forminf.a6, K))
        for u in roots:
            rhs = _add_dicts(K, a4K, _scale_dict(K, K.pow(u, 4), a4p))
            sig = solve_frobenius_laurent(K, s_terms, rhs)
            if sig is None:
                continue
            # constant term: s0^4 + a3 s0 = rhs_0
            c0 = rhs.get(0, K.zero)
            S0 = Poly(K, [K.norm(-c0), K.coerce(a3), 0, 0, 1])
            s0s = poly_roots(S0)
            if len(s0s) < _distinct_root_count(S0, 4):
                all_split = False
            for s0 in s0s:
                splus = {k: v for k, v in sig.items() if k > 0}
                if s0:
                    splus[0] = s0
                sminus = {k: v for k, v in sig.items() if k < 0}
                sp = _from_dict(K, splus)
                step1 = Transform(
                    RatFunc.constant(K, 1), sp * sp, sp, RatFunc.constant(K, 0)
                )
                Wt = apply(_embed_eq(ch.form0.equation(F), K), step1)
                sm = _from_dict(K, sminus)
                rhs_t = _add_dicts(
                    K,
                    _laurent_dict(Wt.a6),
                    _laurent_dict(sm * sm * Wt.a4),
                    _laurent_dict(sm**6),
                    _scale_dict(K, K.pow(u, 6), a6p),
                )
                t = solve_frobenius_laurent(K, t_terms, rhs_t)
                if t is None:
                    continue
                tplus = _from_dict(K, t, positive_only=True)
                step2 = Transform.make(K, t=tplus)
                return _finish(ch, compose(step1, step2))
        if all_split:
            return NonConstant(SubstitutionUnsolvable("s^4 + a3 s = a4 + u^4 a4', t^2 + a3 t = ..."))
    return Undecided(bound, "u^3 = a3/a3' and s0^4 + a3 s0 = c")


def _char2_j_zero_affine(ch, bound, a3, s_terms, t_terms):
    """W against an unknown constant model: the constant part s0 of s is a free unknown."""
    F = ch.W.field
    f0 = ch.form0
    sig = solve_frobenius_laurent(F, s_terms, _laurent_dict(f0.a4))
    if sig is None:
        return NonConstant(SubstitutionUnsolvable("s^4 + a3 s = a4 + c"))
    for e in range(1, bound + 1):
        K = extension_of_degree(F, e)
        s1 = _from_dict(K, {k: K.coerce(v) for k, v in sig.items()})
        a4 = embed_ratfunc(f0.a4, K)
        a6 = embed_ratfunc(f0.a6, K)
        base_rhs = _laurent_dict(a6 + s1 * s1 * a4 + s1**6)
        # contribution of s0: s^2 a4 + s^6 with s = s0 + s1, additive in s0
        B = _laurent_dict(a4 + s1**4)
        C = _laurent_dict(s1 * s1)

        def s0_slot(x, B=B, C=C, K=K):
            x2 = K.norm(x * x)
            return _add_dicts(K, _scale_dict(K, x2, B), _scale_dict(K, K.norm(x2 * x2), C))

        hi = max([d for d in base_rhs if d > 0] + [d for d in B if d > 0] + [d for d in C if d > 0], default=0) // 2
        t_degs = list(range(1, hi + 1))

        def t_slot(j, K=K):
            return lambda x: frobenius_image(K, t_terms, {j: x})

        slots = [s0_slot] + [t_slot(j) for j in t_degs]
        sol = solve_additive(K, slots, base_rhs, skip_degrees=(0,))
        if sol is None:
            continue
        s0, tvals = sol[0], sol[1:]
        s = s1 + RatFunc.constant(K, s0)
        step1 = Transform(RatFunc.constant(K, 1), s * s, s, RatFunc.constant(K, 0))
        t = _from_dict(K, {j: v for j, v in zip(t_degs, tvals) if v})
        return _finish(ch, compose(step1, Transform.make(K, t=t)))
    return NonConstant(SubstitutionUnsolvable("t^2 + a3 t = a6 + s^2 a4 + s^6 + c")) if bound >= 1 else Undecided(bound)


def _finish(ch, tail):
    K = tail.field
    witness = compose(_embed_tr(ch.to0, K), tail)
    return _checked_constant(ch.W, witness)


# -- dispatcher ----------------------------------------------------------------------


def is_constant(W, extension_degree_bound=DEFAULT_EXTENSION_BOUND, report=None):
    """Constancy verdict for any nonsingular W."""
    W = W.validated()
    if not j_constant(W):
        return NonConstant(JNonConstant())
    if report is None:
        report = reduction_report(W)
    if report.geometric_bad_count:
        # a model with constant coefficients has a constant nonzero discriminant on both charts
        return NonConstant(BadReduction(tuple(str(b.place) for b in report.bad_places)))
    if W.field.characteristic in (2, 3):
        return constancy_char23(W, extension_degree_bound, report=report)
    return twist_class_constancy(W)
