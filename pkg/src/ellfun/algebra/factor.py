"""gcd, squarefree decomposition, factorization and root extraction."""

from __future__ import annotations

import math
import os
import random
from fractions import Fraction
from functools import lru_cache

import gmpy2

from . import dense
from .fields import GF, QQ, ExtensionField, FieldError, extension_of_degree
from .poly import Poly
from .ratfunc import Place, RatFunc

DEFAULT_SEED = 0x5EED
SEED_ENV = "ELLFUN_FACTOR_SEED"


def default_seed():
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw else DEFAULT_SEED


class NeedsExtension(ArithmeticError):
    """An m-th root only exists in an algebraic extension of the base field."""


def _check_same(a, b):
    if a.field != b.field:
        raise FieldError(f"mixed-field operands: {a.field} and {b.field}")


def poly_gcd(a, b):
    _check_same(a, b)
    return Poly._make(a.field, dense.gcd(a.field, list(a.coeffs), list(b.coeffs)))


def poly_xgcd(a, b):
    _check_same(a, b)
    g, s, t = dense.xgcd(a.field, list(a.coeffs), list(b.coeffs))
    F = a.field
    return Poly._make(F, g), Poly._make(F, s), Poly._make(F, t)


def poly_lcm(a, b):
    if a.is_zero() or b.is_zero():
        return Poly._make(a.field, ())
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def _poly_pth_root(f):
    """g with g**p == f, assuming every exponent of f is divisible by p."""
    F = f.field
    p = F.characteristic
    c = f.coeffs
    return Poly._make(F, [F.pth_root(c[i]) for i in range(0, len(c), p)])


def squarefree_decomposition(f):
    """[(g, e), ...] with g monic squarefree, pairwise coprime, lc(f)*prod g**e == f."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    F = f.field
    f = f.monic()
    if f.degree == 0:
        return []
    if F.characteristic == 0:
        out = _yun(f)
    else:
        c = list(f.coeffs)
        dc = dense.deriv(F, c)
        if dc and len(dense.gcd(F, c, dc)) == 1:
            return [(f, 1)]
        out = _sqf_p(f, 1)
    merged = {}
    for g, e in out:
        merged[e] = merged[e] * g if e in merged else g
    return sorted(((g.monic(), e) for e, g in merged.items()), key=lambda t: t[1])


def _yun(f):
    out = []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def _sqf_p(f, mult):
    p = f.field.characteristic
    out = []
    df = f.derivative()
    if df.is_zero():
        return _sqf_p(_poly_pth_root(f), mult * p)
    c = poly_gcd(f, df)
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z, i * mult))
        i += 1
        w = y
        c = c.exact_div(y)
    if c.degree > 0:
        out.extend(_sqf_p(_poly_pth_root(c), mult * p))
    return out


def radical(f):
    out = Poly(f.field, [1])
    for g, _ in squarefree_decomposition(f):
        out = out * g
    return out


# -- factorization over finite fields ---------------------------------------


def _ddf(F, f):
    """Distinct-degree factorization of a monic squarefree f."""
    q = F.order
    out = []
    x = [F.zero, F.one]
    h = list(x)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = dense.powmod(F, h, q, f)
        g = dense.gcd(F, f, dense.sub(F, h, x))
        if len(g) > 1:
            out.append((g, d))
            f = dense.exact_div(F, f, g)
            h = dense.rem(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _edf(F, f, d, rng):
    """Equal-degree splitting (Cantor-Zassenhaus)."""
    n = len(f) - 1
    if n == d:
        return [f]
    q = F.order
    p = F.characteristic
    while True:
        a = dense.strip([F.random(rng) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # trace map T(a) = a + a^2 + ... + a^(2^(k*d - 1)) with q = 2^k
            k = q.bit_length() - 1
            b = list(a)
            t = list(a)
            for _ in range(k * d - 1):
                t = dense.rem(F, dense.mul(F, t, t), f)
                b = dense.add(F, b, t)
        else:
            b = dense.powmod(F, a, (q**d - 1) // 2, f)
            b = dense.sub(F, b, [F.one])
        g = dense.gcd(F, f, b)
        if 1 < len(g) < len(f):
            return _edf(F, g, d, rng) + _edf(F, dense.exact_div(F, f, g), d, rng)


def factor_irreducible(f, seed=None):
    """Complete monic irreducible factorization over a finite field.

    Returns [(g, e), ...] sorted by degree then coefficients.
    """
    if f.is_zero():
        raise ValueError("factorization of zero")
    F = f.field
    if not F.is_finite:
        raise FieldError("irreducible factorization needs a finite field; use coprime_refinement over Q")
    if seed is None:
        seed = default_seed()
    return list(_factor_cached(F, f.coeffs, seed))


_ROOT_SWEEP_LIMIT = 128


def _split_linear_prime(p, c):
    """Strip every linear factor of c over GF(p) by trying all p points.

    Returns ([(root, multiplicity)], cofactor) with the cofactor root-free.
    """
    roots = []
    c = list(c)
    for a in range(p):
        if len(c) < 2:
            break
        k = 0
        while len(c) > 1:
            # synthetic division by T - a
            q = [0] * (len(c) - 1)
            acc = 0
            for i in range(len(c) - 1, 0, -1):
                acc = (acc * a + c[i]) % p
                q[i - 1] = acc
            if (acc * a + c[0]) % p:
                break
            c = q
            k += 1
        if k:
            roots.append((a, k))
    return roots, c


@lru_cache(maxsize=65536)
def _factor_cached(F, coeffs, seed):
    f = Poly._make(F, coeffs)
    rng = random.Random(seed)
    out = []
    if F.order == F.characteristic and F.order <= _ROOT_SWEEP_LIMIT and f.degree > 0:
        p = F.order
        monic = dense.monic(F, list(coeffs))
        roots, rest = _split_linear_prime(p, monic)
        out.extend((Poly._make(F, ((-a) % p, 1)), k) for a, k in roots)
        if len(rest) - 1 in (2, 3):
            # no roots, so irreducible
            out.append((Poly._make(F, tuple(rest)), 1))
            rest = [1]
        f = Poly._make(F, rest)
        if f.degree < 1:
            out.sort(key=lambda t: t[0].sort_key())
            return tuple(out)
    for g, e in squarefree_decomposition(f):
        for part, d in _ddf(F, list(g.coeffs)):
            for irr in _edf(F, part, d, rng):
                out.append((Poly._make(F, irr), e))
    out.sort(key=lambda t: t[0].sort_key())
    return tuple(out)


def poly_roots(f, seed=None):
    """Distinct roots of f in its coefficient field (finite fields only)."""
    F = f.field
    if f.degree < 1:
        return []
    f = f.monic()
    q = F.order
    x = [F.zero, F.one]
    h = dense.powmod(F, x, q, list(f.coeffs))
    g = dense.gcd(F, list(f.coeffs), dense.sub(F, h, x))
    if len(g) < 2:
        return []
    rng = random.Random(default_seed() if seed is None else seed)
    roots = [F.norm(-lin[0]) for lin in _edf(F, g, 1, rng)]
    return sorted(roots, key=F.sort_key)


def is_irreducible(f):
    F = f.field
    if not F.is_finite:
        raise FieldError("irreducibility test needs a finite field")
    return dense.is_irreducible(F, list(f.coeffs))


def coprime_refinement(fs):
    """Pairwise coprime squarefree monic basis for a family of nonzero polynomials."""
    basis = []
    for f in fs:
        if f.is_zero():
            raise ValueError("coprime refinement of zero")
        for g, _ in squarefree_decomposition(f):
            basis = _refine(basis, g)
    return sorted(basis, key=lambda b: b.sort_key())


def _refine(basis, a):
    out = []
    for b in basis:
        if a.degree < 1:
            out.append(b)
            continue
        g = poly_gcd(a, b)
        if g.degree < 1:
            out.append(b)
            continue
        a = a.exact_div(g)
        rest = b.exact_div(g)
        out.append(g)
        if rest.degree > 0:
            out.append(rest.monic())
    if a.degree > 0:
        out.append(a.monic())
    return out


def _good_prime(ints):
    """A prime not dividing the leading coefficient, modulo which ints stays squarefree."""
    p = 101
    while True:
        if ints[-1] % p:
            F = GF(p)
            c = dense.strip([x % p for x in ints])
            if len(dense.gcd(F, c, dense.deriv(F, c))) == 1:
                return p, F, c
        p = int(gmpy2.next_prime(p))


def _rational_reconstruct(r, m, n_bound, d_bound):
    """a/b = r mod m with |a| <= n_bound and 0 < b <= d_bound, or None."""
    r0, r1 = m, r % m
    s0, s1 = 0, 1
    while r1 > n_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > d_bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)


def _rational_roots_int(ints):
    """Rational roots of a squarefree integer polynomial with nonzero constant term.

    A root a/b in lowest terms has a | c0 and b | lc.  Roots modulo a good
    prime are Newton-lifted until the modulus exceeds 2 |c0| |lc|, where
    rational reconstruction is unique; every candidate is then checked.
    """
    p, F, cp = _good_prime(ints)
    n_bound, d_bound = abs(ints[0]), abs(ints[-1])
    deriv = [ints[i] * i for i in range(1, len(ints))]
    out = []
    for r in poly_roots(Poly._make(F, cp)):
        r, m = int(r), p
        while m <= 2 * n_bound * d_bound:
            m = m * m
            fr = _eval_int(ints, r, m)
            dr = _eval_int(deriv, r, m)
            r = (r - fr * pow(dr, -1, m)) % m
        cand = _rational_reconstruct(r, m, n_bound, d_bound)
        if cand is not None and _eval_frac(ints, cand) == 0:
            out.append(cand)
    return out


def _eval_int(c, x, m):
    acc = 0
    for a in reversed(c):
        acc = (acc * x + a) % m
    return acc


def _eval_frac(c, x):
    """b^n f(a/b) for x = a/b, exact in integers."""
    a, b = x.numerator, x.denominator
    n = len(c) - 1
    acc = 0
    for i in range(n, -1, -1):
        acc = acc * a + c[i] * b ** (n - i)
    return acc


def rational_roots(f):
    """Distinct rational roots of a nonzero polynomial over Q, ascending."""
    if f.field is not QQ:
        raise FieldError("rational_roots works over Q")
    if f.is_zero():
        raise ValueError("roots of zero")
    if f.degree < 1:
        return []
    g = radical(f)
    c = list(g.coeffs)
    roots = []
    if not c[0]:
        roots.append(Fraction(0))
        c = c[1:]
    if len(c) > 1:
        den = 1
        for x in c:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in c]
        roots.extend(_rational_roots_int(ints))
    return sorted(roots)


def rational_places(polys):
    """Places over Q: rational roots split off as linear places, the rest as coprime clusters."""
    out = []
    for cl in coprime_refinement(polys):
        for r in rational_roots(cl):
            lin = Poly(QQ, [-r, 1])
            out.append(lin)
            cl = cl.exact_div(lin)
        if cl.degree > 0:
            out.append(cl.monic())
    return out


def finite_places(polys, seed=None):
    """Finite places dividing any of the given nonzero polynomials.

    Irreducible factors over finite fields, coprime clusters over Q.
    """
    polys = [p for p in polys if p.degree > 0]
    if not polys:
        return []
    F = polys[0].field
    if F.is_finite:
        gens = {}
        for p in polys:
            for g, _ in factor_irreducible(p, seed):
                gens[g] = None
        out = list(gens)
    else:
        out = rational_places(polys)
    return sorted((Place(g) for g in out), key=Place.sort_key)


def factored(f, seed=None):
    """Places and multiplicities of a nonzero polynomial."""
    if f.field.is_finite:
        return [(Place(g), e) for g, e in factor_irreducible(f, seed)]
    return [(p, f.multiplicity(p.generator)) for p in finite_places([f])]


# -- p-th powers and constant roots ------------------------------------------


def pth_power_level(x):
    """Largest s with x in k(T)^(p^s); math.inf for constants."""
    if isinstance(x, Poly):
        x = RatFunc(x)
    F = x.field
    p = F.characteristic
    if p == 0:
        raise FieldError("p-th power level needs positive characteristic")
    if x.is_zero():
        raise ValueError("p-th power level of zero")
    if x.is_constant():
        return math.inf
    level = 0
    num, den = x.num, x.den
    while True:
        if not (_all_exponents_divisible(num, p) and _all_exponents_divisible(den, p)):
            return level
        num, den = _poly_pth_root(num), _poly_pth_root(den)
        level += 1


def _all_exponents_divisible(f, p):
    return all(not c for i, c in enumerate(f.coeffs) if i % p)


def _integer_root(n, m):
    """Exact m-th root of a nonnegative integer, or None."""
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // m + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid**m
        if v == n:
            return mid
        if v < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def constant_root(c, m, field, extension_bound=12, seed=None):
    """Some m-th root of a nonzero constant c, with the field it lives in.

    Over a finite field the root may live in a constructed extension
    F_{q^e}, e <= extension_bound; base elements embed as constants.  Over Q
    only rational roots are returned, otherwise NeedsExtension is raised.
    """
    if m < 1:
        raise ValueError("root order must be positive")
    c = field.coerce(c)
    if not c:
        raise ValueError("root of zero")
    if field.characteristic == 0:
        c = Fraction(c)
        sign = 1
        if c < 0:
            if m % 2 == 0:
                raise NeedsExtension(f"{c} has no real {m}-th root; requires algebraic extension")
            sign = -1
        a = _integer_root(abs(c.numerator), m)
        b = _integer_root(c.denominator, m)
        if a is None or b is None:
            raise NeedsExtension(f"{c} has no rational {m}-th root; requires algebraic extension")
        return Fraction(sign * a, b), QQ
    roots, K = all_constant_roots(c, m, field, extension_bound, seed)
    if not roots:
        raise NeedsExtension(f"no {m}-th root of {field.fmt(c)} within extension degree {extension_bound}")
    return roots[0], K


def all_constant_roots(c, m, field, extension_bound=12, seed=None, require_split=False):
    """All m-th roots of c in the smallest F_{q^e} (e <= bound) containing one.

    With ``require_split`` the smallest extension containing all m-th roots
    is used instead.  Returns ([], None) if nothing is found.
    """
    p = field.characteristic
    a = 0
    mm = m
    while mm % p == 0:
        mm //= p
        a += 1
    for e in range(1, extension_bound + 1):
        K = extension_of_degree(field, e)
        ce = K.coerce(c) if K is not field else c
        if not K.is_nth_power(ce, mm):
            continue
        if require_split and (K.order - 1) % mm:
            continue
        X = Poly.monomial(K, K.one, mm) - Poly(K, [ce])
        roots = poly_roots(X, seed)
        for _ in range(a):
            roots = [K.pth_root(r) for r in roots]
        if roots:
            return roots, K
    return [], None


def embed_poly(f, K):
    """Base change of a polynomial into an extension field K."""
    if f.field == K:
        return f
    return Poly(K, [K.coerce(c) for c in f.coeffs])


def embed_ratfunc(x, K):
    if x.field == K:
        return x
    return RatFunc(embed_poly(x.num, K), embed_poly(x.den, K))


__all__ = [
    "ExtensionField",
    "NeedsExtension",
    "all_constant_roots",
    "constant_root",
    "coprime_refinement",
    "default_seed",
    "embed_poly",
    "embed_ratfunc",
    "factor_irreducible",
    "factored",
    "finite_places",
    "is_irreducible",
    "poly_gcd",
    "poly_lcm",
    "poly_roots",
    "poly_xgcd",
    "pth_power_level",
    "radical",
    "squarefree_decomposition",
]
