"""Dense univariate polynomial kernel.

Polynomials are plain lists of raw field elements, lowest degree first, with
no trailing zeros (``[]`` is the zero polynomial).  Every routine takes the
coefficient field ``F`` explicitly; raw elements support ``+ - *`` and
``F.norm`` brings a result back to canonical form (reduction mod p for prime
fields, a no-op otherwise).  Nothing here allocates wrapper objects, which
keeps the exhaustive scans tolerable in pure Python.
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2


def _prime(F):
    """p when F is a prime field (plain int elements), else 0."""
    return F.characteristic if F.order == F.characteristic else 0


def strip(a):
    while a and not a[-1]:
        a.pop()
    return a


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    norm = F.norm
    out = list(a)
    for i, c in enumerate(b):
        out[i] = norm(out[i] + c)
    return strip(out)


def sub(F, a, b):
    norm = F.norm
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(norm(x - y))
    return strip(out)


def neg(F, a):
    norm = F.norm
    return [norm(-c) for c in a]


def scale(F, a, c):
    if not c:
        return []
    p = _prime(F)
    if p:
        return strip([x * c % p for x in a])
    norm = F.norm
    return strip([norm(x * c) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    if len(a) == 1:
        return scale(F, b, a[0])
    if len(b) == 1:
        return scale(F, a, b[0])
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    p = _prime(F)
    if p:
        return strip([c % p for c in out])
    norm = F.norm
    return strip([norm(c) for c in out])


def sqr(F, a):
    return mul(F, a, a)


def shift(F, a, k):
    """Multiply by T**k (k >= 0)."""
    if not a:
        return []
    return [F.zero] * k + list(a)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], list(a)
    inv_lc = F.inv(b[-1])
    r = list(a)
    db = len(b) - 1
    q = [F.zero] * (len(a) - db)
    p = _prime(F)
    if p:
        # prime field: plain ints, reduce inline
        for k in range(len(a) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            c = c * inv_lc % p
            q[k - db] = c
            off = k - db
            for j in range(db + 1):
                r[off + j] = (r[off + j] - c * b[j]) % p
        return strip(q), strip(r[:db])
    norm = F.norm
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c = norm(c * inv_lc)
        q[k - db] = c
        off = k - db
        for j in range(db + 1):
            r[off + j] = norm(r[off + j] - c * b[j])
    return strip(q), strip(r[:db])


def rem(F, a, b):
    if len(a) < len(b):
        return list(a)
    return divmod_(F, a, b)[1]


def exact_div(F, a, b):
    q, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(F, a):
    if not a or a[-1] == F.one:
        return list(a)
    return scale(F, a, F.inv(a[-1]))


def _gcd_prime(p, a, b):
    """Monic gcd over GF(p), remainders computed in place."""
    a, b = list(a), list(b)
    while b:
        inv_lc = pow(b[-1], -1, p)
        db = len(b) - 1
        r = a
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = c * inv_lc % p
                off = k - db
                for j in range(db):
                    r[off + j] = (r[off + j] - c * b[j]) % p
        del r[db:]
        while r and not r[-1]:
            r.pop()
        a, b = b, r
    if a and a[-1] != 1:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _content(a):
    g = 0
    for x in a:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


def _integer_primitive(a):
    """Primitive integer multiple of a polynomial with Fraction coefficients."""
    den = 1
    for x in a:
        den = den * x.denominator // math.gcd(den, x.denominator)
    c = [int(x * den) for x in a]
    g = _content(c)
    return [x // g for x in c]


def _int_divides(a, g):
    """Whether the integer polynomial g divides a in Z[T]."""
    r = list(a)
    dg = len(g) - 1
    lg = g[-1]
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            q, m = divmod(c, lg)
            if m:
                return False
            off = k - dg
            for j in range(dg + 1):
                r[off + j] -= q * g[j]
    return not any(r[:dg])


def _gcd_rational(F, a, b):
    """Monic gcd over Q, multi-modular.

    Images modulo word-size primes are scaled to the gcd of the leading
    coefficients, combined by CRT in the symmetric range, and accepted once
    the primitive part divides both inputs over Z.  Primes giving a larger
    degree than the best seen are unlucky and dropped.
    """
    if not a or not b:
        return monic(F, a or b)
    A, B = _integer_primitive(a), _integer_primitive(b)
    lc = math.gcd(A[-1], B[-1])
    best_deg = min(len(A), len(B))
    image, modulus = None, 1
    p = 1 << 31
    while True:
        p = int(gmpy2.next_prime(p))
        if not (A[-1] % p and B[-1] % p):
            continue
        gp = _gcd_prime(p, [x % p for x in A], [x % p for x in B])
        if len(gp) == 1:
            return [F.one]
        if len(gp) > best_deg:
            continue
        gp = [x * lc % p for x in gp]
        if len(gp) < best_deg or image is None:
            best_deg, image, modulus = len(gp), gp, p
        else:
            # CRT: x = image mod modulus, x = gp mod p
            inv = pow(modulus, -1, p)
            new_mod = modulus * p
            half = new_mod // 2
            merged = []
            for x, y in zip(image, gp):
                z = (x + modulus * ((y - x) * inv % p)) % new_mod
                merged.append(z - new_mod if z > half else z)
            unchanged = merged == image
            image, modulus = merged, new_mod
            if not unchanged:
                continue
        cand = list(image)
        c = _content(cand)
        if c == 0:
            continue
        cand = [x // c for x in cand]
        if _int_divides(A, cand) and _int_divides(B, cand):
            return [F.norm(Fraction(x, cand[-1])) for x in cand]


def gcd(F, a, b):
    p = _prime(F)
    if p:
        return _gcd_prime(p, a, b)
    if F.characteristic == 0:
        return _gcd_rational(F, a, b)
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def deriv(F, a):
    norm = F.norm
    return strip([norm(a[i] * i) for i in range(1, len(a))])


def evaluate(F, a, x):
    acc = F.zero
    norm = F.norm
    for c in reversed(a):
        acc = norm(acc * x + c)
    return acc


def pow_(F, a, e):
    result = [F.one]
    base = list(a)
    while e:
        if e & 1:
            result = mul(F, result, base)
        e >>= 1
        if e:
            base = mul(F, base, base)
    return result


def powmod(F, a, e, m):
    result = [F.one]
    base = rem(F, a, m)
    while e:
        if e & 1:
            result = rem(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = rem(F, mul(F, base, base), m)
    return rem(F, result, m)


def compose(F, a, b):
    """a(b(T)) by Horner."""
    out = []
    for c in reversed(a):
        out = add(F, mul(F, out, b), [c] if c else [])
    return out


def valuation_at(F, a, g):
    """Multiplicity of g in a (a nonzero); the cofactor is returned too."""
    if len(g) == 2 and not g[0]:
        # g = T up to scaling
        k = 0
        while not a[k]:
            k += 1
        return k, a[k:]
    k = 0
    while True:
        q, r = divmod_(F, a, g)
        if r:
            return k, a
        a = q
        k += 1


def is_irreducible(F, a):
    """Rabin's test over a finite field of order F.order."""
    n = len(a) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    q = F.order
    f = monic(F, a)
    x = [F.zero, F.one]
    # x^(q^n) == x mod f
    h = x
    for _ in range(n):
        h = powmod(F, h, q, f)
    if sub(F, h, x):
        return False
    for d in _prime_divisors(n):
        h = x
        for _ in range(n // d):
            h = powmod(F, h, q, f)
        if len(gcd(F, sub(F, h, x), f)) != 1:
            return False
    return True


def _prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
