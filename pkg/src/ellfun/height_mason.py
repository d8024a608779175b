"""Heights on k(T), Mason's ABC inequality, unit differences A^3 - B^2.

Also hosts the exhaustive root search used as an oracle for the statement
that ``Y^(p^r) - Y^n Q1^m - Q1^(m+1) Q - c`` has no roots in k[T].
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

from .algebra import dense
from .algebra.factor import finite_places, pth_power_level
from .algebra.fields import FieldError
from .algebra.poly import LaurentPoly, Poly
from .algebra.ratfunc import INFINITY, RatFunc, valuation


class MasonViolation(AssertionError):
    """A non-exempt triple whose height exceeds |V| - 2."""


class UnitDifferenceViolation(AssertionError):
    """A unit difference A^3 - B^2 outside the three monomial families."""


def _rf(x):
    return RatFunc(x) if isinstance(x, Poly) else x


def height(x):
    """max(deg num, deg den) of the reduced fraction."""
    x = _rf(x)
    if x.is_zero():
        raise ValueError("height of zero is undefined")
    return max(x.num.degree, x.den.degree)


def places_for(xs):
    """Finite places relevant to a family of nonzero rational functions, plus infinity.

    Over Q, rational roots give linear places and whatever does not split
    stays as coprime clusters, so each x has a single valuation at each
    returned place.
    """
    polys = []
    for x in xs:
        x = _rf(x)
        polys.extend([x.num, x.den])
    polys = [p for p in polys if p.degree > 0]
    return finite_places(polys) + [INFINITY]


def height_by_places(x):
    """sum over places of -min(0, v(x)), each place weighted by its residue degree."""
    x = _rf(x)
    if x.is_zero():
        raise ValueError("height of zero is undefined")
    total = 0
    for place in places_for([x]):
        v = valuation(x, place)
        if v < 0:
            total += -v * place.residue_degree
    return total


@dataclass(frozen=True)
class MasonTriple:
    gamma1: RatFunc
    gamma2: RatFunc
    gamma3: RatFunc

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "gamma3"):
            g = _rf(getattr(self, name))
            object.__setattr__(self, name, g)
            if g.is_zero():
                raise ValueError(f"{name} must be nonzero")
        if not (self.gamma1 + self.gamma2 + self.gamma3).is_zero():
            raise ValueError("gamma1 + gamma2 + gamma3 must vanish")

    @classmethod
    def completing(cls, g1, g2):
        return cls(g1, g2, -(_rf(g1) + _rf(g2)))


class Exemption(enum.Enum):
    RATIO_CONSTANT = "RatioConstant"
    RATIO_PTH_POWER = "RatioPthPower"
    NOT_EXEMPT = "NotExempt"


@dataclass(frozen=True)
class MasonVerdict:
    exempt: Exemption
    v_size: int
    height: int
    places: tuple = field(default=(), compare=False)

    @property
    def slack(self):
        return self.v_size - 2 - self.height

    def __post_init__(self):
        if self.exempt is Exemption.NOT_EXEMPT and self.slack < 0:
            raise MasonViolation(
                f"H = {self.height} exceeds |V| - 2 = {self.v_size - 2} for a non-exempt triple"
            )


def disagreement_places(t):
    gs = (t.gamma1, t.gamma2, t.gamma3)
    out = []
    for place in places_for(gs):
        v1, v2, v3 = (valuation(g, place) for g in gs)
        if not (v1 == v2 == v3):
            out.append(place)
    return out


def mason_check(t, places=None):
    """Verdict for a triple, with V the minimal admissible set unless given.

    An explicit ``places`` must contain every place where the three
    valuations disagree; over Q its entries must be clusters compatible with
    the triple (each gamma has a single valuation along each cluster).
    """
    minimal = disagreement_places(t)
    if places is None:
        chosen = minimal
    else:
        chosen = list(places)
        gens = {p.generator for p in chosen}
        missing = [p for p in minimal if p.generator not in gens]
        if missing:
            raise ValueError(f"place set is not admissible; missing {', '.join(map(str, missing))}")
    ratio = t.gamma1 / t.gamma2
    h = height(ratio)
    size = sum(p.residue_degree for p in chosen)
    F = ratio.field
    if ratio.is_constant():
        ex = Exemption.RATIO_CONSTANT
    elif F.characteristic > 0 and pth_power_level(ratio) >= 1:
        ex = Exemption.RATIO_PTH_POWER
    else:
        ex = Exemption.NOT_EXEMPT
    return MasonVerdict(ex, size, h, tuple(chosen))


# -- unit differences ----------------------------------------------------------


@dataclass(frozen=True)
class BothPowers:
    """(A, B) = (a T^(2n), b T^(3n))."""

    a: object
    b: object
    n: int

    def reconstruct(self, F):
        return (
            LaurentPoly(Poly(F, [self.a]), 2 * self.n),
            LaurentPoly(Poly(F, [self.b]), 3 * self.n),
        )


@dataclass(frozen=True)
class AZero:
    """(A, B) = (0, b T^n)."""

    b: object
    n: int

    def reconstruct(self, F):
        return LaurentPoly(Poly(F, [])), LaurentPoly(Poly(F, [self.b]), self.n)


@dataclass(frozen=True)
class BZero:
    """(A, B) = (a T^n, 0)."""

    a: object
    n: int

    def reconstruct(self, F):
        return LaurentPoly(Poly(F, [self.a]), self.n), LaurentPoly(Poly(F, []))


@dataclass(frozen=True)
class NotUnitDifference:
    pass


def _laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, Poly):
        return LaurentPoly(x)
    if isinstance(x, RatFunc):
        return LaurentPoly.from_ratfunc(x)
    raise TypeError(f"cannot read {x!r} as a Laurent polynomial")


def classify_unit_difference(A, B):
    """Classify (A, B) in k[T, 1/T] according to whether A^3 - B^2 is a unit.

    Characteristic 2 and 3 are rejected: the monomial trichotomy is only a
    statement away from them.
    """
    A, B = _laurent(A), _laurent(B)
    F = A.field
    if F.characteristic in (2, 3):
        raise FieldError("unit-difference classification needs characteristic other than 2, 3")
    D = A**3 - B**2
    if D.is_zero() or not D.is_unit():
        return NotUnitDifference()
    if A.is_zero():
        if not B.is_unit():
            raise UnitDifferenceViolation(f"A = 0 but B = {B} is not a monomial")
        cls = AZero(B.unit_part.coeffs[0], B.shift)
    elif B.is_zero():
        if not A.is_unit():
            raise UnitDifferenceViolation(f"B = 0 but A = {A} is not a monomial")
        cls = BZero(A.unit_part.coeffs[0], A.shift)
    else:
        if not (A.is_unit() and B.is_unit() and A.shift % 2 == 0 and B.shift == 3 * (A.shift // 2)):
            raise UnitDifferenceViolation(f"A^3 - B^2 is a unit for A = {A}, B = {B}")
        cls = BothPowers(A.unit_part.coeffs[0], B.unit_part.coeffs[0], A.shift // 2)
    if A.is_polynomial() and B.is_polynomial() and D.shift == 0 and cls.n != 0:
        raise UnitDifferenceViolation("polynomial A, B with constant A^3 - B^2 must be constants")
    return cls


def laurent_space(F, unit_degree, max_shift):
    """Every Laurent polynomial with unit part of degree <= unit_degree and |shift| <= max_shift."""
    out = [LaurentPoly(Poly(F, []))]
    nonzero = [x for x in F.elements() if x]
    elems = list(F.elements())
    for d in range(unit_degree + 1):
        for head in nonzero:
            for lead in nonzero if d else [None]:
                mids = itertools.product(elems, repeat=max(d - 1, 0))
                for mid in mids:
                    coeffs = [head] + list(mid) + ([lead] if d else [])
                    u = Poly._make(F, coeffs)
                    for s in range(-max_shift, max_shift + 1):
                        out.append(LaurentPoly(u, s))
    return out


def unit_difference_pairs(F, unit_degree, max_shift):
    """All (A, B) in the bounded space with A^3 - B^2 a unit.

    Enumerates B^2 = A^3 - u T^l against a table of squares; since a unit
    difference is a single monomial whose exponent lies in the span of the
    possible A^3 and B^2 exponents, this visits exactly the pairs a direct
    double loop would accept.
    """
    space = laurent_space(F, unit_degree, max_shift)
    squares = {}
    for B in space:
        squares.setdefault(B**2, []).append(B)
    lo = min(-3 * max_shift, -2 * max_shift)
    hi = max(3 * (max_shift + unit_degree), 2 * (max_shift + unit_degree))
    units = [x for x in F.elements() if x]
    out = []
    for A in space:
        A3 = A**3
        for l in range(lo, hi + 1):
            for u in units:
                target = A3 - LaurentPoly(Poly._make(F, [u]), l)
                for B in squares.get(target, ()):
                    out.append((A, B))
    return out


def unit_difference_pairs_brute(F, unit_degree, max_shift):
    """Direct double loop; only feasible for very small spaces."""
    space = laurent_space(F, unit_degree, max_shift)
    cubes = [(A, A**3) for A in space]
    squares = [(B, B**2) for B in space]
    out = []
    for A, A3 in cubes:
        for B, B2 in squares:
            D = A3 - B2
            if not D.is_zero() and D.is_unit():
                out.append((A, B))
    return out


# -- root search oracle ---------------------------------------------------------


def _check_root_search(p, r, m, n, Q1, Q, c):
    F = Q1.field
    if F.characteristic != p or not F.is_finite:
        raise ValueError(f"base field must be a finite field of characteristic {p}")
    if min(r, m, n) < 1:
        raise ValueError("r, m, n must be at least 1")
    if m >= p**r:
        raise ValueError("m must be smaller than p^r")
    if math.gcd(m, p) != 1 or math.gcd(n, p) != 1:
        raise ValueError("m and n must be coprime to p")
    if Q1.degree < 1:
        raise ValueError("Q1 must be nonconstant")
    if not F.coerce(c):
        raise ValueError("c must be nonzero")


def frobenius_root_search(p, r, m, n, Q1, Q, c, degree_bound, shard=(0, 1), cap=10**7) -> Optional[Poly]:
    """Exhaustively look for A with deg A <= degree_bound and f(A) = 0.

    Candidates are enumerated in a fixed order; ``shard=(i, k)`` restricts
    to candidates whose index is i mod k.  Returns the first root or None.
    """
    _check_root_search(p, r, m, n, Q1, Q, c)
    F = Q1.field
    total = F.order ** (degree_bound + 1)
    if total > cap:
        raise ValueError(f"{total} candidates exceed the search cap {cap}")
    index, parts = shard
    pr = p**r
    M = list((Q1**m).coeffs)
    P = list((Q1 ** (m + 1) * Q + F.coerce(c)).coeffs)
    elems = list(F.elements())
    frob_r = (lambda x: x) if F.order == p else (lambda x: F.pow(x, pr))
    for idx, tup in enumerate(itertools.product(elems, repeat=degree_bound + 1)):
        if idx % parts != index:
            continue
        a = dense.strip(list(tup))
        # A^(p^r): Frobenius-linear
        lhs = []
        for i, x in enumerate(a):
            if x:
                if len(lhs) < i * pr + 1:
                    lhs.extend([F.zero] * (i * pr + 1 - len(lhs)))
                lhs[i * pr] = frob_r(x)
        rhs = dense.add(F, dense.mul(F, dense.pow_(F, a, n), M), P)
        if lhs == rhs:
            return Poly._make(F, a)
    return None


# -- falsification harness ------------------------------------------------------


@dataclass
class MasonHarnessResult:
    field: str
    triples: int = 0
    exempt: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    min_slack: Optional[int] = None
    tight: Optional[MasonTriple] = None

    def record(self, t, verdict):
        self.triples += 1
        key = verdict.exempt.value
        self.exempt[key] = self.exempt.get(key, 0) + 1
        if verdict.exempt is Exemption.NOT_EXEMPT:
            if self.min_slack is None or verdict.slack < self.min_slack:
                self.min_slack = verdict.slack
            if verdict.slack == 0 and self.tight is None:
                self.tight = t


def _random_factor_product(F, rng, max_factors):
    """c * prod (T - a_i)^(e_i): sums of such products often share few places."""
    T = Poly.gen(F)
    out = Poly(F, [F.random(rng) or F.one])
    for _ in range(rng.randint(0, max_factors)):
        out = out * (T - F.random(rng)) ** rng.randint(1, 3)
    return out


def random_triple(F, rng, max_degree=4):
    """A random admissible triple (all three nonzero, summing to zero)."""
    while True:
        parts = []
        for _ in range(2):
            if rng.random() < 0.5:
                num = _random_factor_product(F, rng, 3)
                den = _random_factor_product(F, rng, 1)
            else:
                num = Poly(F, [F.random(rng) for _ in range(rng.randint(1, max_degree + 1))])
                den = Poly(F, [F.random(rng) for _ in range(rng.randint(1, 2))])
            if num.is_zero() or den.is_zero():
                break
            parts.append(RatFunc(num, den))
        if len(parts) < 2 or (parts[0] + parts[1]).is_zero():
            continue
        return MasonTriple.completing(*parts)


def mason_harness(F, n, seed=0, max_degree=4):
    """Check n random triples; violations are collected instead of raised."""
    import random

    rng = random.Random(seed)
    res = MasonHarnessResult(F.tag)
    for _ in range(n):
        t = random_triple(F, rng, max_degree)
        try:
            v = mason_check(t)
        except MasonViolation as ex:
            res.triples += 1
            res.violations.append((t, str(ex)))
            continue
        res.record(t, v)
    return res
