"""Recursive-descent parser for Weierstrass equations and rational functions in T.

Grammar (whitespace ignored)::

    input    := coeffs | equation
    coeffs   := '[' expr ',' expr ',' expr ',' expr ',' expr ']'
    equation := expr '=' expr
    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := ('-' | '+') unary | power
    power    := atom ('^' ['-'] INT)?
    atom     := INT | 'T' | 'x' | 'y' | 'a' | '(' expr ')'

``a`` is the generator of GF(p^n).  Division and negative powers are only
allowed for expressions free of x and y.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra.fields import ExtensionField, FieldError, field_from_tag
from .algebra.poly import Poly
from .algebra.ratfunc import RatFunc
from .weierstrass import WeierstrassEq

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\^|\*\*|[-+*/(),=\[\]]))")


class ParseError(ValueError):
    """Syntax error with the offending position and what was expected there."""

    def __init__(self, message, text="", pos=0, expected=()):
        self.text = text
        self.pos = pos
        self.expected = tuple(expected)
        self.message = message
        super().__init__(self._render())

    def _render(self):
        s = f"{self.message} at position {self.pos}"
        if self.expected:
            s += f" (expected {', '.join(self.expected)})"
        if self.text:
            s += f"\n  {self.text}\n  {' ' * self.pos}^"
        return s


class CoefficientError(ParseError):
    """A coefficient does not belong to the declared field."""


@dataclass(frozen=True)
class Tok:
    kind: str  # 'int', 'name', 'op', 'eof'
    value: str
    pos: int


def tokenize(text):
    out = []
    i = 0
    n = len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            out.append(Tok("eof", "", i))
            return out
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r}", text, i)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(Tok("int", m.group(1), start))
        elif m.group(2):
            out.append(Tok("name", m.group(2), start))
        else:
            v = m.group(3)
            out.append(Tok("op", "^" if v == "**" else v, start))
        i = m.end()


class _Value:
    """Polynomial in x, y with coefficients in k(T): {(i, j): RatFunc}."""

    __slots__ = ("F", "terms")

    def __init__(self, F, terms):
        self.F = F
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    @classmethod
    def scalar(cls, F, r):
        return cls(F, {(0, 0): r})

    def is_scalar(self):
        return all(k == (0, 0) for k in self.terms)

    def as_scalar(self):
        return self.terms.get((0, 0), RatFunc(Poly(self.F, [])))

    def __add__(self, o):
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t[k] + v if k in t else v
        return _Value(self.F, t)

    def __neg__(self):
        return _Value(self.F, {k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        t = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                p = v1 * v2
                t[k] = t[k] + p if k in t else p
        return _Value(self.F, t)


class Parser:
    def __init__(self, text, field):
        self.text = text
        self.F = field
        self.toks = tokenize(text)
        self.i = 0

    # -- helpers
    @property
    def tok(self):
        return self.toks[self.i]

    def _advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def _fail(self, message, expected=(), tok=None):
        tok = tok or self.tok
        raise ParseError(message, self.text, tok.pos, expected)

    def _expect(self, value):
        if self.tok.kind == "op" and self.tok.value == value:
            return self._advance()
        got = self.tok.value or "end of input"
        self._fail(f"unexpected {got!r}", (repr(value),))

    def _is(self, *values):
        return self.tok.kind == "op" and self.tok.value in values

    def _coeff(self, v, tok):
        try:
            return RatFunc(Poly(self.F, [v]))
        except (FieldError, ZeroDivisionError) as ex:
            raise CoefficientError(f"{v} is not an element of {self.F.tag}: {ex}", self.text, tok.pos) from None

    # -- grammar
    def parse_input(self):
        if self._is("["):
            return self.parse_coeff_list()
        return self.parse_equation()

    def parse_coeff_list(self):
        self._expect("[")
        vals = []
        while True:
            tok = self.tok
            v = self.expr()
            if not v.is_scalar():
                self._fail("coefficients may not contain x or y", tok=tok)
            vals.append(v.as_scalar())
            if self._is(","):
                self._advance()
                continue
            break
        self._expect("]")
        if self.tok.kind != "eof":
            self._fail(f"unexpected {self.tok.value!r}", ("end of input",))
        if len(vals) != 5:
            raise ParseError(f"expected 5 coefficients [a1,a2,a3,a4,a6], got {len(vals)}", self.text, 0)
        return WeierstrassEq(self.F, *vals)

    def parse_equation(self):
        lhs = self.expr()
        self._expect("=")
        rhs = self.expr()
        if self.tok.kind != "eof":
            self._fail(f"unexpected {self.tok.value!r}", ("end of input", "operator"))
        return self._to_weierstrass(lhs - rhs)

    def parse_scalar(self):
        tok = self.tok
        v = self.expr()
        if self.tok.kind != "eof":
            self._fail(f"unexpected {self.tok.value!r}", ("end of input", "operator"))
        if not v.is_scalar():
            self._fail("expected a rational function of T", tok=tok)
        return v.as_scalar()

    def _to_weierstrass(self, v):
        F = self.F
        t = v.terms
        cy = t.get((0, 2))
        cx = t.get((3, 0))
        if cy is None or cx is None or not (cy + cx).is_zero():
            raise ParseError("not a Weierstrass equation: need y^2 and x^3 on opposite sides with equal coefficients",
                             self.text, 0)
        allowed = {(0, 2), (3, 0), (1, 1), (0, 1), (2, 0), (1, 0), (0, 0)}
        extra = [k for k in t if k not in allowed]
        if extra:
            i, j = extra[0]
            raise ParseError(f"not a Weierstrass equation: unexpected monomial x^{i}*y^{j}", self.text, 0)
        zero = RatFunc(Poly(F, []))
        inv = cy.inverse()

        def c(k, sign):
            x = t.get(k, zero) * inv
            return x if sign > 0 else -x

        # y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6 = 0
        return WeierstrassEq(F, c((1, 1), 1), c((2, 0), -1), c((0, 1), 1), c((1, 0), -1), c((0, 0), -1))

    def expr(self):
        v = self.term()
        while self._is("+", "-"):
            op = self._advance().value
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self._is("*", "/"):
            op = self._advance()
            w = self.unary()
            if op.value == "*":
                v = v * w
            else:
                if not w.is_scalar():
                    self._fail("division by an expression in x or y", tok=op)
                d = w.as_scalar()
                if d.is_zero():
                    raise CoefficientError(f"division by zero in {self.F.tag}", self.text, op.pos)
                v = v * _Value.scalar(self.F, d.inverse())
        return v

    def unary(self):
        if self._is("-"):
            self._advance()
            return -self.unary()
        if self._is("+"):
            self._advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self._is("^"):
            op = self._advance()
            neg = False
            if self._is("-"):
                self._advance()
                neg = True
            if self.tok.kind != "int":
                self._fail("exponent must be an integer", ("integer",))
            e = int(self._advance().value)
            if neg:
                if not base.is_scalar():
                    self._fail("negative power of an expression in x or y", tok=op)
                s = base.as_scalar()
                if s.is_zero():
                    raise CoefficientError("negative power of zero", self.text, op.pos)
                return _Value.scalar(self.F, s ** (-e))
            out = _Value.scalar(self.F, RatFunc(Poly(self.F, [1])))
            for _ in range(e):
                out = out * base
            return out
        return base

    def atom(self):
        tok = self.tok
        F = self.F
        if tok.kind == "int":
            self._advance()
            return _Value.scalar(F, self._coeff(int(tok.value), tok))
        if tok.kind == "name":
            self._advance()
            name = tok.value
            if name == "T":
                return _Value.scalar(F, RatFunc.gen(F))
            if name == "x":
                return _Value(F, {(1, 0): RatFunc(Poly(F, [1]))})
            if name == "y":
                return _Value(F, {(0, 1): RatFunc(Poly(F, [1]))})
            if isinstance(F, ExtensionField) and name == F.name:
                return _Value.scalar(F, RatFunc(Poly(F, [F.gen])))
            if name == "a":
                raise CoefficientError(f"'a' names the generator of GF(p^n); not available in {F.tag}",
                                       self.text, tok.pos)
            self._fail(f"unknown name {name!r}", ("T", "x", "y", "integer", "'('"), tok=tok)
        if self._is("("):
            self._advance()
            v = self.expr()
            self._expect(")")
            return v
        got = tok.value or "end of input"
        self._fail(f"unexpected {got!r}", ("integer", "T", "x", "y", "'('"))


def _field(field_tag):
    return field_from_tag(field_tag) if isinstance(field_tag, str) else field_tag


def parse_equation(text, field_tag, check=True):
    """Parse an equation or coefficient list; singular equations raise SingularEquation."""
    F = _field(field_tag)
    W = Parser(text, F).parse_input()
    return W.validated() if check else W


def parse_ratfunc(text, field_tag):
    F = _field(field_tag)
    return Parser(text, F).parse_scalar()
