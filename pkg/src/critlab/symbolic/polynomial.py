"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial carries an ordered tuple of variable names (the precedence used
by the monomial order) and a map from exponent tuples to ``Fraction``s.
Zero coefficients are never stored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from ..errors import SpecParseError

ORDERS = ("lex", "grevlex")


class ParseError(SpecParseError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    kind: str
    variables: tuple

    def __post_init__(self):
        if self.kind not in ORDERS:
            raise ValueError(f"unknown monomial order {self.kind!r}; use one of {ORDERS}")
        object.__setattr__(self, "variables", tuple(self.variables))

    def key(self, exps):
        if self.kind == "lex":
            return exps
        return (sum(exps), tuple(-e for e in reversed(exps)))


def _coef(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        # exact binary value; callers wanting 1/3 should pass a Fraction
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational coefficient")


class RationalPolynomial:
    __slots__ = ("variables", "terms", "order")

    def __init__(self, variables=(), terms=None, order="grevlex"):
        self.variables = tuple(variables)
        self.order = order
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.variables):
                raise ValueError("exponent vector length does not match the variables")
            c = _coef(c)
            if c:
                clean[e] = c
        self.terms = clean

    # -- constructors ----------------------------------------------------------

    @classmethod
    def constant(cls, value, variables=(), order="grevlex"):
        return cls(variables, {(0,) * len(variables): value}, order)

    @classmethod
    def var(cls, name, variables=None, order="grevlex"):
        variables = tuple(variables) if variables is not None else (name,)
        e = tuple(1 if v == name else 0 for v in variables)
        if sum(e) != 1:
            raise ValueError(f"variable {name!r} not in {variables}")
        return cls(variables, {e: 1}, order)

    @classmethod
    def _raw(cls, variables, terms, order):
        p = cls.__new__(cls)
        p.variables, p.terms, p.order = variables, terms, order
        return p

    # -- variable handling -------------------------------------------------------

    def with_variables(self, variables):
        """Same polynomial over ``variables`` (must contain every variable in use)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        used = {self.variables[i] for e in self.terms for i, x in enumerate(e) if x}
        missing = used - pos.keys()
        if missing:
            raise ValueError(f"variables {sorted(missing)} missing from {variables}")
        idx = [pos.get(v) for v in self.variables]
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for i, x in enumerate(e):
                if x:
                    new[idx[i]] = x
            terms[tuple(new)] = c
        return RationalPolynomial._raw(variables, terms, self.order)

    def in_order(self, order):
        p = self.with_variables(order.variables)
        return RationalPolynomial._raw(p.variables, p.terms, order.kind)

    def monomial_order(self):
        return MonomialOrder(self.order, self.variables)

    def used_variables(self):
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms))

    def _lift(self, other):
        if not isinstance(other, RationalPolynomial):
            other = RationalPolynomial.constant(other, self.variables, self.order)
        if other.variables == self.variables:
            return self, other
        merged = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(merged), other.with_variables(merged)

    # -- queries -----------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self, order=None):
        order = order or self.monomial_order()
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading(self, order=None):
        """``(exponents, coefficient)`` of the leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        order = order or self.monomial_order()
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def monic(self, order=None):
        _, c = self.leading(order)
        return self * (1 / c)

    def evaluate(self, values):
        """Value at ``values`` (dict name -> number); exact when all inputs are rational."""
        xs = [values[v] for v in self.variables]
        exact = all(isinstance(x, (int, Fraction)) for x in xs)
        total = Fraction(0) if exact else 0.0
        for e, c in self.terms.items():
            term = c if exact else float(c)
            for x, k in zip(xs, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def substitute(self, values):
        """Replace some variables by numbers; the others are kept."""
        keep = tuple(v for v in self.variables if v not in values)
        idx = [i for i, v in enumerate(self.variables) if v not in values]
        terms = {}
        for e, c in self.terms.items():
            coef = c
            for i, v in enumerate(self.variables):
                if v in values and e[i]:
                    coef *= _coef(values[v]) ** e[i]
            k = tuple(e[i] for i in idx)
            terms[k] = terms.get(k, Fraction(0)) + coef
        return RationalPolynomial(keep, terms, self.order)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        a, b = self._lift(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return RationalPolynomial._raw(a.variables, terms, a.order)

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial._raw(self.variables, {e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalPolynomial) else -_coef(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalPolynomial):
            c = _coef(other)
            if not c:
                return RationalPolynomial._raw(self.variables, {}, self.order)
            return RationalPolynomial._raw(self.variables, {e: v * c for e, v in self.terms.items()}, self.order)
        a, b = self._lift(other)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return RationalPolynomial._raw(a.variables, {e: c for e, c in terms.items() if c}, a.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RationalPolynomial):
            raise TypeError("polynomial division is not closed; use normal_form")
        return self * (1 / _coef(other))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = RationalPolynomial.constant(1, self.variables, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, RationalPolynomial):
            try:
                other = RationalPolynomial.constant(other, self.variables, self.order)
            except TypeError:
                return NotImplemented
        a, b = self._lift(other)
        return a.terms == b.terms

    def __hash__(self):
        used = self.used_variables()
        p = self.with_variables(tuple(sorted(used)))
        return hash(frozenset(p.terms.items()))

    # -- printing ----------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"RationalPolynomial({str(self)!r}, variables={self.variables})"


# -- parsing ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif name is not None:
            toks.append(("name", name))
        elif op in "+-*^/()":
            toks.append(("op", op))
        else:
            raise ParseError(f"unexpected character {op!r} at position {m.start(3)}")
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, toks, variables, order):
        self.toks, self.i = toks, 0
        self.variables, self.order = variables, order

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            got = "end of input" if tok[0] is None else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def expr(self):
        out = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            out = out * self.unary()
        return out

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek() == ("op", "^"):
            self.take()
            return base ** self.take("num")[1]
        return base

    def primary(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            if self.peek() == ("op", "/"):
                self.take()
                den = self.take("num")[1]
                if den == 0:
                    raise ParseError("zero denominator in rational literal")
                return RationalPolynomial.constant(Fraction(val, den), self.variables, self.order)
            return RationalPolynomial.constant(val, self.variables, self.order)
        if kind == "name":
            self.take()
            return RationalPolynomial.var(val, self.variables, self.order)
        if (kind, val) == ("op", "("):
            self.take()
            out = self.expr()
            self.take("op", ")")
            return out
        raise ParseError(f"unexpected {'end of input' if kind is None else repr(val)}")


def poly_parse(text, variables=None, order="grevlex"):
    """Parse ``text`` into a polynomial.

    Grammar: identifiers, integer and ``p/q`` literals, ``+ - * ^`` and
    parentheses. Without ``variables`` the identifiers are taken in sorted order.
    """
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial text")
    names = sorted({v for k, v in toks if k == "name"})
    if variables is None:
        variables = tuple(names)
    else:
        variables = tuple(variables)
        unknown = set(names) - set(variables)
        if unknown:
            raise ParseError(f"unknown variables {sorted(unknown)}")
    p = _Parser(toks, variables, order)
    out = p.expr()
    if p.i != len(toks):
        raise ParseError(f"trailing input at token {p.toks[p.i][1]!r}")
    return out


def as_polynomial(x, variables=(), order="grevlex"):
    if isinstance(x, RationalPolynomial):
        return x
    if isinstance(x, str):
        return poly_parse(x, None, order)
    return RationalPolynomial.constant(x, variables, order)
