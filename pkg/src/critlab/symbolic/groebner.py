"""Multivariate division and Buchberger's algorithm."""
from __future__ import annotations

from dataclasses import dataclass

from .polynomial import MonomialOrder, RationalPolynomial

MAX_BASIS = 2000
MAX_DEGREE = 40


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _order_for(polys, order):
    if isinstance(order, MonomialOrder):
        return order
    names = []
    for p in polys:
        names += [v for v in p.variables if v not in names]
    return MonomialOrder(order, tuple(sorted(names)))


def _term_sub(p, e, c, g, ge, gc):
    """``p - (c/gc) x^(e-ge) g`` in place on the term dict ``p``."""
    shift = tuple(x - y for x, y in zip(e, ge))
    q = c / gc
    for ee, cc in g.terms.items():
        k = tuple(x + y for x, y in zip(ee, shift))
        v = p.get(k, 0) - q * cc
        if v:
            p[k] = v
        else:
            p.pop(k, None)


def normal_form(f, G, order="grevlex"):
    """Remainder of ``f`` on division by the list ``G``.

    At each step the first element of ``G`` (in list order) whose leading
    monomial divides the current leading monomial is used, so the result is
    reproducible for a given list.
    """
    order = _order_for([f, *G], order)
    f = f.in_order(order)
    divs = []
    for g in G:
        g = g.in_order(order)
        if g.is_zero():
            continue
        ge, gc = g.leading(order)
        divs.append((g, ge, gc))
    p = dict(f.terms)
    rem = {}
    key = order.key
    while p:
        e = max(p, key=key)
        c = p[e]
        for g, ge, gc in divs:
            if _divides(ge, e):
                _term_sub(p, e, c, g, ge, gc)
                break
        else:
            rem[e] = c
            del p[e]
    return RationalPolynomial._raw(order.variables, rem, order.kind)


def s_polynomial(f, g, order):
    fe, fc = f.leading(order)
    ge, gc = g.leading(order)
    m = _lcm(fe, ge)
    mf = RationalPolynomial._raw(order.variables, {tuple(x - y for x, y in zip(m, fe)): 1 / fc}, order.kind)
    mg = RationalPolynomial._raw(order.variables, {tuple(x - y for x, y in zip(m, ge)): 1 / gc}, order.kind)
    return mf * f - mg * g


@dataclass(frozen=True)
class GroebnerResult:
    basis: tuple
    order: MonomialOrder

    @property
    def ok(self):
        return True

    def reduce(self, f):
        return normal_form(f, list(self.basis), self.order)

    def contains(self, f):
        return self.reduce(f).is_zero()


@dataclass(frozen=True)
class Aborted:
    reason: str
    basis_size: int

    @property
    def ok(self):
        return False


def _reduce_basis(G, order):
    G = [g.monic(order) for g in G if not g.is_zero()]
    lead = [g.leading(order)[0] for g in G]
    keep = []
    for i, g in enumerate(G):
        drop = False
        for j in range(len(G)):
            if j == i or not _divides(lead[j], lead[i]):
                continue
            # equal leading monomials: keep the earliest one
            if lead[j] != lead[i] or j < i:
                drop = True
                break
        if not drop:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        r = normal_form(g, keep[:i] + keep[i + 1:], order)
        out.append(r.monic(order))
    out.sort(key=lambda g: order.key(g.leading(order)[0]), reverse=True)
    return tuple(out)


def buchberger(G, order="grevlex", max_basis=MAX_BASIS, max_degree=MAX_DEGREE):
    """Reduced Groebner basis of the ideal generated by ``G``, or ``Aborted``.

    Pairs are processed by the normal strategy (smallest lcm first) and
    skipped by Buchberger's coprime and chain criteria.
    """
    order = _order_for(G, order)
    basis = [g.in_order(order) for g in G if not g.is_zero()]
    if not basis:
        return GroebnerResult((), order)
    lead = [g.leading(order)[0] for g in basis]
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    done = set()
    key = order.key
    while pairs:
        i, j = min(pairs, key=lambda p: (key(_lcm(lead[p[0]], lead[p[1]])), p))
        pairs.discard((i, j))
        done.add((i, j))
        li, lj = lead[i], lead[j]
        m = _lcm(li, lj)
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue
        if any(k not in (i, j) and _divides(lead[k], m)
               and (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done
               for k in range(len(basis))):
            continue
        r = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if r.is_zero():
            continue
        if r.degree() > max_degree:
            return Aborted(f"degree {r.degree()} exceeds max_degree={max_degree}", len(basis))
        if len(basis) + 1 > max_basis:
            return Aborted(f"basis would exceed max_basis={max_basis}", len(basis))
        basis.append(r)
        lead.append(r.leading(order)[0])
        n = len(basis) - 1
        pairs |= {(k, n) for k in range(n)}
    return GroebnerResult(_reduce_basis(basis, order), order)
