"""Exact version of the curvature -> critical tensor pipeline.

Bracket templates are lists ``(i, j, k, value)`` with 1-based indices, as in
the numeric path; ``value`` may be a number, a polynomial or polynomial text.
Every step below copies the corresponding numpy contraction of
``critlab.curvature`` index for index.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .. import catalog
from ..errors import NotSymbolicallyVerifiable
from .groebner import buchberger, normal_form
from .polynomial import MonomialOrder, RationalPolynomial, as_polynomial, poly_parse


def _template_variables(brackets):
    names = set()
    for *_, v in brackets:
        if isinstance(v, RationalPolynomial):
            names |= set(v.used_variables())
        elif isinstance(v, str):
            names |= set(poly_parse(v).variables)
    return tuple(sorted(names))


def structure_tensor(brackets, dim=None, variables=None):
    """Antisymmetric ``c[i][j][k]`` (0-based) of polynomials."""
    if variables is None:
        variables = _template_variables(brackets)
    n = dim or max(max(i, j, k) for i, j, k, _ in brackets)
    zero = RationalPolynomial.constant(0, variables)
    c = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i, j, k, v in brackets:
        p = as_polynomial(v).with_variables(variables)
        c[i - 1][j - 1][k - 1] = c[i - 1][j - 1][k - 1] + p
        c[j - 1][i - 1][k - 1] = c[j - 1][i - 1][k - 1] - p
    return c, variables


def _sum(terms, zero):
    out = zero
    for t in terms:
        if t:
            out = out + t
    return out


def _prod(a, b, zero):
    return a * b if a and b else zero


@dataclass
class SymbolicCurvature:
    dim: int
    variables: tuple
    gamma: list = field(repr=False)
    riem: list = field(repr=False)
    ric: list = field(repr=False)
    tau: RationalPolynomial = None
    lap_ric: list = field(default=None, repr=False)
    r_of_ric: list = field(default=None, repr=False)
    ric_sq: RationalPolynomial = None


def symbolic_curvature(brackets, dim=None, variables=None):
    c, variables = structure_tensor(brackets, dim, variables)
    n = len(c)
    zero = RationalPolynomial.constant(0, variables)
    half = Fraction(1, 2)
    R = range(n)
    # Koszul: gamma[i,j,k] = (c[i,j,k] - c[j,k,i] + c[k,i,j]) / 2
    gamma = [[[(c[i][j][k] - c[j][k][i] + c[k][i][j]) * half for k in R] for j in R] for i in R]
    # riem[i,j,k,l] = sum_m gamma[j,k,m] gamma[i,m,l] - gamma[i,k,m] gamma[j,m,l] - c[i,j,m] gamma[m,k,l]
    riem = [[[[_sum((_prod(gamma[j][k][m], gamma[i][m][l], zero)
                     - _prod(gamma[i][k][m], gamma[j][m][l], zero)
                     - _prod(c[i][j][m], gamma[m][k][l], zero) for m in R), zero)
               for l in R] for k in R] for j in R] for i in R]
    ric = [[_sum((riem[k][i][j][k] for k in R), zero) for j in R] for i in R]
    tau = _sum((ric[i][i] for i in R), zero)
    # nric[i,j,k] = -(sum_m gamma[i,j,m] ric[m,k] + gamma[i,k,m] ric[j,m])
    nric = [[[-_sum((_prod(gamma[i][j][m], ric[m][k], zero) + _prod(gamma[i][k][m], ric[j][m], zero)
                     for m in R), zero) for k in R] for j in R] for i in R]
    lap = [[-_sum((_prod(gamma[a][a][m], nric[m][j][k], zero)
                   + _prod(gamma[a][j][m], nric[a][m][k], zero)
                   + _prod(gamma[a][k][m], nric[a][j][m], zero) for a in R for m in R), zero)
            for k in R] for j in R]
    rr = [[_sum((_prod(riem[k][i][j][l], ric[k][l], zero) for k in R for l in R), zero)
           for j in R] for i in R]
    ric_sq = _sum((_prod(ric[i][j], ric[i][j], zero) for i in R for j in R), zero)
    return SymbolicCurvature(n, variables, gamma, riem, ric, tau, lap, rr, ric_sq)


def symbolic_critical_pair(brackets, dim=None, variables=None):
    """``(A, B)`` as ``n x n`` lists of polynomials with ``F_t = A + t B``."""
    s = symbolic_curvature(brackets, dim, variables)
    n = s.dim
    two_n = Fraction(2, n)
    tau_sq = s.tau * s.tau
    A, B = [], []
    for i in range(n):
        arow, brow = [], []
        for j in range(n):
            a = -s.lap_ric[i][j] - 2 * s.r_of_ric[i][j]
            b = -2 * s.tau * s.ric[i][j]
            if i == j:
                a = a + two_n * s.ric_sq
                b = b + two_n * tau_sq
            arow.append(a)
            brow.append(b)
        A.append(arow)
        B.append(brow)
    return A, B


def symbolic_jacobiator(brackets, dim=None):
    """Nonzero components ``((i, j, k, m), poly)`` of the Jacobiator, 1-based."""
    c, variables = structure_tensor(brackets, dim)
    n = len(c)
    zero = RationalPolynomial.constant(0, variables)
    out = []
    for i, j, k in itertools.combinations(range(n), 3):
        for m in range(n):
            v = _sum((_prod(c[i][j][l], c[l][k][m], zero) + _prod(c[j][k][l], c[l][i][m], zero)
                      + _prod(c[k][i][l], c[l][j][m], zero) for l in range(n)), zero)
            if v:
                out.append(((i + 1, j + 1, k + 1, m + 1), v))
    return out


# -- family proofs -------------------------------------------------------------------

def _p(text):
    return poly_parse(text)


@dataclass(frozen=True)
class SymbolicTemplate:
    brackets: list
    numerator: str
    denominator: str
    constraints: tuple = ()
    note: str = ""


def _templates():
    a, d, f, p, s, D = (_p(v) for v in "adfpsD")
    return {
        "H.1": SymbolicTemplate(catalog.h_template(1, 0, 0, 0, 0, 0), "-3", "1"),
        "H.2": SymbolicTemplate(catalog.h_template(1, a, 0, d, 0, 0), "-3", "2*(4*a*d+5)",
                                ("4*(a^2+d^2+a*d)-3",)),
        "H.3": SymbolicTemplate([(1, 2, 3, 1), (2, 4, 1, -1)], "-3", "2"),
        "H.4": SymbolicTemplate(catalog.h_template(1, a, 0, a, 0, 0), "-3*(4*a^2+1)", "44*a^2+1"),
        "R.1": SymbolicTemplate(catalog.r_template(1, 0, -1, 0, 1, 0), "-3", "1"),
        "R.2": SymbolicTemplate(catalog.r_template(1, -1, 0, 0, s, s), "-3", "2", ("2*s^2-1",),
                                "s stands for 1/sqrt(2)"),
        "R.3": SymbolicTemplate(catalog.r_template(1, f, p, 0, 0, 0), "-(f^2+p^2+1)",
                                "2*(f^2+p^2+f*p+f+p+1)"),
        "E.1": SymbolicTemplate(catalog.e_template(1, -1, 0, 0, 0, 0), "-1", "1"),
        "E.3": SymbolicTemplate(catalog.e_template(1, 1, 0, 1, 0, D), "-(3*D^2+4)", "D^2+12"),
    }


SYMBOLIC_FAMILIES = ("H.1", "H.2", "H.3", "H.4", "R.1", "R.2", "R.3", "E.1", "E.3")


@dataclass
class ProofRecord:
    family: str
    variables: tuple
    constraints: tuple
    basis: tuple
    numerator: str
    denominator: str
    components: list
    identically_zero: bool
    seconds: float
    note: str = ""

    @property
    def passed(self):
        return all(r == "0" for _, _, r in self.components)

    def as_dict(self):
        return {"family": self.family, "variables": list(self.variables),
                "constraints": list(self.constraints), "basis": list(self.basis),
                "t": f"({self.numerator})/({self.denominator})",
                "identically_zero": self.identically_zero, "passed": self.passed,
                "nonzero_remainders": [(i, j, r) for i, j, r in self.components if r != "0"],
                "note": self.note}


def verify_identity(brackets, numerator, denominator, constraints=(), label="", note=""):
    """Check ``D A + N B = 0`` modulo ``constraints`` for ``t = N / D``.

    The constraints are first replaced by their reduced grevlex Groebner basis,
    so a zero remainder is an ideal-membership certificate.
    """
    start = time.perf_counter()
    A, B = symbolic_critical_pair(brackets, dim=4)
    N, Den = _p(numerator), _p(denominator)
    cons = [_p(x) for x in constraints]
    names = set()
    for poly in [N, Den, *cons] + [x for row in A + B for x in row]:
        names |= set(poly.used_variables())
    order = MonomialOrder("grevlex", tuple(sorted(names)))
    basis = buchberger(cons, order).basis if cons else ()
    comps = []
    zero_before = True
    for i in range(4):
        for j in range(i, 4):
            expr = (Den * A[i][j] + N * B[i][j]).with_variables(order.variables)
            if expr:
                zero_before = False
            r = normal_form(expr, list(basis), order) if basis else expr
            comps.append((i + 1, j + 1, str(r)))
    return ProofRecord(label, order.variables, tuple(constraints), tuple(str(g) for g in basis),
                       numerator, denominator, comps, zero_before,
                       time.perf_counter() - start, note)


def verify_family_symbolically(fid):
    """Exact proof record for a catalog family with rational data."""
    spec = catalog.get_family(fid)
    fid = spec.alias_of or spec.id
    tpl = _templates().get(fid)
    if tpl is None:
        raise NotSymbolicallyVerifiable(
            f"{fid} has irrational or implicit constraint data; it is verified numerically only")
    return verify_identity(tpl.brackets, tpl.numerator, tpl.denominator, tpl.constraints, fid, tpl.note)


def symbolic_template(fid):
    """The exact bracket template and ``t = N / D`` used for ``fid``."""
    tpl = _templates().get(fid)
    if tpl is None:
        raise NotSymbolicallyVerifiable(f"no exact template for {fid}")
    return tpl
