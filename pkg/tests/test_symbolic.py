import random
from fractions import Fraction

import numpy as np
import pytest

from critlab import catalog
from critlab.algebra import MetricLieAlgebra
from critlab.criticality import split_affine
from critlab.curvature import curvature_package
from critlab.errors import NotSymbolicallyVerifiable
from critlab.symbolic import (
    SYMBOLIC_FAMILIES,
    Aborted,
    MonomialOrder,
    ParseError,
    RationalPolynomial,
    buchberger,
    normal_form,
    poly_parse,
    symbolic_critical_pair,
    symbolic_curvature,
    symbolic_jacobiator,
    symbolic_template,
    verify_family_symbolically,
    verify_identity,
)

P = poly_parse


# -- polynomials -------------------------------------------------------------------

def test_parse_examples():
    g = P("4*(a^2+d^2+a*d)-3")
    assert g.used_variables() == ("a", "d")
    assert str(g) == "4*a^2 + 4*a*d + 4*d^2 - 3"
    assert P("0").is_zero()
    assert P("(a-f)*(a-f)") == P("a^2 - 2*a*f + f^2")
    assert P("3/4*x - -2") == P("2 + 3/4 * x")
    assert P(" - x ^ 2 ") == -P("x^2")


@pytest.mark.parametrize("text", ["", "a +", "2 ** 3", "1/0", "a/b", "(a", "a $ b", "a^-1", "a b"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        P(text)


def test_printing_round_trips():
    rng = random.Random(5)
    for _ in range(30):
        terms = {(rng.randint(0, 3), rng.randint(0, 2), rng.randint(0, 2)): Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                 for _ in range(4)}
        p = RationalPolynomial(("x", "y", "z"), terms)
        assert P(str(p), ("x", "y", "z")) == p


def test_arithmetic_and_orders():
    x, y = P("x"), P("y")
    assert (x + y) ** 3 == P("x^3 + 3*x^2*y + 3*x*y^2 + y^3")
    assert (x - x).is_zero() and (x * 0).is_zero()
    assert (2 * x) / 4 == P("1/2*x")
    lex = MonomialOrder("lex", ("x", "y", "z"))
    grev = MonomialOrder("grevlex", ("x", "y", "z"))
    f = P("x*z^2 + y^3 + x^2")
    assert f.leading(lex)[0] == (2, 0, 0)
    # grevlex: degree first, then the smallest power of the last variable wins
    assert f.leading(grev)[0] == (0, 3, 0)
    with pytest.raises(ValueError):
        MonomialOrder("deglex", ("x",))


def test_evaluate_and_substitute():
    f = P("a^2*d - 1/3")
    assert f.evaluate({"a": Fraction(1, 2), "d": 3}) == Fraction(5, 12)
    assert f.substitute({"a": 2}) == P("4*d - 1/3")
    assert isinstance(f.evaluate({"a": 0.5, "d": 3.0}), float)


# -- normal forms and bases -------------------------------------------------------

G_H2 = P("4*(a^2+d^2+a*d)-3")


def test_normal_form_examples():
    assert normal_form(G_H2, [G_H2]).is_zero()
    lex = MonomialOrder("lex", ("a", "d"))
    assert normal_form(P("a^2+d^2"), [G_H2], lex) == P("-a*d + 3/4")
    assert normal_form(P("1"), [G_H2]) == P("1")


def _ellipse_points(n, rng):
    # rational points of a^2 + a d + d^2 = 3/4 via lines through (1/2, 1/2)
    out = []
    while len(out) < n:
        m = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        den = 1 + m + m * m
        # substitute a = 1/2 + s, d = 1/2 + m s: s (3/2 (1+m) + s (1+m+m^2)) = 0
        s = -Fraction(3, 2) * (1 + m) / den
        out.append({"a": Fraction(1, 2) + s, "d": Fraction(1, 2) + m * s})
    return out


def test_membership_soundness_and_idempotence():
    rng = random.Random(9)
    pts = _ellipse_points(100, rng)
    assert all(G_H2.evaluate(p) == 0 for p in pts)
    for _ in range(10):
        f = RationalPolynomial(("a", "d"), {(rng.randint(0, 4), rng.randint(0, 4)): rng.randint(-5, 5) for _ in range(5)})
        r = normal_form(f, [G_H2])
        assert normal_form(r, [G_H2]) == r
        diff = f - r
        assert all(diff.evaluate(p) == 0 for p in pts)


def test_buchberger_examples():
    lex = MonomialOrder("lex", ("x",))
    res = buchberger([P("x^2-1"), P("x-1")], lex)
    assert [str(g) for g in res.basis] == ["x - 1"]
    assert [str(g) for g in buchberger([P("3*t+1")]).basis] == ["t + 1/3"]
    o = MonomialOrder("lex", ("z", "y", "x"))
    res = buchberger([P("y-x^2"), P("z-x^3")], o)
    assert res.ok and res.contains(P("y^3-z^2"))
    # random-point oracle on the twisted cubic (x, x^2, x^3)
    for k in range(1, 6):
        x = Fraction(k, 3)
        assert P("y^3-z^2").evaluate({"x": x, "y": x ** 2, "z": x ** 3}) == 0


def test_buchberger_is_reduced_and_stable():
    gens = [P("x^2*y - 1"), P("x*y^2 - x")]
    a = buchberger(gens, "grevlex")
    b = buchberger(list(gens), "grevlex")
    assert a.basis == b.basis
    for g in gens:
        assert a.contains(g)
    order = a.order
    leads = [g.leading(order) for g in a.basis]
    assert all(c == 1 for _, c in leads)
    for i, g in enumerate(a.basis):
        others = [h for j, h in enumerate(a.basis) if j != i]
        assert normal_form(g, others, order) == g


def test_buchberger_aborts_gracefully():
    gens = [P(t, ("x", "y", "z")) for t in ("x^2*y - z^2", "x*z^2 - y^2", "y*z^3 - x^2")]
    full = buchberger(gens, "grevlex")
    assert full.ok and len(full.basis) == 8
    res = buchberger(gens, "grevlex", max_basis=4)
    assert isinstance(res, Aborted) and not res.ok and "max_basis" in res.reason
    res = buchberger(gens, "grevlex", max_degree=3)
    assert isinstance(res, Aborted) and "max_degree" in res.reason


# -- symbolic pipeline --------------------------------------------------------------

def test_abelian_template_vanishes():
    A, B = symbolic_critical_pair([], dim=4)
    assert all(x.is_zero() for row in A + B for x in row)


def test_r3_diagonal_b44():
    a, f, p = P("a"), P("f"), P("p")
    s = symbolic_curvature(catalog.r_template(a, f, p, 0, 0, 0), dim=4)
    tau = P("-2*(a^2+f^2+p^2+a*f+a*p+f*p)")
    assert s.tau == tau
    _, B = symbolic_critical_pair(catalog.r_template(a, f, p, 0, 0, 0), dim=4)
    assert B[3][3] == Fraction(1, 2) * tau * tau - 2 * tau * s.ric[3][3]


def test_heisenberg_times_line_identity_in_gamma():
    A, B = symbolic_critical_pair([(1, 2, 3, P("gamma"))], dim=4)
    assert all((A[i][j] - 3 * B[i][j]).is_zero() for i in range(4) for j in range(4))
    assert A[2][2] == P("15/8*gamma^4")


def _float_pair(brackets):
    c = np.zeros((4, 4, 4))
    for i, j, k, v in brackets:
        c[i - 1, j - 1, k - 1] += v
        c[j - 1, i - 1, k - 1] -= v
    return split_affine(curvature_package(MetricLieAlgebra(4, c)))


@pytest.mark.parametrize("builder", [catalog.r_template, catalog.h_template, catalog.e_template, catalog.ns_brackets])
def test_exact_and_float_pipelines_agree(builder):
    names = ("u1", "u2", "u3", "u4", "u5", "u6")
    A, B = symbolic_critical_pair(builder(*(P(v) for v in names)), dim=4)
    rng = random.Random(13)
    for _ in range(5):
        vals = {v: Fraction(rng.randint(-20, 20), rng.randint(1, 10)) for v in names}
        af, bf = _float_pair(builder(*(float(vals[v]) for v in names)))
        scale = max(1.0, float(np.max(np.abs(af))), float(np.max(np.abs(bf))))
        for i in range(4):
            for j in range(4):
                assert abs(float(A[i][j].evaluate(vals)) - af[i, j]) <= 1e-12 * scale
                assert abs(float(B[i][j].evaluate(vals)) - bf[i, j]) <= 1e-12 * scale


def test_jacobi_holds_identically_on_templates():
    names = [P(v) for v in ("a", "f", "p", "b", "c", "h")]
    assert symbolic_jacobiator(catalog.r_template(*names)) == []
    assert symbolic_jacobiator(catalog.h_template(*names)) == []
    assert symbolic_jacobiator(catalog.e_template(*names)) == []
    bad = symbolic_jacobiator([(1, 2, 2, 1), (1, 3, 3, 1), (2, 3, 1, 1)])
    assert bad and bad[0][0] == (1, 2, 3, 1)


# -- family proofs ------------------------------------------------------------------

@pytest.mark.parametrize("fid", SYMBOLIC_FAMILIES)
def test_family_proofs(fid):
    rec = verify_family_symbolically(fid)
    assert rec.passed, rec.as_dict()["nonzero_remainders"]


def test_proof_details():
    assert verify_family_symbolically("R.3").identically_zero
    h2 = verify_family_symbolically("H.2")
    assert not h2.identically_zero and h2.basis == ("a^2 + a*d + d^2 - 3/4",)
    assert verify_family_symbolically("SOLV.4").family == "H.2"


def test_wrong_t_is_rejected():
    tpl = symbolic_template("H.4")
    assert not verify_identity(tpl.brackets, "-3", "44*a^2+1").passed
    tpl = symbolic_template("H.2")
    assert not verify_identity(tpl.brackets, tpl.numerator, tpl.denominator, ()).passed


@pytest.mark.parametrize("fid", ["H.5", "R.5", "E.2", "SYM.1"])
def test_not_symbolically_verifiable(fid):
    with pytest.raises(NotSymbolicallyVerifiable):
        verify_family_symbolically(fid)
