"""The classified critical metrics as parameterized families.

Every family knows its parameter domain, how to solve for the dependent
parameters, the brackets (or, for symmetric spaces, the analytic curvature
package), the closed-form critical ``t`` and energy, and whether it is an
algebraic Ricci soliton.

Family ids:

* ``SYM.1``-``SYM.5``  symmetric spaces (curvature packages, not brackets)
* ``NS.1``             ``R x N^3`` realized on ``SU(2) x R``
* ``E.1``-``E.5``      extensions of ``E(1,1)`` and ``E(2)``
* ``H.1``-``H.6``      extensions of the Heisenberg group
* ``R.1``-``R.7``      extensions of ``R^3``
* ``SOLV.1``-``SOLV.4`` solvsolitons, stored as aliases of ``R.1``, ``R.2``,
  ``R.3`` and ``H.2``
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .algebra import LinearMap, change_basis, jacobi_defect, new_metric_lie_algebra, scale_structure
from .criticality import CRIT_TOL, Kind, critical_tensor, energy, solve_critical_t
from .curvature import (
    complex_space_form_package,
    curvature_package,
    line_times_spaceform_package,
    product_surfaces_package,
    space_form_package,
)
from .errors import NoRoot, OutOfDomain, UnknownFamily
from .soliton import algebraic_soliton_check

SQRT3 = math.sqrt(3.0)
SQRT21 = math.sqrt(21.0)
SQRT33 = math.sqrt(33.0)
OPEN_MARGIN = 1e-6


def _polish_root(poly, lo, hi):
    """Root of ``poly`` (highest degree first) bracketed in ``[lo, hi]``."""
    f = np.poly1d(poly)
    df = f.deriv()
    if f(lo) * f(hi) > 0:
        raise NoRoot(f"no sign change of {list(poly)} on [{lo}, {hi}]")
    x = brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    for _ in range(3):
        d = df(x)
        if d == 0:
            break
        step = f(x) / d
        if not lo <= x - step <= hi:
            break
        x -= step
    return float(x)


# zeta: the real root of 8p^3+15p^2+3p+1; theta: the real root of 192p^3+1152p^2+1865p+923
ZETA = _polish_root([8, 15, 3, 1], -2.0, -1.5)
THETA = _polish_root([192, 1152, 1865, 923], -4.0, -3.5)


@dataclass(frozen=True)
class Param:
    name: str
    lo: float
    hi: float
    lo_open: bool = True
    hi_open: bool = True
    # finite box used for sampling when the domain is unbounded
    sample_lo: float | None = None
    sample_hi: float | None = None

    def contains(self, x):
        if x < self.lo or x > self.hi:
            return False
        if self.lo_open and x == self.lo:
            return False
        if self.hi_open and x == self.hi:
            return False
        return True

    def sample(self, rng):
        lo = self.lo if self.sample_lo is None else self.sample_lo
        hi = self.hi if self.sample_hi is None else self.sample_hi
        lo = lo + OPEN_MARGIN if (self.lo_open and lo == self.lo) else lo
        hi = hi - OPEN_MARGIN if (self.hi_open and hi == self.hi) else hi
        return float(rng.uniform(lo, hi))


@dataclass(frozen=True)
class FamilySpec:
    id: str
    group: str
    params: tuple
    resolve: object = field(repr=False)
    build: object = field(repr=False)
    t_formula: object = field(repr=False)
    energy_formula: object = field(repr=False)
    soliton: bool | None
    zero_energy: bool
    t_range: str
    energy_range: str
    domain: str
    constraints: tuple = ()
    all_t: bool = False
    alias_of: str | None = None
    sampler: object = field(default=None, repr=False)

    @property
    def param_names(self):
        return tuple(p.name for p in self.params)

    @property
    def symmetric(self):
        return self.id.startswith("SYM")

    def as_dict(self):
        return {
            "id": self.id,
            "group": self.group,
            "parameters": list(self.param_names),
            "domain": self.domain,
            "constraints": list(self.constraints),
            "t_range": self.t_range,
            "energy_range": self.energy_range,
            "soliton": self.soliton,
            "zero_energy": self.zero_energy,
            "all_t": self.all_t,
            "alias_of": self.alias_of,
        }


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    params: dict
    metric: object = field(repr=False)
    expected_t: float | None
    expected_energy: float
    ref_t: float

    @property
    def is_package(self):
        return not hasattr(self.metric, "c")

    def package(self):
        return self.metric if self.is_package else curvature_package(self.metric)


# -- helpers ------------------------------------------------------------------

def _need(params, *names):
    missing = [n for n in names if n not in params]
    if missing:
        raise OutOfDomain(f"missing parameter(s): {', '.join(missing)}")
    return [float(params[n]) for n in names]


def _check(cond, msg):
    if not cond:
        raise OutOfDomain(msg)


def _mla(brackets, label):
    return new_metric_lie_algebra(4, [b for b in brackets if b[3] != 0.0], label=label)


def _positive_quadratic_roots(a2, a1, a0):
    """Positive roots of ``a2 x^2 + a1 x + a0``, increasing."""
    disc = a1 * a1 - 4 * a2 * a0
    if disc < 0:
        return []
    s = math.sqrt(disc)
    # numerically stable pair
    q = -0.5 * (a1 + math.copysign(s, a1)) if a1 != 0 else 0.5 * s
    roots = []
    if q != 0:
        roots += [q / a2, a0 / q]
    else:
        roots += [s / (2 * a2), -s / (2 * a2)]
    return sorted(r for r in roots if r > 0)


def _e_brackets(l1, l2, b, A=0.0, C=0.0, D=0.0):
    """Extensions of E(1,1) / E(2)."""
    return [
        (2, 3, 1, l1), (1, 3, 2, -l2),
        (1, 4, 1, b), (1, 4, 2, -l2 * A),
        (2, 4, 1, l1 * A), (2, 4, 2, b),
        (3, 4, 1, C), (3, 4, 2, D),
    ]


def _h_brackets(gamma, a, c, d, H=0.0, F=0.0):
    """Extensions of the Heisenberg algebra."""
    return [
        (1, 2, 3, gamma),
        (1, 4, 1, a), (1, 4, 2, -c), (1, 4, 3, H),
        (2, 4, 1, c), (2, 4, 2, d), (2, 4, 3, F),
        (3, 4, 3, a + d),
    ]


def _r_brackets(a, f, p, b=0.0, c=0.0, h=0.0):
    """Extensions of R^3."""
    return [
        (1, 4, 1, a), (1, 4, 2, b), (1, 4, 3, c),
        (2, 4, 1, -b), (2, 4, 2, f), (2, 4, 3, h),
        (3, 4, 1, -c), (3, 4, 2, -h), (3, 4, 3, p),
    ]


def ns_brackets(l1, l2, l3, k1=0.0, k2=0.0, k3=0.0):
    """``su(2)`` or ``sl(2)`` (Milnor frame) plus a line."""
    return [
        (2, 3, 1, l1), (1, 3, 2, -l2), (1, 2, 3, l3),
        (1, 4, 2, k3 * l2), (1, 4, 3, -k2 * l3),
        (2, 4, 3, k1 * l3), (2, 4, 1, -k3 * l1),
        (3, 4, 1, k2 * l1), (3, 4, 2, -k1 * l2),
    ]


def e_template(l1, l2, A, b, C, D):
    return _e_brackets(l1, l2, b, A, C, D)


def h_template(gamma, a, c, d, H, F):
    return _h_brackets(gamma, a, c, d, H, F)


def r_template(a, f, p, b, c, h):
    return _r_brackets(a, f, p, b, c, h)


# -- symmetric spaces ---------------------------------------------------------

_EINSTEIN_MODELS = ("real", "complex", "product")


def _sym1_resolve(p):
    kappa, = _need(p, "kappa")
    model = p.get("model", "real")
    _check(model in _EINSTEIN_MODELS, f"model must be one of {_EINSTEIN_MODELS}")
    _check(kappa != 0.0, "kappa must be nonzero")
    return {"model": model, "kappa": kappa}


def _sym1_build(r):
    k = r["kappa"]
    if r["model"] == "real":
        return space_form_package(k)
    if r["model"] == "complex":
        return complex_space_form_package(k)
    return product_surfaces_package(k, k)


def _sym1_tau(r):
    k = r["kappa"]
    return {"real": 12 * k, "complex": 6 * k, "product": 4 * k}[r["model"]]


def _sym1_sampler(rng, i):
    k = float(rng.uniform(0.2, 2.0)) * (1 if i % 2 == 0 else -1)
    return {"model": _EINSTEIN_MODELS[i % 3], "kappa": k}


def _nonzero_kappa(p):
    k, = _need(p, "kappa")
    _check(k != 0.0, "kappa must be nonzero")
    return {"kappa": k}


def _signed_sampler(rng, i):
    return {"kappa": float(rng.uniform(0.2, 2.0)) * (1 if i % 2 == 0 else -1)}


def _sym5_resolve(p):
    k1, k2 = _need(p, "kappa1", "kappa2")
    _check(k1 * k2 != 0.0, "kappa1 * kappa2 must be nonzero")
    _check(k1 * k1 != k2 * k2, "kappa1^2 must differ from kappa2^2")
    return {"kappa1": k1, "kappa2": k2}


def _sym5_sampler(rng, i):
    while True:
        k1, k2 = (float(x) for x in rng.uniform(-2.0, 2.0, size=2))
        if min(abs(k1), abs(k2)) > 0.1 and abs(abs(k1) - abs(k2)) > 0.1:
            return {"kappa1": k1, "kappa2": k2}


# -- NS -------------------------------------------------------------------------

def _ns1_resolve(p):
    lam, = _need(p, "lam")
    _check(lam != 0.0, "lambda must be nonzero")
    return {"lam": lam}


# -- E --------------------------------------------------------------------------

def _e2_resolve(p):
    lam, = _need(p, "lam")
    _check((-1 < lam < 0) or (0 < lam < 1), "lambda must lie in (-1,0) U (0,1)")
    branch = int(p.get("branch", 0))
    roots = _positive_quadratic_roots(4.0, -(3 * lam * lam - 2 * lam + 3), -(lam - 1) ** 2 * lam)
    expected = 2 if lam < 0 else 1
    if len(roots) != expected:
        raise NoRoot(f"E.2: expected {expected} positive roots for b^2, found {len(roots)}")
    _check(0 <= branch < len(roots), f"branch must be in 0..{len(roots) - 1} for lambda={lam}")
    return {"lam": lam, "branch": branch, "b": math.sqrt(roots[branch])}


def _e2_sampler(rng, i):
    lam = Param("lam", -1, 0).sample(rng) if i % 2 == 0 else Param("lam", 0, 1).sample(rng)
    return {"lam": lam, "branch": (i // 2) % 2 if lam < 0 else 0}


def _e3_resolve(p):
    D, = _need(p, "D")
    _check(D > 0, "D must be positive")
    return {"D": D}


def _e4_resolve(p):
    lam, = _need(p, "lam")
    _check(0 < lam < 1, "lambda must lie in (0,1)")
    roots = _positive_quadratic_roots(2.0, -(5 * lam * lam - lam - 2), lam * (lam - 1))
    if len(roots) != 1:
        raise NoRoot(f"E.4: expected one positive root for b^2, found {len(roots)}")
    return {"lam": lam, "b": math.sqrt(roots[0]), "D": math.sqrt(1 - lam * lam)}


def _e5_resolve(p):
    b, A = _need(p, "b", "A")
    _check(b > 0, "b must be positive")
    _check(A >= 0, "A must be nonnegative")
    _check(b * b - A * A != 1, "b^2 - A^2 must differ from 1")
    return {"b": b, "A": A}


def _e5_sampler(rng, i):
    while True:
        b = Param("b", 0, 2.5).sample(rng)
        A = float(rng.uniform(0.0, 2.5))
        if abs(b * b - A * A - 1) > 1e-3:
            return {"b": b, "A": A}


# -- H --------------------------------------------------------------------------

def _h2_resolve(p):
    a, = _need(p, "a")
    _check(-SQRT3 / 2 <= a < 0.5, "a must lie in [-sqrt(3)/2, 1/2)")
    d = 0.5 * (-a + math.sqrt(max(0.0, 3 - 3 * a * a)))
    _check(d > 0, "no positive d for this a")
    return {"a": a, "d": d}


def _h4_resolve(p):
    a, = _need(p, "a")
    _check(a > 0 and a != 0.5, "a must lie in (0,1/2) U (1/2,inf)")
    return {"a": a}


def _h4_sampler(rng, i):
    return {"a": Param("a", 0, 0.5).sample(rng) if i % 2 == 0 else Param("a", 0.5, 3.0).sample(rng)}


def _h5_resolve(p):
    c, = _need(p, "c")
    _check((0 < c < 0.5) or c > math.sqrt(7 / 8), "c must lie in (0,1/2) U (sqrt(7/8),inf)")
    c2 = c * c
    P = (9 - 8 * c2 - 32 * c2 * c2) / (32 * c2 - 28)
    ssum = (-4 * c2 - 10 * P) / 3
    S, Dd = ssum + 2 * P, ssum - 2 * P
    if S <= 0 or Dd <= 0 or P >= 0:
        raise NoRoot(f"H.5: no admissible (a, d) for c={c}")
    d = 0.5 * (math.sqrt(S) + math.sqrt(Dd))
    a = 0.5 * (math.sqrt(S) - math.sqrt(Dd))
    return {"c": c, "a": a, "d": d}


def _h5_sampler(rng, i):
    if i % 2 == 0:
        return {"c": Param("c", 0, 0.5).sample(rng)}
    return {"c": Param("c", math.sqrt(7 / 8), 3.0).sample(rng)}


def _h6_resolve(p):
    H, = _need(p, "H")
    _check(0 < H < math.sqrt(3 / 7), "H must lie in (0, sqrt(3/7))")
    h2 = H * H
    cubic = [4, 5 * (3 * h2 - 1), 18 * h2 * h2 + 6 * h2 + 13, (h2 + 1) ** 2 * (7 * h2 - 3)]
    # constant term < 0 and the cubic is increasing for X > 0: one positive root
    hi = 1.0
    while np.polyval(cubic, hi) < 0:
        hi *= 2
    X = _polish_root(cubic, 0.0, hi)
    d = math.sqrt(X)
    a = -(2 * X + 2 * h2 - 3) * d / (2 * (X + h2 + 1))
    return {"H": H, "a": a, "d": d}


# -- R --------------------------------------------------------------------------

_R3_EXCLUDED = {(0.0, 0.0), (0.0, 1.0), (1.0, 1.0)}


def _r3_resolve(p):
    f, pp = _need(p, "f", "p")
    _check(-1 <= f <= pp <= 1, "need -1 <= f <= p <= 1")
    _check(not (f == -1 and pp < 0), "f = -1 requires p >= 0")
    _check((f, pp) not in _R3_EXCLUDED, f"(f,p)=({f},{pp}) is excluded")
    return {"f": f, "p": pp}


def _r3_sampler(rng, i):
    while True:
        f, pp = sorted(float(x) for x in rng.uniform(-1.0, 1.0, size=2))
        if min(abs(f), abs(pp), abs(pp - 1), abs(f - pp)) > 1e-3:
            return {"f": f, "p": pp}


def _r4_resolve(p):
    k, = _need(p, "kappa")
    _check(k > SQRT3 / 2, "kappa must exceed sqrt(3)/2")
    k2 = k * k
    return {"kappa": k, "h": math.sqrt(k2 * (4 * k2 + 3) / (4 * k2 - 3))}


def _r5_resolve(p):
    pp, = _need(p, "p")
    _check((ZETA < pp < -1) or ((1 - SQRT21) / 10 < pp < 0),
           "p must lie in (zeta,-1) U ((1-sqrt(21))/10, 0)")
    den = (pp + 2) * (5 * pp * pp - pp - 1)
    c2 = -(2 * pp + 1) * (8 * pp ** 3 + 15 * pp ** 2 + 3 * pp + 1) / den
    h2 = (pp + 1) * (pp - 1) * (5 * pp ** 3 + 12 * pp ** 2 + 1) / den
    if c2 <= 0 or h2 <= 0:
        raise NoRoot(f"R.5: c^2={c2}, h^2={h2} not both positive at p={pp}")
    return {"p": pp, "c": math.sqrt(c2), "h": math.sqrt(h2)}


def _r5_sampler(rng, i):
    if i % 2 == 0:
        return {"p": Param("p", ZETA, -1).sample(rng)}
    return {"p": Param("p", (1 - SQRT21) / 10, 0).sample(rng)}


def _r6_resolve(p):
    h, = _need(p, "h")
    _check(h > 0, "h must be positive")
    roots = _positive_quadratic_roots(36.0, -24.0, -5.0 - 36 * h * h)
    return {"h": h, "f": roots[-1]}


def _r7_resolve(p):
    b, = _need(p, "b")
    _check(b > 0, "b must be positive")
    roots = _positive_quadratic_roots(9.0, -6.0, -8.0 - 18 * b * b)
    return {"b": b, "a": roots[-1]}


def _no_params(p):
    return {}


def _const(x):
    return lambda r: x


def _zero_energy(r, t):
    return 0.0


_FAMILIES = [
    # symmetric spaces
    FamilySpec(
        "SYM.1", "symmetric", (Param("kappa", -math.inf, math.inf),), _sym1_resolve, _sym1_build,
        None, lambda r, t: _sym1_tau(r) ** 2 * (0.25 + t),
        None, True, "all t", "tau^2 (1/4 + t)", "kappa != 0; model in {real, complex, product}",
        all_t=True, sampler=_sym1_sampler),
    FamilySpec(
        "SYM.2", "symmetric", (Param("kappa", -math.inf, math.inf),), _nonzero_kappa,
        lambda r: line_times_spaceform_package(1, r["kappa"]),
        _const(-1 / 3), _zero_energy, None, True, "{-1/3}", "0", "kappa != 0",
        sampler=_signed_sampler),
    FamilySpec(
        "SYM.3", "symmetric", (Param("kappa", -math.inf, math.inf),), _nonzero_kappa,
        lambda r: line_times_spaceform_package(2, r["kappa"]),
        _const(-1 / 2), _zero_energy, None, True, "{-1/2}", "0", "kappa != 0",
        sampler=_signed_sampler),
    FamilySpec(
        "SYM.4", "symmetric", (Param("kappa", -math.inf, math.inf),), _nonzero_kappa,
        lambda r: product_surfaces_package(r["kappa"], -r["kappa"]),
        None, lambda r, t: 4 * r["kappa"] ** 2, None, False, "all t", "4 kappa^2", "kappa != 0",
        all_t=True, sampler=_signed_sampler),
    FamilySpec(
        "SYM.5", "symmetric", (Param("kappa1", -math.inf, math.inf), Param("kappa2", -math.inf, math.inf)),
        _sym5_resolve, lambda r: product_surfaces_package(r["kappa1"], r["kappa2"]),
        _const(-1 / 2), lambda r, t: -4 * r["kappa1"] * r["kappa2"], None, False,
        "{-1/2}", "-4 kappa1 kappa2", "kappa1 kappa2 != 0, kappa1^2 != kappa2^2",
        sampler=_sym5_sampler),
    # non-solvable
    FamilySpec(
        "NS.1", "SU(2)xR", (Param("lam", 0, 3.0, sample_lo=0.2),), _ns1_resolve,
        lambda r: _mla(ns_brackets(r["lam"], r["lam"], r["lam"]), "NS.1"),
        _const(-1 / 3), _zero_energy, True, True, "{-1/3}", "0", "lambda != 0"),
    # E(1,1), E(2)
    FamilySpec(
        "E.1", "RxE(1,1)", (), _no_params, lambda r: _mla(_e_brackets(1.0, -1.0, 0.0), "E.1"),
        _const(-1.0), _zero_energy, True, True, "{-1}", "0", "none"),
    FamilySpec(
        "E.2", "RxE(1,1) (lambda<0) / RxE(2) (lambda>0)", (Param("lam", -1, 1),), _e2_resolve,
        lambda r: _mla(_e_brackets(1.0, r["lam"], r["b"]), "E.2"),
        lambda r: -(3 * r["lam"] ** 2 - 2 * r["lam"] + 3) / (12 * r["b"] ** 2 + (r["lam"] - 1) ** 2),
        lambda r, t: 4 * r["lam"] * (r["lam"] - 1) ** 2, False, False,
        "(-3,-3/10)\\{-1/2} (lambda<0); (-1/3, 5-2sqrt(7)] (lambda>0)", "4 lambda (lambda-1)^2",
        "lambda in (-1,0) U (0,1); branch in {0,1} when lambda<0",
        ("4*b^4-(3*lam^2-2*lam+3)*b^2-(lam-1)^2*lam",), sampler=_e2_sampler),
    FamilySpec(
        "E.3", "RxE(2)", (Param("D", 0, math.inf, sample_hi=4.0),), _e3_resolve,
        lambda r: _mla(_e_brackets(1.0, 1.0, 1.0, D=r["D"]), "E.3"),
        lambda r: -(3 * r["D"] ** 2 + 4) / (r["D"] ** 2 + 12),
        lambda r, t: -5 * r["D"] ** 2, False, False, "(-3,-1/3)", "-5 D^2", "D > 0"),
    FamilySpec(
        "E.4", "RxE(2)", (Param("lam", 0, 1),), _e4_resolve,
        lambda r: _mla(_e_brackets(1.0, r["lam"], r["b"], D=r["D"]), "E.4"),
        lambda r: -(3 * r["b"] ** 2 - 2 * r["lam"] + 3) / (12 * r["b"] ** 2 - 2 * r["lam"] + 2),
        lambda r, t: (r["lam"] - 1) * (3 * (r["lam"] + 3) * r["b"] ** 2 - 2 * r["lam"]), False, False,
        "(-3/2,-1/3)", "(lambda-1)(3(lambda+3)b^2-2lambda)", "lambda in (0,1)",
        ("D^2+lam^2-1", "2*b^4-(5*lam^2-lam-2)*b^2+lam*(lam-1)")),
    FamilySpec(
        "E.5", "RxE(1,1)", (Param("b", 0, math.inf, sample_hi=2.5), Param("A", 0, math.inf, False, sample_hi=2.5)),
        _e5_resolve, lambda r: _mla(_e_brackets(1.0, -1.0, r["b"], A=r["A"]), "E.5"),
        lambda r: -(r["A"] ** 2 + r["b"] ** 2 + 1) / (r["A"] ** 2 + 3 * r["b"] ** 2 + 1),
        lambda r, t: -16 * r["b"] ** 2, False, False, "(-1,-1/3)\\{-1/2}", "-16 b^2",
        "b > 0, A >= 0, b^2 - A^2 != 1", sampler=_e5_sampler),
    # Heisenberg
    FamilySpec(
        "H.1", "RxH3", (), _no_params, lambda r: _mla(_h_brackets(1.0, 0.0, 0.0, 0.0), "H.1"),
        _const(-3.0), _zero_energy, True, True, "{-3}", "0", "none"),
    FamilySpec(
        "H.2", "R⋉H3", (Param("a", -SQRT3 / 2, 0.5, False, True),), _h2_resolve,
        lambda r: _mla(_h_brackets(1.0, r["a"], 0.0, r["d"]), "H.2"),
        lambda r: -3 / (2 * (4 * r["a"] * r["d"] + 5)), _zero_energy, True, True,
        "[-3/4,-1/4)", "0", "a in [-sqrt(3)/2, 1/2), d > 0", ("4*(a^2+d^2+a*d)-3",)),
    FamilySpec(
        "H.3", "R⋉H3", (), _no_params, lambda r: _mla([(1, 2, 3, 1.0), (2, 4, 1, -1.0)], "H.3"),
        _const(-1.5), _zero_energy, True, True, "{-3/2}", "0", "none"),
    FamilySpec(
        "H.4", "R⋉H3", (Param("a", 0, math.inf, sample_hi=3.0),), _h4_resolve,
        lambda r: _mla(_h_brackets(1.0, r["a"], 0.0, r["a"]), "H.4"),
        lambda r: -3 * (4 * r["a"] ** 2 + 1) / (44 * r["a"] ** 2 + 1),
        lambda r, t: -36 * r["a"] ** 2, False, False, "(-3,-3/11)\\{-1/2}", "-36 a^2",
        "a in (0,1/2) U (1/2,inf)", sampler=_h4_sampler),
    FamilySpec(
        "H.5", "R⋉H3", (Param("c", 0, math.inf),), _h5_resolve,
        lambda r: _mla(_h_brackets(1.0, r["a"], r["c"], r["d"]), "H.5"),
        lambda r: -3 * (32 * r["c"] ** 4 - 7) / (4 * (8 * r["c"] ** 4 + 40 * r["c"] ** 2 - 13)),
        lambda r, t: -72 * r["c"] ** 2 * (4 * r["c"] ** 2 - 1) / (8 * r["c"] ** 2 - 7), False, False,
        "(-3,-21/52) U (-3/2,-7/15)", "-72c^2(4c^2-1)/(8c^2-7)",
        "c in (0,1/2) U (sqrt(7/8),inf); a < 0 < d, |a| < d",
        ("3*a^2+4*c^2+3*d^2+10*a*d", "32*c^4+(32*a*d+8)*c^2-28*a*d-9"), sampler=_h5_sampler),
    FamilySpec(
        "H.6", "R⋉H3", (Param("H", 0, math.sqrt(3 / 7)),), _h6_resolve,
        lambda r: _mla(_h_brackets(1.0, r["a"], 0.0, r["d"], H=r["H"]), "H.6"),
        lambda r: -(4 * r["a"] ** 2 + 3 * r["d"] ** 2 + 2 * r["a"] * r["d"] + 3 * r["H"] ** 2 + 3)
        / (12 * r["a"] ** 2 + 12 * r["d"] ** 2 + 20 * r["a"] * r["d"] + r["H"] ** 2 + 1),
        lambda r, t: _h6_energy(r["a"], r["d"], r["H"]), False, False, "(-3,-7/16)", "< 0",
        "H in (0, sqrt(3/7))",
        ("4*d^6+5*(3*H^2-1)*d^4+(18*H^4+6*H^2+13)*d^2+(H^2+1)^2*(7*H^2-3)",
         "2*a*(d^2+H^2+1)+(2*d^2+2*H^2-3)*d")),
    # R^3
    FamilySpec(
        "R.1", "R⋉R3", (), _no_params, lambda r: _mla(_r_brackets(1.0, 0.0, -1.0, c=1.0), "R.1"),
        _const(-3.0), _zero_energy, True, True, "{-3}", "0", "none"),
    FamilySpec(
        "R.2", "R⋉R3", (), _no_params,
        lambda r: _mla(_r_brackets(1.0, -1.0, 0.0, c=1 / math.sqrt(2), h=1 / math.sqrt(2)), "R.2"),
        _const(-1.5), _zero_energy, True, True, "{-3/2}", "0", "none"),
    FamilySpec(
        "R.3", "R⋉R3", (Param("f", -1, 1, False, False), Param("p", -1, 1, False, False)), _r3_resolve,
        lambda r: _mla(_r_brackets(1.0, r["f"], r["p"]), "R.3"),
        lambda r: -(r["f"] ** 2 + r["p"] ** 2 + 1)
        / (2 * (r["f"] ** 2 + r["p"] ** 2 + r["f"] * r["p"] + r["f"] + r["p"] + 1)),
        _zero_energy, True, True, "[-1,-1/4)", "0",
        "-1 <= f <= p <= 1, not (f = -1 and p < 0), (f,p) not in {(0,0),(0,1),(1,1)}",
        sampler=_r3_sampler),
    FamilySpec(
        "R.4", "R⋉R3", (Param("kappa", SQRT3 / 2, math.inf, sample_hi=3.0),), _r4_resolve,
        lambda r: _mla(_r_brackets(1.0, -(r["kappa"] + 0.5), r["kappa"] - 0.5, h=r["h"]), "R.4"),
        lambda r: -(48 * r["kappa"] ** 4 - 9) / (16 * r["kappa"] ** 4 - 9),
        _zero_energy, False, True, "(-inf,-3)", "0", "kappa > sqrt(3)/2",
        ("h^2*(4*kappa^2-3)-kappa^2*(4*kappa^2+3)",)),
    FamilySpec(
        "R.5", "R⋉R3", (Param("p", ZETA, 0),), _r5_resolve,
        lambda r: _mla(_r_brackets(1.0, -(r["p"] + 1), r["p"], c=r["c"], h=r["h"]), "R.5"),
        lambda r: -(30 * r["p"] ** 4 - 3 * r["p"] ** 2 - 6 * r["p"] - 3)
        / (2 * (r["p"] ** 2 + r["p"] + 1) * (5 * r["p"] ** 2 - r["p"] - 1)),
        _zero_energy, False, True, "(-inf,-3/2)", "0", "p in (zeta,-1) U ((1-sqrt(21))/10, 0)",
        ("c^2*(p+2)*(5*p^2-p-1)+(2*p+1)*(8*p^3+15*p^2+3*p+1)",
         "h^2*(p+2)*(5*p^2-p-1)-(p+1)*(p-1)*(5*p^3+12*p^2+1)"), sampler=_r5_sampler),
    FamilySpec(
        "R.6", "R⋉R3", (Param("h", 0, math.inf, sample_hi=3.0),), _r6_resolve,
        lambda r: _mla(_r_brackets(1 / 3, r["f"], 2 / 3 - r["f"], h=r["h"]), "R.6"),
        lambda r: -(36 * r["h"] ** 2 + 5) / (12 * r["h"] ** 2 + 11),
        lambda r, t: -16 * r["h"] ** 2 / 3, False, False, "(-3,-5/11)", "-16 h^2 / 3", "h > 0",
        ("36*(f^2-h^2)-24*f-5",)),
    FamilySpec(
        "R.7", "R⋉R3", (Param("b", 0, math.inf, sample_hi=3.0),), _r7_resolve,
        lambda r: _mla(_r_brackets(r["a"], 1 / 3, 2 / 3 - r["a"], b=r["b"], h=r["b"]), "R.7"),
        lambda r: -(18 * r["b"] ** 2 + 7) / (12 * r["b"] ** 2 + 10),
        lambda r, t: -8 * r["b"] ** 2 / 3, False, False, "(-3/2,-7/10)", "-8 b^2 / 3", "b > 0",
        ("9*a^2-18*b^2-6*a-8",)),
]


def _h6_energy(a, d, H):
    h2 = H * H
    return 0.25 * (24 * a ** 3 * d + 2 * a * d * (22 * d * d - 19 * h2 - 31)
                   + 3 * d * d * (4 * d * d - 7 * h2 - 13) + 4 * a * a * (13 * d * d - 6 * h2 - 10))


def _alias(alias_id, target):
    t = next(f for f in _FAMILIES if f.id == target)
    return FamilySpec(alias_id, t.group, t.params, t.resolve, t.build, t.t_formula, t.energy_formula,
                      t.soliton, t.zero_energy, t.t_range, t.energy_range, t.domain, t.constraints,
                      t.all_t, target, t.sampler)


_FAMILIES += [_alias("SOLV.1", "R.1"), _alias("SOLV.2", "R.2"), _alias("SOLV.3", "R.3"),
              _alias("SOLV.4", "H.2")]
_BY_ID = {f.id: f for f in _FAMILIES}


# -- public API -----------------------------------------------------------------

def list_families(include_aliases=True):
    return [f for f in _FAMILIES if include_aliases or f.alias_of is None]


def get_family(fid):
    try:
        return _BY_ID[fid]
    except KeyError:
        raise UnknownFamily(f"unknown family {fid!r}; known: {', '.join(_BY_ID)}") from None


def resolve_params(fid, free_params=None):
    return get_family(fid).resolve(dict(free_params or {}))


def build_instance(fid, free_params=None):
    spec = get_family(fid)
    r = spec.resolve(dict(free_params or {}))
    metric = spec.build(r)
    if spec.all_t:
        t = None
        ref_t = -0.25 if fid == "SYM.1" else 0.0
    else:
        t = float(spec.t_formula(r))
        ref_t = t
    return FamilyInstance(fid, r, metric, t, float(spec.energy_formula(r, ref_t)), ref_t)


def family_t(fid, params=None, strict=True):
    """Closed-form ``t``; ``None`` for families critical for every ``t``.

    With ``strict=False`` the dependent parameters are not re-solved and the
    formula is evaluated on ``params`` as given (used for boundary limits).
    """
    spec = get_family(fid)
    if spec.all_t:
        return None
    r = spec.resolve(dict(params or {})) if strict else dict(params or {})
    return float(spec.t_formula(r))


def family_energy(fid, params=None, t=None, strict=True):
    spec = get_family(fid)
    r = spec.resolve(dict(params or {})) if strict else dict(params or {})
    if t is None:
        t = -0.25 if fid == "SYM.1" else (0.0 if spec.all_t else spec.t_formula(r))
    return float(spec.energy_formula(r, t))


def sample_params(fid, rng, i=0):
    spec = get_family(fid)
    if spec.sampler is not None:
        return spec.sampler(rng, i)
    return {p.name: p.sample(rng) for p in spec.params}


def sample_instances(fid, n, seed=0):
    """``n`` admissible instances (the same instance repeated for parameter-free families)."""
    rng = np.random.default_rng(seed)
    return [build_instance(fid, sample_params(fid, rng, i)) for i in range(n)]


# -- verification ---------------------------------------------------------------

@dataclass
class SampleRecord:
    family: str
    params: dict
    jacobi: float
    residual: float
    t_formula: float | None
    t_solved: float | None
    kind: str
    energy: float
    energy_formula: float
    soliton: bool | None
    soliton_lambda: float | None
    passed: bool
    failures: list


@dataclass
class VerificationReport:
    family: str
    records: list

    @property
    def passed(self):
        return all(r.passed for r in self.records)

    @property
    def worst_residual(self):
        return max((r.residual for r in self.records), default=0.0)

    @property
    def worst_t_error(self):
        errs = [abs(r.t_solved - r.t_formula) for r in self.records
                if r.t_solved is not None and r.t_formula is not None]
        return max(errs, default=0.0)


def normalized_package(inst):
    """Curvature package at unit scale (``max|c| = 1``) for bracket instances."""
    if inst.is_package:
        return inst.metric
    return curvature_package(inst.metric.normalized())


def check_instance(inst, tol=CRIT_TOL, t_tol=1e-10, soliton_tol=1e-9, non_soliton_tol=1e-6):
    spec = get_family(inst.family)
    failures = []
    jac = 0.0 if inst.is_package else jacobi_defect(inst.metric.normalized())
    if jac > tol:
        failures.append(f"jacobi defect {jac:.3e}")
    pkg = normalized_package(inst)
    raw = inst.package()
    res = solve_critical_t(pkg, tol)
    if spec.all_t:
        residual = max(float(np.max(np.abs(critical_tensor(pkg, t)))) for t in (-1.0, 0.0, 1.0))
        if res.kind is not Kind.ALL_T:
            failures.append(f"expected AllT, got {res.kind.value}")
    else:
        residual = float(np.max(np.abs(critical_tensor(pkg, inst.expected_t))))
        if res.kind is not Kind.UNIQUE:
            failures.append(f"expected Unique, got {res.kind.value}")
        elif abs(res.t - inst.expected_t) > t_tol:
            failures.append(f"t mismatch {res.t!r} vs {inst.expected_t!r}")
    if residual > tol:
        failures.append(f"residual {residual:.3e} at formula t")
    e = energy(raw, inst.ref_t).energy
    if abs(e - inst.expected_energy) > tol * max(1.0, abs(inst.expected_energy)):
        failures.append(f"energy {e!r} vs formula {inst.expected_energy!r}")
    sol, lam = None, None
    if not inst.is_package:
        cert = algebraic_soliton_check(inst.metric, soliton_tol)
        sol = cert is not None
        lam = cert.lam if cert else None
        if spec.soliton and not sol:
            failures.append("expected an algebraic soliton certificate")
        if spec.soliton is False and algebraic_soliton_check(inst.metric, non_soliton_tol) is not None:
            failures.append("unexpected algebraic soliton certificate")
    return SampleRecord(inst.family, inst.params, jac, residual, inst.expected_t,
                        res.t, res.kind.value, e, inst.expected_energy, sol, lam,
                        not failures, failures)


def verify_family(fid, samples=16, tol=CRIT_TOL, seed=0):
    spec = get_family(fid)
    n = samples if spec.params else 1
    recs = [check_instance(inst, tol) for inst in sample_instances(fid, n, seed)]
    return VerificationReport(fid, recs)


# -- identifications between families ---------------------------------------------

@dataclass(frozen=True)
class AliasIdentification:
    source: str
    target: str
    source_params: dict
    target_params: dict
    lmap: LinearMap
    scale: float

    def apply(self):
        src = build_instance(self.source, self.source_params).metric
        return scale_structure(change_basis(src, self.lmap, orthogonal_required=False), self.scale)

    def defect(self):
        tgt = build_instance(self.target, self.target_params).metric
        return float(np.max(np.abs(self.apply().c - tgt.c)))


def alias_identifications():
    r2 = math.sqrt(2.0)
    ident = LinearMap(4, np.eye(4))
    out = [
        # R x H^3 onto R.1
        AliasIdentification("H.1", "R.1", {}, {}, LinearMap.from_rows(
            [[0, -r2, r2, 0], [0, 0, 0, 2], [0, r2, r2, 0], [2, 0, 0, 0]]), 1.0),
        # [e1,e2]=e3, [e2,e4]=-e1 onto R.2
        AliasIdentification("H.3", "R.2", {}, {}, LinearMap.from_rows(
            [[1, 0, 1 / r2, 1 / r2], [1, 0, -1 / r2, -1 / r2], [0, 0, 1, -1], [0, r2, 0, 0]]), 1.0),
        # E(1,1) x R onto R.3 at (f,p) = (-1,0)
        AliasIdentification("E.1", "R.3", {}, {"f": -1.0, "p": 0.0}, LinearMap.from_rows(
            [[1 / r2, 1 / r2, 0, 0], [-1 / r2, 1 / r2, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]), 1.0),
    ]
    for alias, target, params in (("SOLV.1", "R.1", {}), ("SOLV.2", "R.2", {}),
                                  ("SOLV.3", "R.3", {"f": 0.5, "p": 0.5}),
                                  ("SOLV.4", "H.2", {"a": 0.0})):
        out.append(AliasIdentification(alias, target, params, params, ident, 1.0))
    return out


# -- Bach-flat special metrics -----------------------------------------------------

def bach_flat_specials():
    """Named non-Einstein instances that are ``F_{-1/3}``-critical."""
    out = [
        ("SYM.2", {"kappa": 1.0}),
        ("NS.1", {"lam": 1.0}),
        ("H.2", {"a": -0.25 * math.sqrt(7 - 3 * math.sqrt(5))}),
        ("H.4", {"a": 1.0}),
    ]
    for pv in (0.25, 0.5, 0.81):
        out.append(("R.3", {"f": (math.sqrt(pv) - 1) ** 2, "p": pv}))
    # E.2 at lambda = sqrt(3)-2 on the branch with b^2 = 6 - 3 sqrt(3)
    lam = SQRT3 - 2
    target_b = math.sqrt(6 - 3 * SQRT3)
    for branch in (0, 1):
        if abs(resolve_params("E.2", {"lam": lam, "branch": branch})["b"] - target_b) < 1e-12:
            out.append(("E.2", {"lam": lam, "branch": branch}))
    return [build_instance(fid, p) for fid, p in out]


# -- export ---------------------------------------------------------------------------

def families_json(include_aliases=True):
    return json.dumps({"schema": 1, "families": [f.as_dict() for f in list_families(include_aliases)]},
                      indent=2, ensure_ascii=False)
