"""Algebraic Ricci solitons: ``Ric = lambda Id + D`` with ``D`` a derivation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import derivation_defect, derivation_space
from .criticality import CRIT_TOL, Kind, energy, solve_critical_t
from .curvature import critical_parts, curvature_package
from .errors import ZeroScalarCurvature

SOLITON_TOL = 1e-9


@dataclass(frozen=True)
class SolitonCertificate:
    lam: float
    derivation: np.ndarray
    residual: float


def soliton_fit(mla):
    """Least-squares ``(lambda, D, residual)`` over ``lambda`` and ``der(g)``."""
    n = mla.dim
    ric = critical_parts(mla.c)[0]
    basis = derivation_space(mla)
    cols = [np.eye(n).ravel()] + [d.ravel() for d in basis]
    mat = np.array(cols).T
    coef, *_ = np.linalg.lstsq(mat, ric.ravel(), rcond=None)
    lam = float(coef[0])
    d = sum((x * b for x, b in zip(coef[1:], basis)), np.zeros((n, n)))
    fit = float(np.max(np.abs(ric - lam * np.eye(n) - d)))
    residual = max(fit, derivation_defect(mla, d))
    return lam, d, residual


def algebraic_soliton_check(mla, tol=SOLITON_TOL):
    """Certificate if ``mla`` is an algebraic Ricci soliton at ``tol``, else ``None``.

    The check is scale-aware: the residual is compared after normalizing the
    structure constants to ``max|c| = 1``; ``lambda`` and ``D`` refer to the
    input scale.
    """
    m = mla.max_abs()
    if m == 0.0:
        n = mla.dim
        return SolitonCertificate(0.0, np.zeros((n, n)), 0.0)
    lam, d, _ = soliton_fit(mla)
    _, _, res_unit = soliton_fit(mla.normalized())
    if res_unit > tol:
        return None
    return SolitonCertificate(lam, d, res_unit)


@dataclass(frozen=True)
class SolitonCriticality:
    ok: bool
    t: float | None
    expected_t: float | None
    energy: float | None
    detail: str


def soliton_expected_criticality(cert, pkg, tol=CRIT_TOL):
    """A soliton must be critical with zero energy at ``t = -|rho|^2 / tau^2``."""
    if cert is None:
        raise ValueError("no certificate supplied")
    if abs(pkg.tau) <= 1e-12:
        if pkg.ric_sq <= tol:
            return SolitonCriticality(True, None, None, 0.0, "flat steady soliton; trivially consistent")
        raise ZeroScalarCurvature("soliton with zero scalar curvature is not flat")
    res = solve_critical_t(pkg, tol)
    t_exp = -pkg.ric_sq / pkg.tau ** 2
    if res.kind is Kind.ALL_T:
        e = energy(pkg, t_exp).energy
        return SolitonCriticality(abs(e) <= tol, t_exp, t_exp, e, "Einstein; critical for every t")
    if res.kind is not Kind.UNIQUE:
        return SolitonCriticality(False, None, t_exp, None, "soliton but not critical")
    e = energy(pkg, res.t).energy
    scale = max(1.0, pkg.ric_sq)
    ok = abs(res.t - t_exp) <= 1e-8 * max(1.0, abs(t_exp)) and abs(e) <= tol * scale
    return SolitonCriticality(ok, res.t, t_exp, e, "")


def soliton_verdict(mla, tol=SOLITON_TOL):
    cert = algebraic_soliton_check(mla, tol)
    return cert, soliton_expected_criticality(cert, curvature_package(mla)) if cert else None
