"""Homothety-invariant curvature ratios used to tell metrics apart.

Under ``c -> s c`` the norms scale as ``tau ~ s^2``, ``|rho|^2, |R|^2 ~ s^4`` and
``|nabla rho|^2, |nabla R|^2 ~ s^6``, so

    (t*, |rho|^2/tau^2, |R|^2/tau^2, |nabla rho|^2/tau^3, |nabla R|^2/tau^3)

is unchanged. When ``tau`` vanishes the ratios are taken against ``|rho|^2``
instead (mode ``"fallback"``); flat metrics get mode ``"flat"``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .criticality import CRIT_TOL, Kind, solve_critical_t
from .errors import ModeMismatch

TAU_TOL = 1e-10
ALL_T = "AllT"


@dataclass(frozen=True)
class Fingerprint:
    t_star: float | str | None
    r1: float
    r2: float
    r3: float
    r4: float
    mode: str = "tau"

    def ratios(self):
        return (self.r1, self.r2, self.r3, self.r4)

    def as_dict(self):
        return {"t_star": self.t_star, "r1": self.r1, "r2": self.r2,
                "r3": self.r3, "r4": self.r4, "mode": self.mode}


def fingerprint(pkg, tol=CRIT_TOL, tau_tol=TAU_TOL, crit=None):
    """Fingerprint of a curvature package.

    ``tau_tol`` is relative to ``sqrt(|rho|^2)`` so the mode choice does not
    depend on the scale of the metric. A precomputed criticality verdict can
    be passed as ``crit``.
    """
    res = crit if crit is not None else solve_critical_t(pkg, tol)
    if res.kind is Kind.ALL_T:
        t_star = ALL_T
    elif res.kind is Kind.UNIQUE:
        t_star = res.t
    else:
        t_star = None
    rho = math.sqrt(pkg.ric_sq)
    if pkg.riem_sq <= tol ** 2:
        return Fingerprint(t_star, 0.0, 0.0, 0.0, 0.0, "flat")
    if abs(pkg.tau) > tau_tol * max(rho, 1e-300):
        tau = pkg.tau
        return Fingerprint(t_star, pkg.ric_sq / tau ** 2, pkg.riem_sq / tau ** 2,
                           pkg.nabla_ric_sq / tau ** 3, pkg.nabla_riem_sq / tau ** 3)
    q = pkg.ric_sq
    if q <= tol ** 2:
        # Ricci-flat but not flat: normalize by |R|^2 instead
        q = pkg.riem_sq
        return Fingerprint(t_star, 0.0, 1.0, pkg.nabla_ric_sq / q ** 1.5,
                           pkg.nabla_riem_sq / q ** 1.5, "ricci_flat")
    return Fingerprint(t_star, 1.0, pkg.riem_sq / q, pkg.nabla_ric_sq / q ** 1.5,
                       pkg.nabla_riem_sq / q ** 1.5, "fallback")


def _t_gap(a, b):
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return abs(a - b)
    return 0.0 if a == b else math.inf


def distance(f1, f2):
    """Max-norm distance; ``inf`` when the critical kinds differ."""
    if f1.mode != f2.mode:
        raise ModeMismatch(f"cannot compare fingerprints in modes {f1.mode!r} and {f2.mode!r}")
    gaps = [_t_gap(f1.t_star, f2.t_star)]
    gaps += [abs(x - y) for x, y in zip(f1.ratios(), f2.ratios())]
    return max(gaps)


def distinct(f1, f2, tol=1e-6):
    """True iff the fingerprints separate the two metrics.

    ``False`` means "not separated", which does not prove the metrics homothetic.
    """
    return distance(f1, f2) > tol
