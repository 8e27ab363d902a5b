"""The gradient tensor of the quadratic functionals and the criticality tests built on it.

In dimension ``n`` the gradient of ``F_t = int |rho|^2 + t tau^2`` at a
homogeneous metric is

    F_t = -lap(rho) + (2/n)(|rho|^2 + t tau^2) g - 2 R[rho] - 2 t tau rho

(the Hessian and Laplacian of ``tau`` drop out because ``tau`` is constant).
It is affine in ``t``: ``F_t = A + t B``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import WrongDimension, ZeroScalarCurvature

CRIT_TOL = 1e-9
TAU_TOL = 1e-12


class Kind(str, Enum):
    ALL_T = "AllT"
    UNIQUE = "Unique"
    NOT_CRITICAL = "NotCritical"


@dataclass(frozen=True)
class CriticalityResult:
    kind: Kind
    t: float | None
    residual: float
    a_norm: float
    b_norm: float

    @property
    def critical(self):
        return self.kind is not Kind.NOT_CRITICAL


@dataclass(frozen=True)
class EnergyValue:
    t: float
    energy: float


def _max(m):
    return float(np.max(np.abs(m), initial=0.0))


def split_affine(pkg):
    """``(A, B)`` with ``critical_tensor(pkg, t) == A + t * B``."""
    n = pkg.dim
    g = np.eye(n)
    a = -pkg.lap_ric + (2.0 / n) * pkg.ric_sq * g - 2.0 * pkg.r_of_ric
    b = (2.0 / n) * pkg.tau ** 2 * g - 2.0 * pkg.tau * pkg.ric
    return a, b


def split_affine_parts(ric, tau, lap, rr):
    """Same as ``split_affine`` but from the bare ingredients (search hot loop)."""
    n = ric.shape[0]
    g = np.eye(n)
    a = -lap + (2.0 / n) * float(np.sum(ric * ric)) * g - 2.0 * rr
    b = (2.0 / n) * tau ** 2 * g - 2.0 * tau * ric
    return a, b


def critical_tensor(pkg, t):
    a, b = split_affine(pkg)
    return a + t * b


def solve_critical_t(pkg, tol=CRIT_TOL):
    """Least-squares ``t`` for ``A + t B = 0`` and the verdict.

    Norms are max-norms; ``t*`` is the Frobenius projection
    ``-<A, B> / <B, B>``.
    """
    a, b = split_affine(pkg)
    return solve_affine(a, b, tol)


def solve_affine(a, b, tol=CRIT_TOL):
    """Verdict for ``A + t B = 0`` given the two parts directly."""
    an, bn = _max(a), _max(b)
    if bn <= tol:
        kind = Kind.ALL_T if an <= tol else Kind.NOT_CRITICAL
        return CriticalityResult(kind, None, an, an, bn)
    t = -float(np.sum(a * b)) / float(np.sum(b * b))
    res = _max(a + t * b)
    kind = Kind.UNIQUE if res <= tol else Kind.NOT_CRITICAL
    return CriticalityResult(kind, t, res, an, bn)


def energy(pkg, t):
    return EnergyValue(t, pkg.ric_sq + t * pkg.tau ** 2)


def zero_energy_t(pkg, tol=TAU_TOL):
    if abs(pkg.tau) <= tol:
        raise ZeroScalarCurvature("scalar curvature vanishes; zero-energy t undefined")
    return -pkg.ric_sq / pkg.tau ** 2


def is_zero_energy_critical(pkg, tol=CRIT_TOL):
    """The zero-energy reduction ``-lap(rho) - 2 R[rho] + 2 |rho|^2 rho / tau = 0``."""
    if abs(pkg.tau) <= TAU_TOL:
        raise ZeroScalarCurvature("scalar curvature vanishes; zero-energy equation undefined")
    m = -pkg.lap_ric - 2.0 * pkg.r_of_ric + 2.0 * pkg.ric_sq / pkg.tau * pkg.ric
    return _max(m) <= tol


def is_S_critical(pkg, tol=CRIT_TOL):
    """Criticality for the total scalar curvature squared: ``tau (rho - tau/n g) = 0``."""
    dev = pkg.ric - (pkg.tau / pkg.dim) * np.eye(pkg.dim)
    return abs(pkg.tau) * _max(dev) <= tol


def is_bach_flat(pkg, tol=CRIT_TOL):
    """Bach-flatness is tested as ``F_{-1/3} = 0`` (a Bach-flat 4-manifold satisfies it)."""
    if pkg.dim != 4:
        raise WrongDimension(f"Bach-flatness test needs dim 4, got {pkg.dim}")
    return _max(critical_tensor(pkg, -1.0 / 3.0)) <= tol
