"""Frame-component curvature of left-invariant metrics and symmetric products.

Conventions (orthonormal frame, indices raised and lowered trivially):

* ``gamma[i, j, k] = <nabla_{e_i} e_j, e_k>``
* ``R(X, Y) Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z`` and
  ``riem[i, j, k, l] = <R(e_i, e_j) e_k, e_l>``, so the round sphere has
  sectional curvature ``riem[i, j, j, i] > 0``
* ``ric[i, j] = sum_k riem[k, i, j, k]``
* ``r_of_ric[i, j] = sum_{k,l} riem[k, i, j, l] ric[k, l]``, which equals
  ``(tau / n) ric`` on Einstein spaces
* ``lap_ric`` is the rough Laplacian ``sum_a (nabla^2 ric)(e_a, e_a; ., .)``
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import BadFactorDimension, EqualIndices


@dataclass(frozen=True)
class CurvaturePackage:
    dim: int
    gamma: np.ndarray | None = field(repr=False)
    riem: np.ndarray = field(repr=False)
    ric: np.ndarray = field(repr=False)
    tau: float
    nabla_ric: np.ndarray = field(repr=False)
    nabla_riem: np.ndarray = field(repr=False)
    lap_ric: np.ndarray = field(repr=False)
    r_of_ric: np.ndarray = field(repr=False)
    ric_sq: float
    riem_sq: float
    nabla_ric_sq: float
    nabla_riem_sq: float
    source: object = field(default=None, repr=False, compare=False)

    @property
    def norms(self):
        return {
            "ric_sq": self.ric_sq,
            "riem_sq": self.riem_sq,
            "nabla_ric_sq": self.nabla_ric_sq,
            "nabla_riem_sq": self.nabla_riem_sq,
        }


def connection(mla):
    """Levi-Civita connection coefficients from the Koszul formula."""
    c = mla.c if hasattr(mla, "c") else np.asarray(mla)
    return _koszul(c)


def _koszul(c):
    # c.transpose(2, 0, 1)[i, j, k] == c[j, k, i]
    return 0.5 * (c - c.transpose(2, 0, 1) + c.transpose(1, 2, 0))


def _riemann(c, gamma):
    # nabla_i nabla_j e_k: gamma[j,k,m] gamma[i,m,l]
    t = np.einsum("jkm,iml->ijkl", gamma, gamma)
    return t - t.transpose(1, 0, 2, 3) - np.einsum("ijm,mkl->ijkl", c, gamma)


def covariant_derivative(gamma, tensor):
    """``(nabla_{e_i} T)(e_j1, ...)`` for a left-invariant covariant tensor ``T``.

    Frame components are constant, so only the connection terms survive:
    ``-sum_s T(..., nabla_{e_i} e_js, ...)``. The new index is prepended.
    """
    n = gamma.shape[0]
    out = np.zeros((n,) + tensor.shape)
    for slot in range(tensor.ndim):
        # contract gamma[i, j, m] with T along ``slot`` -> indices (i, j, rest...)
        moved = np.moveaxis(tensor, slot, 0)
        term = np.tensordot(gamma, moved, axes=([2], [0]))
        # term has axes (i, j, others in moved order); put j back at slot+1
        out -= np.moveaxis(term, 1, slot + 1)
    return out


def _rough_laplacian(gamma, nabla_t):
    second = covariant_derivative(gamma, nabla_t)
    return np.einsum("aa...->...", second)


def critical_parts(c):
    """``(ric, tau, lap_ric, r_of_ric)`` without the rank-5 derivative; used in hot loops."""
    gamma = _koszul(c)
    riem = _riemann(c, gamma)
    ric = np.einsum("kijk->ij", riem)
    tau = float(np.trace(ric))
    nric = -(np.einsum("ijm,mk->ijk", gamma, ric) + np.einsum("ikm,jm->ijk", gamma, ric))
    # (nabla_a nabla ric)(a, j, k) summed over a
    lap = -(np.einsum("aam,mjk->jk", gamma, nric)
            + np.einsum("ajm,amk->jk", gamma, nric)
            + np.einsum("akm,ajm->jk", gamma, nric))
    rr = np.einsum("kijl,kl->ij", riem, ric)
    return ric, tau, lap, rr


def curvature_package(mla):
    """All curvature data of a left-invariant metric in frame components."""
    c = mla.c
    gamma = _koszul(c)
    riem = _riemann(c, gamma)
    ric = np.einsum("kijk->ij", riem)
    ric = 0.5 * (ric + ric.T)
    nabla_ric = covariant_derivative(gamma, ric)
    nabla_riem = covariant_derivative(gamma, riem)
    lap_ric = _rough_laplacian(gamma, nabla_ric)
    lap_ric = 0.5 * (lap_ric + lap_ric.T)
    r_of_ric = np.einsum("kijl,kl->ij", riem, ric)
    r_of_ric = 0.5 * (r_of_ric + r_of_ric.T)
    return _package(mla.dim, gamma, riem, ric, nabla_ric, nabla_riem, lap_ric, r_of_ric, mla)


def _package(dim, gamma, riem, ric, nabla_ric, nabla_riem, lap_ric, r_of_ric, source):
    return CurvaturePackage(
        dim=dim,
        gamma=gamma,
        riem=riem,
        ric=ric,
        tau=float(np.trace(ric)),
        nabla_ric=nabla_ric,
        nabla_riem=nabla_riem,
        lap_ric=lap_ric,
        r_of_ric=r_of_ric,
        ric_sq=float(np.sum(ric * ric)),
        riem_sq=float(np.sum(riem * riem)),
        nabla_ric_sq=float(np.sum(nabla_ric * nabla_ric)),
        nabla_riem_sq=float(np.sum(nabla_riem * nabla_riem)),
        source=source,
    )


def _parallel_package(riem, source):
    """Package of a locally symmetric space given its (parallel) curvature tensor."""
    n = riem.shape[0]
    ric = np.einsum("kijk->ij", riem)
    r_of_ric = np.einsum("kijl,kl->ij", riem, ric)
    return _package(n, None, riem, ric, np.zeros((n,) * 3), np.zeros((n,) * 5),
                    np.zeros((n, n)), r_of_ric, source)


def _space_form_blocks(dim, blocks):
    """Curvature of a product of constant-curvature factors.

    ``blocks`` is a list of ``(indices, kappa)``; within a block
    ``R(X,Y)Z = kappa(<Y,Z>X - <X,Z>Y)``.
    """
    riem = np.zeros((dim,) * 4)
    for idx, kappa in blocks:
        for i, j in itertools.permutations(idx, 2):
            riem[i, j, j, i] = kappa
            riem[i, j, i, j] = -kappa
    return riem


def space_form_package(kappa, dim=4):
    """Real space form of constant sectional curvature ``kappa``."""
    return _parallel_package(_space_form_blocks(dim, [(range(dim), kappa)]),
                             ("space_form", kappa))


def product_surfaces_package(kappa1, kappa2):
    """``N^2(kappa1) x N^2(kappa2)`` on frames ``(e1, e2) | (e3, e4)``."""
    riem = _space_form_blocks(4, [((0, 1), kappa1), ((2, 3), kappa2)])
    return _parallel_package(riem, ("product_surfaces", kappa1, kappa2))


def line_times_spaceform_package(ell, kappa):
    """``R^ell x N^(4-ell)(kappa)`` with the flat factor on the first ``ell`` frame vectors."""
    if ell not in (1, 2):
        raise BadFactorDimension(f"flat factor dimension must be 1 or 2, got {ell}")
    riem = _space_form_blocks(4, [(range(ell, 4), kappa)])
    return _parallel_package(riem, ("line_times_spaceform", ell, kappa))


def complex_space_form_package(c):
    """Complex space form of complex dimension 2 and holomorphic curvature ``c``.

    ``R(X,Y)Z = c/4 (<Y,Z>X - <X,Z>Y + <JY,Z>JX - <JX,Z>JY + 2<X,JY>JZ)``
    with ``J e1 = e2, J e3 = e4``.
    """
    g = np.eye(4)
    jm = np.zeros((4, 4))  # jm[a, b] = <J e_a, e_b>
    jm[0, 1] = jm[2, 3] = 1.0
    jm[1, 0] = jm[3, 2] = -1.0
    riem = 0.25 * c * (
        np.einsum("jk,il->ijkl", g, g) - np.einsum("ik,jl->ijkl", g, g)
        + np.einsum("jk,il->ijkl", jm, jm) - np.einsum("ik,jl->ijkl", jm, jm)
        + 2.0 * np.einsum("ji,kl->ijkl", jm, jm)
    )
    return _parallel_package(riem, ("complex_space_form", c))


def is_einstein(pkg, tol=1e-9):
    """True iff ``max|ric - (tau/n) g| <= tol``."""
    dev = pkg.ric - (pkg.tau / pkg.dim) * np.eye(pkg.dim)
    return bool(np.max(np.abs(dev)) <= tol)


def is_flat(pkg, tol=1e-9):
    return bool(np.max(np.abs(pkg.riem), initial=0.0) <= tol)


def sectional_curvature(pkg, i, j):
    """Sectional curvature of the plane ``span(e_i, e_j)`` (0-based indices)."""
    if i == j:
        raise EqualIndices("sectional curvature needs two distinct frame vectors")
    return float(pkg.riem[i, j, j, i])
