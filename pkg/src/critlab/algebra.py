"""Metric Lie algebras given by structure constants in an orthonormal frame.

Structure constants are stored as ``c[i, j, k] = <[e_i, e_j], e_k>`` with
0-based indices. The public bracket-list and JSON interfaces use 1-based
indices, matching the usual way brackets are written down.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    DuplicateBracket,
    IndexOutOfRange,
    JacobiViolation,
    NonPositiveScale,
    NotOrthogonal,
    SingularMap,
    SpecParseError,
)

JACOBI_TOL = 1e-12
DERIVATION_RANK_TOL = 1e-10


def _frozen(a):
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class MetricLieAlgebra:
    """A Lie algebra with an inner product, described in an orthonormal frame."""

    dim: int
    c: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self):
        c = _frozen(self.c)
        if c.shape != (self.dim,) * 3:
            raise ValueError(f"structure constants must have shape {(self.dim,) * 3}, got {c.shape}")
        object.__setattr__(self, "c", c)

    def brackets(self, atol=0.0):
        """Nonzero brackets as 1-based ``(i, j, k, value)`` with ``i < j``."""
        out = []
        for i, j in itertools.combinations(range(self.dim), 2):
            for k in range(self.dim):
                v = self.c[i, j, k]
                if abs(v) > atol:
                    out.append((i + 1, j + 1, k + 1, float(v)))
        return out

    def max_abs(self):
        return float(np.max(np.abs(self.c))) if self.c.size else 0.0

    def normalized(self):
        """Homothetic copy with ``max|c| = 1`` (unchanged if abelian)."""
        m = self.max_abs()
        return self if m == 0.0 else scale_structure(self, 1.0 / m)

    def __eq__(self, other):
        if not isinstance(other, MetricLieAlgebra):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.c, other.c)

    def __hash__(self):
        return hash((self.dim, self.c.tobytes()))


@dataclass(frozen=True)
class LinearMap:
    """Change-of-basis matrix; row ``i`` holds the coefficients of the new ``e_i``."""

    dim: int
    m: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = _frozen(self.m)
        if m.shape != (self.dim, self.dim):
            raise ValueError(f"map must be {self.dim}x{self.dim}, got {m.shape}")
        object.__setattr__(self, "m", m)

    @classmethod
    def from_rows(cls, rows):
        rows = np.asarray(rows, dtype=float)
        return cls(rows.shape[0], rows)

    @classmethod
    def permutation(cls, perm):
        """New ``e_i`` is old ``e_{perm[i]}`` (0-based)."""
        n = len(perm)
        m = np.zeros((n, n))
        m[np.arange(n), list(perm)] = 1.0
        return cls(n, m)

    def is_orthogonal(self, tol=1e-12):
        return bool(np.max(np.abs(self.m @ self.m.T - np.eye(self.dim))) <= tol)


def jacobiator(c):
    """Cyclic sum ``J[i,j,k,m]`` of ``[[e_i,e_j],e_k]`` components."""
    c = np.asarray(c)
    t = np.einsum("ijl,lkm->ijkm", c, c)
    return t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)


def jacobi_defect(mla):
    """Max-norm of the Jacobiator; zero exactly for Lie algebras."""
    if mla.dim == 0:
        return 0.0
    return float(np.max(np.abs(jacobiator(mla.c))))


def _check_jacobi(c, tol):
    jac = jacobiator(c)
    worst = float(np.max(np.abs(jac))) if jac.size else 0.0
    if worst > tol:
        q = np.unravel_index(int(np.argmax(np.abs(jac))), jac.shape)
        raise JacobiViolation(worst, tuple(int(x) for x in q))


def from_structure_constants(c, label="", tol=JACOBI_TOL):
    """Build from a full rank-3 array; antisymmetry and Jacobi are enforced."""
    c = np.asarray(c, dtype=float)
    n = c.shape[0]
    if np.max(np.abs(c + c.transpose(1, 0, 2)), initial=0.0) > tol:
        raise ValueError("structure constants are not antisymmetric in the first two slots")
    scale = max(1.0, float(np.max(np.abs(c), initial=0.0)))
    _check_jacobi(c, tol * scale * scale)
    return MetricLieAlgebra(n, c, label)


def new_metric_lie_algebra(dim, brackets, label="", tol=JACOBI_TOL):
    """Build a metric Lie algebra from 1-based brackets ``(i, j, k, value)``.

    Each entry sets ``<[e_i, e_j], e_k> = value`` for ``i < j``; the
    antisymmetric completion is filled in. Raises ``JacobiViolation`` when the
    result is not a Lie algebra within ``tol`` (relative to ``max|c|^2``).
    """
    c = np.zeros((dim, dim, dim))
    seen = set()
    for entry in brackets:
        i, j, k, value = entry
        i, j, k = int(i), int(j), int(k)
        if not (1 <= i < j <= dim and 1 <= k <= dim):
            raise IndexOutOfRange(f"bracket index ({i},{j},{k}) invalid for dim={dim} (need 1<=i<j<=dim)")
        if (i, j, k) in seen:
            raise DuplicateBracket(f"bracket ({i},{j},{k}) given twice")
        seen.add((i, j, k))
        c[i - 1, j - 1, k - 1] = value
        c[j - 1, i - 1, k - 1] = -value
    return from_structure_constants(c, label, tol)


def abelian(dim):
    return MetricLieAlgebra(dim, np.zeros((dim,) * 3), f"R^{dim}")


def is_unimodular(mla, tol=1e-12):
    """True iff ``tr ad_{e_i} = sum_j c[i,j,j]`` vanishes for every ``i``."""
    traces = np.einsum("ijj->i", mla.c)
    return bool(np.max(np.abs(traces), initial=0.0) <= tol)


def scale_structure(mla, s):
    """Homothety ``g -> s^-2 g``: every structure constant is multiplied by ``s``."""
    if not s > 0:
        raise NonPositiveScale(f"scale must be positive, got {s}")
    return MetricLieAlgebra(mla.dim, s * mla.c, mla.label)


def change_basis(mla, lmap, orthogonal_required=True, tol=1e-12):
    """Structure constants of the basis ``ebar_i = sum_j M[i,j] e_j``.

    The new basis is declared orthonormal. For orthogonal ``M`` this is an
    isometric relabelling; for ``M = s Q`` with ``Q`` orthogonal it is a
    homothety; otherwise it defines a different inner product on the same
    Lie algebra.
    """
    m = lmap.m
    if lmap.dim != mla.dim:
        raise ValueError("map and algebra dimensions differ")
    if orthogonal_required and not lmap.is_orthogonal(tol=max(tol, 1e-12)):
        raise NotOrthogonal("change of basis is not orthogonal")
    det = np.linalg.det(m)
    if abs(det) <= tol:
        raise SingularMap(f"change of basis is singular (det={det:.3e})")
    minv = np.linalg.inv(m)
    cbar = np.einsum("ia,jb,abk,kl->ijl", m, m, mla.c, minv)
    cbar = 0.5 * (cbar - cbar.transpose(1, 0, 2))
    return MetricLieAlgebra(mla.dim, cbar, mla.label)


def derivation_constraints(c):
    """Matrix ``L`` with ``L @ vec(D) = 0`` iff ``D`` is a derivation.

    ``D`` acts on coordinates column-wise: ``D e_j = sum_i D[i, j] e_i``.
    """
    n = c.shape[0]
    rows = []
    for a in range(n):
        for b in range(n):
            d = np.zeros((n, n))
            d[a, b] = 1.0
            e = (np.einsum("ijk,lk->ijl", c, d)
                 - np.einsum("mi,mjl->ijl", d, c)
                 - np.einsum("mj,iml->ijl", d, c))
            rows.append(e.ravel())
    return np.array(rows).T


def derivation_space(mla, rank_tol=DERIVATION_RANK_TOL):
    """Orthonormal basis (Frobenius) of the derivation algebra ``der(g)``."""
    n = mla.dim
    lhs = derivation_constraints(mla.c)
    _, s, vt = np.linalg.svd(lhs)
    smax = s[0] if s.size else 0.0
    rank = 0 if smax == 0.0 else int(np.sum(s > rank_tol * smax))
    return [vt[r].reshape(n, n) for r in range(rank, n * n)]


def derivation_defect(mla, d):
    """Max-norm of ``D[x,y] - [Dx,y] - [x,Dy]`` over basis pairs."""
    lhs = derivation_constraints(mla.c)
    return float(np.max(np.abs(lhs @ np.asarray(d, dtype=float).ravel()), initial=0.0))


# -- metric-spec files ------------------------------------------------------

def parse_metric_spec(text):
    """Parse the JSON metric-spec format into a ``MetricLieAlgebra``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"metric spec is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "dim" not in data:
        raise SpecParseError("metric spec must be an object with a 'dim' field")
    dim = data["dim"]
    if dim not in (3, 4):
        raise SpecParseError(f"'dim' must be 3 or 4, got {dim!r}")
    raw = data.get("brackets", [])
    brackets = []
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 4):
            raise SpecParseError(f"bracket entries must be [i, j, k, value], got {entry!r}")
        i, j, k, v = entry
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j, k)):
            raise SpecParseError(f"bracket indices must be integers, got {entry!r}")
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise SpecParseError(f"bracket value must be a number, got {entry!r}")
        brackets.append((i, j, k, float(v)))
    return new_metric_lie_algebra(dim, brackets, label=str(data.get("label", "")))


def load_metric_spec(path):
    return parse_metric_spec(Path(path).read_text())


def dump_metric_spec(mla, atol=0.0):
    data = {"dim": mla.dim, "brackets": [list(b) for b in mla.brackets(atol)]}
    if mla.label:
        data["label"] = mla.label
    return json.dumps(data)
