"""Multistart numerical search for critical metrics on bracket templates.

A template is a family of structure constants depending polynomially on a
few parameters, with one constant fixed to remove the homothety. The search
minimizes the upper triangle of ``F_t`` over the parameters; ``t`` is either
fixed or eliminated by the least-squares projection ``t* = -<A,B>/<B,B>``
(which is the exact minimizer over ``t`` for fixed parameters).

Converged hits are matched against the catalog by fingerprint distance.
"""
from __future__ import annotations

import functools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .algebra import MetricLieAlgebra, jacobi_defect
from .catalog import OPEN_MARGIN, e_template, get_family, h_template, list_families, ns_brackets, r_template
from .criticality import CRIT_TOL, Kind, solve_affine, split_affine, split_affine_parts
from .curvature import critical_parts, curvature_package
from .fingerprint import ALL_T, distance, fingerprint

DEDUP_TOL = 1e-5
MATCH_TOL = 1e-5
FD_STEP = 1e-6
MAX_ITER = 500


@dataclass(frozen=True)
class Template:
    id: str
    group: str
    names: tuple
    lo: tuple
    hi: tuple
    brackets: object = field(repr=False)
    note: str = ""
    # optional alternative boxes; start i uses boxes[i % len(boxes)]
    boxes: tuple = ()

    def box(self, index):
        if self.boxes:
            return self.boxes[index % len(self.boxes)]
        return self.lo, self.hi

    def structure(self, x):
        c = np.zeros((4, 4, 4))
        for i, j, k, v in self.brackets(*x):
            c[i - 1, j - 1, k - 1] += v
            c[j - 1, i - 1, k - 1] -= v
        return c

    def metric(self, x):
        return MetricLieAlgebra(4, self.structure(x), self.id)


def _ns_boxes(eps=0.05, k=0.5):
    out = []
    for s2 in (1, -1):
        for s3 in (1, -1):
            l2 = (eps, 3.0) if s2 > 0 else (-3.0, -eps)
            l3 = (eps, 3.0) if s3 > 0 else (-3.0, -eps)
            out.append(((l2[0], l3[0], -k, -k, -k), (l2[1], l3[1], k, k, k)))
    return tuple(out)


TEMPLATES = {
    t.id: t for t in (
        Template("NS", "SU(2)xR / SL(2)xR", ("l2", "l3", "k1", "k2", "k3"),
                 (-3, -3, -0.5, -0.5, -0.5), (3, 3, 0.5, 0.5, 0.5),
                 lambda l2, l3, k1, k2, k3: ns_brackets(1.0, l2, l3, k1, k2, k3),
                 "lambda1 = 1; lambda2, lambda3 kept away from 0 by sign-definite boxes",
                 _ns_boxes()),
        Template("E", "RxE(1,1) / RxE(2)", ("l2", "A", "b", "C", "D"),
                 (-3, -3, -3, -3, -3), (3, 3, 3, 3, 3),
                 lambda l2, A, b, C, D: e_template(1.0, l2, A, b, C, D), "lambda1 = 1"),
        Template("H", "R⋉H3", ("a", "c", "d", "H", "F"),
                 (-3, -3, -3, -3, -3), (3, 3, 3, 3, 3),
                 lambda a, c, d, H, F: h_template(1.0, a, c, d, H, F), "gamma = 1"),
        Template("R", "R⋉R3", ("f", "p", "b", "c", "h"),
                 (-3, -3, -3, -3, -3), (3, 3, 3, 3, 3),
                 lambda f, p, b, c, h: r_template(1.0, f, p, b, c, h), "a = 1"),
        Template("R_diag", "R⋉R3", ("f", "p"), (-3, -3), (3, 3),
                 lambda f, p: r_template(1.0, f, p, 0.0, 0.0, 0.0), "a = 1, b = c = h = 0"),
        Template("H_aa", "R⋉H3", ("a",), (-3,), (3,),
                 lambda a: h_template(1.0, a, 0.0, a, 0.0, 0.0), "gamma = 1, d = a, c = H = F = 0"),
    )
}
GROUP_TEMPLATES = ("NS", "E", "H", "R")
_TRIU = np.triu_indices(4)


def get_template(tid):
    try:
        return TEMPLATES[tid]
    except KeyError:
        from .errors import UnknownFamily
        raise UnknownFamily(f"unknown template {tid!r}; known: {', '.join(TEMPLATES)}") from None


def _residual_vector(template, x, t):
    ric, tau, lap, rr = critical_parts(template.structure(x))
    a, b = split_affine_parts(ric, tau, lap, rr)
    if t is None:
        bb = float(np.sum(b * b))
        t = -float(np.sum(a * b)) / bb if bb > 1e-300 else 0.0
    # scale-free: F_t and |rho|^2 are both homogeneous of degree 4 in c
    return (a + t * b)[_TRIU] / (float(np.sum(ric * ric)) + 1e-300)


@dataclass
class SearchHit:
    params: dict
    t: float | None
    kind: str
    residual: float
    fingerprint: object
    jacobi: float
    match: object = None

    def as_dict(self):
        d = {"params": self.params, "t": self.t, "kind": self.kind, "residual": self.residual,
             "fingerprint": self.fingerprint.as_dict(), "jacobi": self.jacobi}
        if self.match is not None:
            d["match"] = self.match.as_dict()
        return d


@dataclass
class SearchResult:
    template: str
    starts: int
    converged: int
    hits: list
    diagnostics: list

    @property
    def ok(self):
        return bool(self.hits)


def _one_start(template, t_value, tol, seed, index):
    rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
    lo, hi = (np.array(v, float) for v in template.box(index))
    x0 = rng.uniform(lo, hi)
    fun = functools.partial(_residual_from_x, template, t_value)
    try:
        sol = least_squares(fun, x0, bounds=(lo, hi), method="trf", diff_step=FD_STEP,
                            xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=MAX_ITER * (len(x0) + 1))
    except (ValueError, FloatingPointError) as exc:
        return None, f"start {index}: {exc}"
    mla = template.metric(sol.x).normalized()
    pkg = curvature_package(mla)
    if pkg.riem_sq <= tol ** 2:
        fp = fingerprint(pkg)
        t, kind, residual = None, Kind.ALL_T.value, 0.0
    else:
        # relative residual, so near-flat points with tiny curvature are not accepted
        a, b = split_affine(pkg)
        scale = pkg.ric_sq
        if t_value is None:
            res = solve_affine(a / scale, b / scale, tol)
            if res.kind is Kind.NOT_CRITICAL:
                return None, f"start {index}: relative residual {res.residual:.2e} after {sol.nfev} evaluations"
            t, kind, residual = res.t, res.kind.value, res.residual
        else:
            residual = float(np.max(np.abs(a + t_value * b))) / scale
            if residual > tol:
                return None, f"start {index}: relative residual {residual:.2e} at fixed t"
            res = solve_affine(a / scale, b / scale, tol)
            t, kind = t_value, (Kind.ALL_T if res.kind is Kind.ALL_T else Kind.UNIQUE).value
        fp = fingerprint(pkg, crit=res)
    hit = SearchHit(dict(zip(template.names, (float(v) for v in sol.x))), t, kind, residual,
                    fp, jacobi_defect(mla))
    return hit, None


def _residual_from_x(template, t_value, x):
    return _residual_vector(template, x, t_value)


def _fp_key(fp):
    t = fp.t_star if isinstance(fp.t_star, float) else (-math.inf if fp.t_star == ALL_T else math.inf)
    return (fp.mode, t) + fp.ratios()


def _threads(threads):
    env = os.environ.get("CRITLAB_THREADS")
    if env:
        return max(1, int(env))
    return max(1, threads or os.cpu_count() or 1)


def search_critical(template, t_free=True, starts=64, seed=0, tol=CRIT_TOL, t=None, threads=1,
                    classify=True):
    """Multistart search on ``template`` (an id or a ``Template``).

    With ``t_free=False`` the value ``t`` must be given and is held fixed.
    Hits are deduplicated by fingerprint distance ``1e-5`` and sorted by
    residual, then fingerprint.
    """
    if isinstance(template, str):
        template = get_template(template)
    if not t_free and t is None:
        raise ValueError("t must be given when t_free is False")
    t_value = None if t_free else float(t)
    run = functools.partial(_one_start, template, t_value, tol, seed)
    n = _threads(threads)
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as ex:
            outcomes = list(ex.map(run, range(starts)))
    else:
        outcomes = [run(i) for i in range(starts)]
    found = [h for h, _ in outcomes if h is not None]
    diagnostics = [d for _, d in outcomes if d is not None]
    found.sort(key=lambda h: (h.residual, _fp_key(h.fingerprint)))
    hits = []
    for h in found:
        if not any(o.fingerprint.mode == h.fingerprint.mode
                   and distance(o.fingerprint, h.fingerprint) <= DEDUP_TOL for o in hits):
            hits.append(h)
    if classify:
        for h in hits:
            h.match = classify_fingerprint(h.fingerprint)
    return SearchResult(template.id, starts, len(found), hits, diagnostics)


# -- matching hits against the catalog ---------------------------------------------

@dataclass
class CatalogMatch:
    family: str | None
    params: dict
    distance: float

    @property
    def matched(self):
        return self.family is not None and self.distance <= MATCH_TOL

    def as_dict(self):
        return {"family": self.family, "params": self.params, "distance": self.distance}


def _fp_vector(fp):
    t = 0.0 if fp.t_star == ALL_T else (fp.t_star if fp.t_star is not None else math.nan)
    return np.array((t,) + fp.ratios())


def _axis(prm, n):
    lo = prm.lo + OPEN_MARGIN if prm.lo_open else prm.lo
    if math.isinf(prm.hi):
        # unbounded above: geometric spacing out to a large value
        return np.concatenate(([lo] if not prm.lo_open else [], lo + np.geomspace(1e-4, 40.0, n)))
    hi = prm.hi - OPEN_MARGIN if prm.hi_open else prm.hi
    return np.linspace(lo, hi, n)


def _family_grid(spec, n1=400, n2=60):
    if spec.id == "SYM.1":
        return [{"model": m, "kappa": k} for m in ("real", "complex", "product") for k in (1.0, -1.0)]
    if spec.id == "SYM.5":
        return [{"kappa1": s, "kappa2": float(r)} for s in (1.0, -1.0)
                for r in np.linspace(-3, 3, 241) if abs(abs(r) - 1) > 1e-9 and abs(r) > 1e-9]
    if spec.symmetric:
        return [{"kappa": 1.0}, {"kappa": -1.0}]
    if not spec.params:
        return [{}]
    n = n1 if len(spec.params) == 1 else n2
    axes = [_axis(p, n) for p in spec.params]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = [dict(zip(spec.param_names, map(float, x))) for x in zip(*(m.ravel() for m in mesh))]
    if spec.id == "E.2":
        pts += [dict(p, branch=1) for p in pts if p["lam"] < 0]
    if spec.id == "R.3":
        pts = [p for p in pts if p["f"] <= p["p"]]
    return pts


def _fp_of(fid, p):
    from .catalog import build_instance
    if fid == "R.3":
        p = dict(p)
        p["f"], p["p"] = sorted((p["f"], p["p"]))
    return fingerprint(build_instance(fid, p).package())


@functools.lru_cache(maxsize=1)
def _catalog_grid():
    """Fingerprints on a parameter grid for every non-alias family."""
    entries = []
    for spec in list_families(include_aliases=False):
        for p in _family_grid(spec):
            try:
                entries.append((spec.id, p, _fp_of(spec.id, p)))
            except Exception:
                continue
    return entries


def _compatible(g, fp):
    if g.mode != fp.mode or g.t_star is None or fp.t_star is None:
        return False
    return (g.t_star == ALL_T) == (fp.t_star == ALL_T)


def classify_fingerprint(fp, families=8, starts=8):
    """Nearest catalog family (refined over its parameters) to ``fp``.

    Families are ranked by their nearest grid point; the best ``families``
    of them are refined by least squares from their ``starts`` nearest grid
    points.
    """
    if fp.mode == "flat":
        return CatalogMatch("flat", {}, 0.0)
    target = _fp_vector(fp)
    per_family = {}
    for fid, p, g in _catalog_grid():
        if _compatible(g, fp):
            per_family.setdefault(fid, []).append((float(np.max(np.abs(_fp_vector(g) - target))), p))
    if not per_family:
        return CatalogMatch(None, {}, math.inf)
    ranked = sorted(per_family.items(), key=lambda kv: min(d for d, _ in kv[1]))
    best = CatalogMatch(None, {}, math.inf)
    for fid, pts in ranked[:families]:
        pts.sort(key=lambda dp: dp[0])
        for d0, p0 in pts[:starts]:
            if d0 < best.distance:
                best = CatalogMatch(fid, p0, d0)
            m = _refine(fid, p0, target, fp)
            if m is not None and m.distance < best.distance:
                best = m
            if best.distance <= 1e-10:
                return best
    return best


def _refine(fid, p0, target, fp):
    spec = get_family(fid)
    names = [n for n in spec.param_names if isinstance(p0.get(n), float)]
    if not names or (spec.symmetric and fid != "SYM.5"):
        return None
    prms = {q.name: q for q in spec.params}
    lo = np.array([prms[n].lo if math.isfinite(prms[n].lo) else -1e3 for n in names])
    hi = np.array([prms[n].hi if math.isfinite(prms[n].hi) else 1e3 for n in names])
    extra = {k: v for k, v in p0.items() if k not in names}

    def params(x):
        p = dict(extra)
        p.update(zip(names, (float(v) for v in x)))
        return p

    def fun(x):
        try:
            g = _fp_of(fid, params(x))
        except Exception:
            return np.full(target.shape, 1e3)
        if not _compatible(g, fp):
            return np.full(target.shape, 1e3)
        return _fp_vector(g) - target

    x0 = np.clip(np.array([p0[n] for n in names]), lo, hi)
    try:
        sol = least_squares(fun, x0, bounds=(lo, hi), xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=200)
    except ValueError:
        return None
    p = params(sol.x)
    if fid == "R.3":
        p["f"], p["p"] = sorted((p["f"], p["p"]))
    return CatalogMatch(fid, p, float(np.max(np.abs(sol.fun))))
