"""Command-line interface: ``critlab <command> ...``.

Every command prints a JSON report ``{"schema": 1, "command": ..., "items": [...]}``
(``list-families`` and ``report --format csv`` print tables). Exit codes: 0 when
every check passes, 1 when a check fails (the report lists the failures), 2 on
bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__, catalog
from .algebra import load_metric_spec
from .criticality import CRIT_TOL, Kind, critical_tensor, energy, solve_critical_t
from .curvature import curvature_package
from .errors import CritlabError
from .fingerprint import fingerprint
from .search import TEMPLATES, search_critical
from .soliton import algebraic_soliton_check, soliton_expected_criticality
from .symbolic import SYMBOLIC_FAMILIES, verify_family_symbolically

SCHEMA = 1


def _clean(x):
    """JSON-safe copy: numpy scalars/arrays to Python, non-finite floats to strings."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "value") and isinstance(getattr(x, "value"), str):
        return x.value
    return x


def _report(command, items, seed=None, failures=()):
    data = {"schema": SCHEMA, "command": command, "version": __version__}
    if seed is not None:
        data["seed"] = seed
    data["items"] = items
    data["failures"] = list(failures)
    # json.dumps writes floats with repr(), the shortest string that round-trips
    return json.dumps(_clean(data), indent=2, sort_keys=False, ensure_ascii=False)


def _threads(arg):
    env = os.environ.get("CRITLAB_THREADS")
    if env:
        return max(1, int(env))
    return max(1, arg or os.cpu_count() or 1)


def _emit(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- metric-file commands ------------------------------------------------------------

def _load(path):
    mla = load_metric_spec(path)
    return mla, curvature_package(mla.normalized()), curvature_package(mla)


def _criticality_item(path, mla, unit, tol, t=None):
    item = {"file": path, "label": mla.label}
    if t is None:
        res = solve_critical_t(unit, tol)
        item.update(kind=res.kind, t=res.t, residual=res.residual)
        ok = res.critical
    else:
        residual = float(np.max(np.abs(critical_tensor(unit, t))))
        item.update(kind=Kind.UNIQUE if residual <= tol else Kind.NOT_CRITICAL, t=t, residual=residual)
        ok = residual <= tol
    return item, ok


def cmd_check(args):
    mla, unit, raw = _load(args.file)
    item, ok = _criticality_item(args.file, mla, unit, args.tol, args.t)
    t = item["t"] if item["t"] is not None else 0.0
    item["energy"] = energy(raw, t).energy
    cert = algebraic_soliton_check(mla)
    item["soliton"] = cert is not None
    item["soliton_lambda"] = cert.lam if cert else None
    item["fingerprint"] = fingerprint(unit, args.tol).as_dict()
    item["pass"] = ok
    return [item], [] if ok else [f"{args.file}: not critical ({item['kind'].value})"]


def cmd_solve_t(args):
    mla, unit, _ = _load(args.file)
    item, ok = _criticality_item(args.file, mla, unit, args.tol)
    item["pass"] = ok
    return [item], [] if ok else [f"{args.file}: not critical"]


def cmd_energy(args):
    mla, _, raw = _load(args.file)
    e = energy(raw, args.t).energy
    return [{"file": args.file, "t": args.t, "energy": e, "pass": True}], []


def cmd_invariants(args):
    mla, unit, raw = _load(args.file)
    item = {"file": args.file, "tau": raw.tau, "norms": raw.norms,
            "fingerprint": fingerprint(unit, args.tol).as_dict(), "pass": True}
    return [item], []


def cmd_soliton(args):
    mla, unit, raw = _load(args.file)
    cert = algebraic_soliton_check(mla, args.tol)
    item = {"file": args.file, "soliton": cert is not None}
    if cert is not None:
        item.update(lam=cert.lam, derivation=cert.derivation, residual=cert.residual)
        try:
            crit = soliton_expected_criticality(cert, unit)
            item.update(critical_ok=crit.ok, t=crit.t, expected_t=crit.expected_t, detail=crit.detail)
        except CritlabError as exc:
            item.update(critical_ok=False, detail=str(exc))
    item["pass"] = True
    return [item], []


# -- catalog commands ----------------------------------------------------------------

def _sample_items(fid, samples, tol, seed):
    spec = catalog.get_family(fid)
    n = samples if spec.params else 1
    items = []
    for inst in catalog.sample_instances(fid, n, seed):
        rec = catalog.check_instance(inst, tol)
        fp = fingerprint(catalog.normalized_package(inst))
        items.append({"id": fid, "params": dict(inst.params),
                      "t": rec.t_solved if rec.kind == Kind.UNIQUE.value else rec.t_formula,
                      "kind": rec.kind, "residual": rec.residual, "energy": rec.energy,
                      "soliton": rec.soliton, "soliton_lambda": rec.soliton_lambda,
                      "fingerprint": fp.as_dict(), "pass": rec.passed, "failures": rec.failures})
    return items


def _verify_items(ids, samples, tol, seed, threads):
    run = lambda fid: _sample_items(fid, samples, tol, seed)  # noqa: E731
    n = _threads(threads)
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as ex:
            chunks = list(ex.map(run, ids))
    else:
        chunks = [run(fid) for fid in ids]
    items = [it for ch in chunks for it in ch]
    failures = [f"{it['id']} {it['params']}: {'; '.join(it['failures'])}" for it in items if not it["pass"]]
    return items, failures


def _family_ids(args):
    if args.all or not args.family:
        return [f.id for f in catalog.list_families()]
    catalog.get_family(args.family)
    return [args.family]


def cmd_verify(args):
    return _verify_items(_family_ids(args), args.samples, args.tol, args.seed, args.threads)


def cmd_list_families(args):
    if args.json:
        print(catalog.families_json())
        return None
    rows = [("id", "group", "parameters", "t", "energy", "soliton")]
    for f in catalog.list_families():
        rows.append((f.id, f.group, ",".join(f.param_names) or "-", f.t_range, f.energy_range,
                     {True: "yes", False: "no", None: "-"}[f.soliton]))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return None


def cmd_search(args):
    res = search_critical(args.template, starts=args.starts, seed=args.seed, tol=args.tol,
                          threads=_threads(args.threads))
    items = []
    failures = []
    for h in res.hits:
        d = h.as_dict()
        d["pass"] = bool(h.match is not None and h.match.matched)
        if not d["pass"]:
            failures.append(f"{args.template}: unmatched hit at {h.params}")
        items.append(d)
    summary = {"template": res.template, "starts": res.starts, "converged": res.converged,
               "hits": len(res.hits)}
    return [summary] + items, failures


def cmd_symbolic(args):
    ids = list(SYMBOLIC_FAMILIES) if args.all or not args.family else [args.family]
    items, failures = [], []
    for fid in ids:
        rec = verify_family_symbolically(fid)
        d = rec.as_dict()
        items.append(d)
        if not rec.passed:
            failures.append(f"{fid}: nonzero remainders {d['nonzero_remainders']}")
    return items, failures


CSV_TAIL = ["t", "residual", "energy", "soliton", "r1", "r2", "r3", "r4", "pass"]


def cmd_report(args):
    ids = [f.id for f in catalog.list_families()]
    items, failures = _verify_items(ids, args.samples, args.tol, args.seed, args.threads)
    if args.format == "json":
        return items, failures
    names = sorted({k for it in items for k in it["params"]})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id"] + names + CSV_TAIL)
    for it in items:
        fp = it["fingerprint"]
        row = [it["id"]] + [_csv(it["params"].get(n, "")) for n in names]
        row += [_csv(it["t"]), _csv(it["residual"]), _csv(it["energy"]), _csv(it["soliton"]),
                _csv(fp["r1"]), _csv(fp["r2"]), _csv(fp["r3"]), _csv(fp["r4"]), _csv(it["pass"])]
        w.writerow(row)
    _emit(args, buf.getvalue().rstrip("\n"))
    return None, failures


def _csv(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)


# -- argument parsing ----------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="critlab", description="Critical metrics of quadratic "
                                "curvature functionals on four-dimensional Lie groups.")
    p.add_argument("--version", action="version", version=f"critlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, tol=True, out=True):
        if tol:
            sp.add_argument("--tol", type=float, default=CRIT_TOL)
        if out:
            sp.add_argument("--out", help="write the report to this file instead of stdout")

    sp = sub.add_parser("list-families", help="print the catalog table")
    sp.add_argument("--json", action="store_true", help="machine form (families.json)")
    sp.set_defaults(func=cmd_list_families)

    sp = sub.add_parser("verify", help="check sampled catalog instances")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--family")
    g.add_argument("--all", action="store_true")
    sp.add_argument("--samples", type=int, default=16)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("check", help="criticality, energy, soliton and invariants of a metric file")
    sp.add_argument("file")
    sp.add_argument("--t", type=float, default=None, help="evaluate F_t at this t instead of solving")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("solve-t", help="solve A + t B = 0 for a metric file")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_solve_t)

    sp = sub.add_parser("energy", help="energy |rho|^2 + t tau^2 of a metric file")
    sp.add_argument("file")
    sp.add_argument("--t", type=float, required=True)
    common(sp, tol=False)
    sp.set_defaults(func=cmd_energy)

    sp = sub.add_parser("invariants", help="curvature norms and fingerprint of a metric file")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("soliton", help="algebraic Ricci soliton test for a metric file")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_soliton)

    sp = sub.add_parser("search", help="multistart search for critical metrics in a template")
    sp.add_argument("--template", required=True, choices=sorted(TEMPLATES))
    sp.add_argument("--starts", type=int, default=64)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("symbolic", help="exact polynomial verification of a family")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--family")
    g.add_argument("--all", action="store_true")
    common(sp, tol=False)
    sp.set_defaults(func=cmd_symbolic)

    sp = sub.add_parser("report", help="full catalog report")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--samples", type=int, default=16)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=None)
    common(sp)
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except FileNotFoundError as exc:
        print(f"critlab: error: file not found: {exc.filename}", file=sys.stderr)
        return 2
    except CritlabError as exc:
        print(f"critlab: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if out is None:
        return 0
    items, failures = out
    if items is not None:
        _emit(args, _report(args.command, items, getattr(args, "seed", None), failures))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
