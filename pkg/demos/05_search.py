"""
Searching for critical metrics
==============================

Multistart least squares over a bracket template, t eliminated by projection,
hits matched against the catalog.
"""

# %%
from critlab.search import GROUP_TEMPLATES, search_critical

for tid in GROUP_TEMPLATES:
    res = search_critical(tid, starts=64, seed=0)
    print(f"{tid}: {res.converged}/{res.starts} starts converged, {len(res.hits)} distinct hits")
    for h in res.hits[:5]:
        t = "AllT" if h.t is None else f"{h.t:.6f}"
        print(f"   t={t:>10s}  -> {h.match.family} {h.match.params}  (distance {h.match.distance:.1e})")
