"""
The catalog of critical metrics
===============================

Each family carries its parameter domain, brackets, closed-form t and energy.
"""

# %%
from critlab import catalog
from critlab.criticality import solve_critical_t

for f in catalog.list_families(include_aliases=False):
    print(f"{f.id:6s} {f.group:42s} t in {f.t_range}")

# %%
inst = catalog.build_instance("H.5", {"c": 0.3})
print(inst.params)
print("closed form t:", inst.expected_t)
print("solved t:     ", solve_critical_t(catalog.normalized_package(inst)).t)
print("energy:", inst.expected_energy)

# %%
# verify every family on 16 random admissible points
for f in catalog.list_families():
    rep = catalog.verify_family(f.id, samples=16)
    print(f"{f.id:6s} passed={rep.passed} worst residual={rep.worst_residual:.1e}")

# %%
# the named Bach-flat (F_{-1/3}-critical) instances
for inst in catalog.bach_flat_specials():
    print(inst.family, {k: round(v, 6) for k, v in inst.params.items() if isinstance(v, float)})

# %%
# families that turn out to be the same metric in another basis
for a in catalog.alias_identifications():
    print(f"{a.source} -> {a.target}  defect {a.defect():.1e}")
