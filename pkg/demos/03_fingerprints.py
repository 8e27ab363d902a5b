"""
Telling metrics apart
=====================

The fingerprint (t*, |rho|^2/tau^2, |R|^2/tau^2, |nabla rho|^2/tau^3,
|nabla R|^2/tau^3) does not change under scaling.
"""

# %%
import math

from critlab import catalog
from critlab.fingerprint import distance, distinct, fingerprint


def fp(fid, params=None):
    return fingerprint(catalog.normalized_package(catalog.build_instance(fid, params)))


r1 = fp("R.1")
r5 = fp("R.5", {"p": (1 - math.sqrt(33)) / 16})
print(r1)
print(r5)
print("both critical at t = -3; distinct:", distinct(r1, r5), "r3 =", r1.r3, r5.r3, -776 / 81)

# %%
# H.4 at a = 1 and R x S^3 are both Bach-flat
a, b = fp("H.4", {"a": 1.0}), fp("SYM.2", {"kappa": 1.0})
print(distance(a, b), distinct(a, b))

# %%
# aliases have identical fingerprints
for al in catalog.alias_identifications():
    print(al.source, al.target, distance(fp(al.source, al.source_params), fp(al.target, al.target_params)))
