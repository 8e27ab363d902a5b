"""
Curvature of a left-invariant metric
====================================

Build H^3 x R from its single bracket, look at its curvature, and find the
value of t for which it is critical.
"""

# %%
import numpy as np

import critlab as cl

g = cl.new_metric_lie_algebra(4, [(1, 2, 3, 1.0)], "H3xR")
pkg = cl.curvature_package(g)
print("Ricci:\n", np.round(pkg.ric, 12))
print("scalar curvature:", pkg.tau)
print("sectional K(e1,e2), K(e1,e3):", cl.sectional_curvature(pkg, 0, 1), cl.sectional_curvature(pkg, 0, 2))

# %%
# F_t = A + t B; solve for t
a, b = cl.split_affine(pkg)
print("A:\n", np.round(a, 12))
res = cl.solve_critical_t(pkg)
print(res.kind.value, res.t, "residual", res.residual)
print("energy at t*:", cl.energy(pkg, res.t).energy)

# %%
# scaling the brackets does not change t
for s in (0.3, 1.0, 4.0):
    print(s, cl.solve_critical_t(cl.curvature_package(cl.scale_structure(g, s)), tol=1e-9 * s ** 4).t)

# %%
# Einstein metrics are critical for every t
hyp = cl.new_metric_lie_algebra(4, [(1, 4, 1, 1.0), (2, 4, 2, 1.0), (3, 4, 3, 1.0)])
print(cl.solve_critical_t(cl.curvature_package(hyp)).kind.value)

# %%
# an algebraic Ricci soliton: Ric = lambda Id + D
cert = cl.algebraic_soliton_check(g)
print("lambda =", cert.lam)
print("D =\n", np.round(cert.derivation, 12))
