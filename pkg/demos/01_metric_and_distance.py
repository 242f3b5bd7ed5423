"""
Gaussian tuning curves as points of a curved surface
=====================================================

A tuning curve with preferred stimulus ``mu`` and width ``sigma`` is a point
of the upper half-plane.  The Fisher information turns that half-plane into
a surface of constant negative curvature.
"""

# %%
# The metric is diagonal and depends only on the width: narrow curves are
# far apart even when their peaks are close.
import math

import numpy as np

from visualspace import (GaussianPoint, fisher_matrix_numeric, fisher_rao_distance,
                         kl_divergence, line_element, metric_tensor, scalar_curvature)

for s in (0.5, 1.0, 2.0):
    p = GaussianPoint(0.0, s)
    g = metric_tensor(p)
    n = fisher_matrix_numeric(p)
    print(f"sigma={s}: closed ({g.g_mumu:.4f}, {g.g_sigmasigma:.4f})  "
          f"quadrature ({n.g_mumu:.8f}, {n.g_sigmasigma:.8f})")

# %%
# Locally the metric is twice the KL divergence.
p = GaussianPoint(0.0, 1.0)
for eps in (1e-1, 1e-2, 1e-3):
    q = GaussianPoint(eps, 1.0 + eps)
    print(f"eps={eps:g}: 2 KL / ds^2 = {2 * kl_divergence(p, q) / line_element(p, eps, eps):.6f}")

# %%
# Curvature: exactly -1 in closed form, and the same from finite differences.
print("scalar curvature:", scalar_curvature(p), scalar_curvature(GaussianPoint(1, 2), "numeric"))

# %%
# Distances.  Shifting the peak by one unit costs sqrt(2) ln 2; the same shift
# between wide curves costs less.
for s in (0.5, 1.0, 2.0, 4.0):
    d = fisher_rao_distance(GaussianPoint(0, s), GaussianPoint(1, s))
    print(f"sigma={s}: d((0, s), (1, s)) = {d:.6f}")
print("sqrt(2) ln 2 =", math.sqrt(2) * math.log(2))

# %%
# The distance grows only logarithmically with the peak separation.
seps = np.array([1, 10, 100, 1000])
print([round(fisher_rao_distance(GaussianPoint(0, 1), GaussianPoint(float(x), 1)), 3)
       for x in seps])
