"""
Frontal horopters and the straight-line distance
================================================

An observer with depth constant ``tau`` and eye separation ``nu`` sees a
geodesic of the disk that is symmetric about the median as a frontal
"straight" line.  Physically it bends toward the observer when near and
away when far; at one distance ``L0`` it is straight.
"""

# %%
from _common import OUT
from visualspace.experiments import table1_observer, table1_report
from visualspace.io import Curve, emit_svg
from visualspace.luneburg import horopter_curve, median_curvature, solve_lambda0

for r in table1_report():
    print(f"{r.name:6s} tau={r.tau:5.2f} nu={r.nu:4.2f}  L0={r.computed_L0:7.2f} cm "
          f"(table {r.reference_L0:6.2f}, measured {r.observed_L0})")

# %%
# Curvature at the median as the vertex moves through L0.
prof = table1_observer("A.J")
lam0 = solve_lambda0(prof)
for f in (2.0, 1.2, 1.0, 0.8, 0.5):
    print(f"vertex at {1 / f:.2f} L0: d2x/dy2 = {median_curvature(prof, f * lam0):+.3e} 1/cm")

# %%
curves = [Curve.of(f"{1 / f:g} L0", ((p.y, p.x) for p in horopter_curve(prof, f * lam0)))
          for f in (2.0, 1.0, 0.5)]
emit_svg(curves, OUT / "horopters_AJ.svg", title="Frontal horopters, A.J",
         xlabel="y (cm)", ylabel="x (cm)", equal_aspect=True)
print("wrote", OUT / "horopters_AJ.svg")
