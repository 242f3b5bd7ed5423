"""
Parallel and distance alleys
============================

Two rows of lights start from the same far pair.  Each row keeps the
Fisher-Rao distance between its left and right light constant while the
tuning-curve width changes with depth; the two alleys differ only in their
width profiles.
"""

# %%
from _common import OUT
from visualspace.experiments import alley_curves, default_alley_config, table1_observer
from visualspace.io import Curve, emit_svg
from visualspace.luneburg import horopter_curve, solve_lambda0

prof = table1_observer("A.J")
res = alley_curves(default_alley_config(prof, anchor_distance=300, anchor_halfwidth=25))
for alley in (res.parallel, res.distance):
    print(f"{alley.name}: D* = {alley.pair_distance:.4f}")
    for row in alley.rows[::3]:
        print(f"   x={row.right.x:7.2f} cm  y=+/-{row.right.y:6.3f} cm  sigma={row.sigma:.4f}")

# %%
# The widths set the visual separation mu = sigma sqrt(cosh(D*/sqrt 2) - 1).
# The parallel alley has the larger separation, yet its physical points sit
# deeper, so at equal depth it runs inside the distance alley.
curves = []
for alley, color in ((res.parallel, "#1f77b4"), (res.distance, "#d62728")):
    curves.append(Curve.of(f"{alley.name} right", ((p.y, p.x) for p in alley.right), color=color))
    curves.append(Curve.of(f"{alley.name} left", ((p.y, p.x) for p in alley.left), color=color))
lam0 = solve_lambda0(prof)
h = [p for p in horopter_curve(prof, lam0 / 2) if abs(p.y) < 40]
curves.append(Curve.of("horopter at 2 L0", ((p.y, p.x) for p in h), color="#7f7f7f", dashed=True))
emit_svg(curves, OUT / "alleys_AJ.svg", title="Alleys, A.J", xlabel="y (cm)", ylabel="x (cm)")
print("wrote", OUT / "alleys_AJ.svg")
