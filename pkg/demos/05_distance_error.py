"""
Misjudging the distance between two dots
========================================

One dot is fixated (width ``sigma1``), the other sits ``d`` degrees away in
the periphery with a wider tuning curve ``sigma2 = (d + 126.540) / 167.785``.
The error is the gap between the Fisher-Rao distance and ``d``.
"""

# %%
from _common import OUT
from visualspace.experiments import DEFAULT_SIGMA1, LinearProfile, error_curve
from visualspace.io import Curve, emit_svg

rows = error_curve(DEFAULT_SIGMA1)
print(" sep  sigma1  sigma2     d_F   error")
for r in rows:
    print(f"{r.separation:4.0f}  {r.sigma1:6.3f}  {r.sigma2:6.3f}  {r.fisher_distance:6.3f}  "
          f"{r.error:6.3f}")

# %%
# Without attention narrowing the foveal curve the error looks different.
flat = error_curve(LinearProfile.constant(0.9, (2, 16)))
emit_svg([Curve.of("shrinking sigma1", ((r.separation, r.error) for r in rows)),
          Curve.of("sigma1 = 0.9", ((r.separation, r.error) for r in flat), dashed=True)],
         OUT / "distance_error.svg", title="Estimation error",
         xlabel="separation (deg)", ylabel="|d_F - d|")
print("wrote", OUT / "distance_error.svg")
