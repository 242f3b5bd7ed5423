"""
Geodesics of the Fisher-Rao half-plane
======================================

Shortest paths are vertical lines and half-ellipses
``(mu - c)**2 + 2 sigma**2 = r**2``.  Integrating the geodesic equations
with RK4 reproduces both the shape and the closed-form distance.
"""

# %%
import math

from _common import OUT
from visualspace import (GaussianPoint, GeodesicState, conserved_quantity, fisher_rao_distance,
                         geodesic_through, integrate_geodesic, shoot_geodesic)
from visualspace.io import Curve, emit_svg

p1, p2 = GaussianPoint(-1.0, 0.5), GaussianPoint(2.0, 1.0)
arc = geodesic_through(p1, p2)
print("closed-form arc:", arc)

# %%
# Shoot from p1 along the arc's tangent and stop when p2 is reached.
path = shoot_geodesic(p1, p2)
print(f"integrated length {path.arc_length:.10f}")
print(f"closed-form d_F   {fisher_rao_distance(p1, p2):.10f}")
print(f"max residual from the arc {max(arc.residual(s.point) for s in path.states):.2e}")

# %%
# Along a non-vertical geodesic ``2 sigma sigma' / mu' + mu`` stays equal to
# the centre ``c`` of the arc.
P = [conserved_quantity(s) for s in path.states]
print(f"first integral: {min(P):.12f} .. {max(P):.12f} (c = {arc.center_c:.12f})")

# %%
# A fan of geodesics leaving (0, 1) in different directions.
curves = []
for k, deg in enumerate(range(15, 180, 30)):
    a = math.radians(deg)
    start = GeodesicState.from_direction(GaussianPoint(0, 1), math.cos(a), math.sin(a))
    g = integrate_geodesic(start, 2.5)
    curves.append(Curve.of(f"{deg} deg", zip(g.mu, g.sigma)))
emit_svg(curves, OUT / "geodesic_fan.svg", title="Geodesics from (0, 1)",
         xlabel="mu", ylabel="sigma")
print("wrote", OUT / "geodesic_fan.svg")
