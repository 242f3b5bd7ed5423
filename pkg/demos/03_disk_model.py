"""
From the half-plane to the Poincare disk
========================================

The Mobius map ``omega = i (1 + z) / (1 - z)`` with ``omega = mu + i sqrt(2) sigma``
carries the half-plane onto a disk of radius ``2 / sqrt(-K3)``.  Geodesics
become circles that meet the rim at right angles.
"""

# %%
import numpy as np

from _common import OUT
from visualspace import (CircleArc, GaussianPoint, VerticalLine, conformal_factor_check,
                         disk_distance, fisher_rao_distance, geodesic_image_in_disk,
                         half_plane_to_disk)
from visualspace.io import Curve, emit_svg

# %%
# The line element is a constant multiple of the disk metric.
for p in (GaussianPoint(0, 0.7), GaussianPoint(3, 0.2), GaussianPoint(-1, 4)):
    print(p, [round(conformal_factor_check(p, direction=d), 8) for d in ((1, 0), (0, 1), (1, 1))])

# %%
# So the half-plane distance is sqrt(2) times the disk distance.
a, b = GaussianPoint(-1, 0.5), GaussianPoint(2, 1.5)
print(fisher_rao_distance(a, b), np.sqrt(2) * disk_distance(half_plane_to_disk(a),
                                                            half_plane_to_disk(b)))

# %%
# Images of a few geodesics, with the basic circle for reference.
rim = [(2 * np.cos(t), 2 * np.sin(t)) for t in np.linspace(0, 2 * np.pi, 361)]
curves = [Curve.of("basic circle", rim, color="#000000")]
for arc in (VerticalLine(0.0), VerticalLine(1.0), CircleArc(0.0, 1.0), CircleArc(1.0, 1.7),
            CircleArc(-2.0, 0.8)):
    desc = geodesic_image_in_disk(arc)
    print(f"{arc}: diameter={desc.is_diameter} orthogonality residual "
          f"{desc.orthogonality_residual():.1e}")
    ts = np.linspace(-6, 6, 400) if isinstance(arc, VerticalLine) else np.linspace(1e-3, np.pi - 1e-3, 400)
    pts = [half_plane_to_disk(arc.point_at(float(t))) for t in ts]
    curves.append(Curve.of(str(arc), ((d.alpha, d.beta) for d in pts)))
emit_svg(curves, OUT / "disk_geodesics.svg", title="Geodesic images in the disk",
         xlabel="alpha", ylabel="beta", equal_aspect=True)
print("wrote", OUT / "disk_geodesics.svg")
