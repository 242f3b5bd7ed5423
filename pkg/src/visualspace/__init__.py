"""Fisher-Rao geometry of Gaussian tuning curves as a model of binocular visual space.

The statistical manifold of Gaussian densities ``(mu, sigma)`` with the
Fisher-Rao metric ``(dmu**2 + 2 dsigma**2) / sigma**2`` is a hyperbolic
plane.  This package provides its metric, geodesics and distance, the
conformal map to the Poincare disk, the Luneburg mapping from physical
bipolar coordinates into that disk, and simulations of horopters, alleys
and a two-dot distance-estimation experiment.
"""

from .errors import (ConformalCheckError, CurvatureError, GeodesicError, IdealPointError,
                     OutputError, ProfileDomainError, QuadratureError, RootFindingError,
                     VisualSpaceError)
from .manifold import (ChristoffelSymbols2, GaussianPoint, MetricTensor2, QuadratureSpec,
                       TuningCurve, christoffel_symbols, fisher_matrix_numeric,
                       fisher_rao_distance, kl_divergence, line_element, metric_tensor,
                       scalar_curvature, tuning_curve_eval)
from .geodesics import (CircleArc, GeodesicPath, GeodesicState, VerticalLine,
                        conserved_quantity, geodesic_ode_rhs, geodesic_through,
                        integrate_geodesic, shoot_geodesic)
from .maps import (DiskCircleDescriptor, DiskPoint, conformal_factor_check, disk_distance,
                   disk_to_half_plane, geodesic_image_in_disk, half_plane_to_disk)
from .luneburg import (BipolarPoint, ObserverProfile, PhysicalPoint, PolarVisual,
                       horopter_curve, inverse_luneburg, luneburg_map, physical_from_bipolar,
                       solve_lambda0, straight_horopter_distance)
from .experiments import (TABLE1, AlleyConfig, LinearProfile, SeparationTrial, TableProfile,
                          alley_curves, error_curve, estimation_error, sigma2_of_eccentricity,
                          table1_report)

__version__ = "0.1.0"
