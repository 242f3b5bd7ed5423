"""Physical space, visual space and the Luneburg mapping between them.

Physical stimuli in the horizontal plane are given in bipolar coordinates
``(lambda_, psi)``: parallax (convergence angle) and latitude.  Visual space
is the Poincare disk with polar coordinates ``(rho1, phi1)``; the mapping is
``rho1 = 2 exp(-tau lambda_)``, ``phi1 = psi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numerics import RootResult, bisect
from .errors import IdealPointError
from .maps import DEFAULT_K3, basic_radius

LAMBDA0_BRACKET = (1e-6, 1.5)


@dataclass(frozen=True)
class BipolarPoint:
    lambda_: float
    psi: float

    def __post_init__(self):
        if not (math.isfinite(self.lambda_) and self.lambda_ > 0):
            raise ValueError(f"parallax must be positive, got {self.lambda_}")
        if not abs(self.psi) < 0.5 * math.pi:
            raise ValueError(f"latitude must lie in (-pi/2, pi/2), got {self.psi}")


@dataclass(frozen=True)
class PolarVisual:
    rho: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.rho) and self.rho >= 0 and math.isfinite(self.phi)):
            raise ValueError(f"invalid polar coordinates ({self.rho}, {self.phi})")


@dataclass(frozen=True)
class ObserverProfile:
    """Personal constants of one observer.

    ``tau`` is the depth constant of the mapping, ``nu`` the interpupillary
    distance in cm, ``K3`` the curvature constant of the disk.
    """

    tau: float
    nu: float
    K3: float = DEFAULT_K3
    name: str = ""

    def __post_init__(self):
        for key in ("tau", "nu"):
            v = getattr(self, key)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{key} must be positive and finite, got {v}")
        if not (math.isfinite(self.K3) and self.K3 < 0):
            raise ValueError(f"K3 must be negative, got {self.K3}")

    @property
    def kappa(self) -> float:
        return math.log(1.0 / -self.K3) / (2.0 * self.tau)

    @property
    def basic_radius(self) -> float:
        return basic_radius(self.K3)


@dataclass(frozen=True)
class PhysicalPoint:
    """Position in the horizontal plane, cm.  ``x`` is depth along the median, ``y`` lateral."""

    x: float
    y: float

    @property
    def in_front(self) -> bool:
        return self.x > 0


def polar_to_cartesian(pv: PolarVisual, *, half_plane: bool = False) -> tuple[float, float]:
    """``(rho cos phi, rho sin phi)``.

    With ``half_plane=True`` the second coordinate is a width and ``phi``
    must lie in ``(0, pi)``.
    """
    if half_plane and not 0.0 < pv.phi < math.pi:
        raise ValueError(f"phi={pv.phi} is outside (0, pi): no point of the half-plane")
    return (pv.rho * math.cos(pv.phi), pv.rho * math.sin(pv.phi))


def cartesian_to_polar(a: float, b: float) -> PolarVisual:
    return PolarVisual(math.hypot(a, b), math.atan2(b, a))


def luneburg_map(b: BipolarPoint, profile: ObserverProfile) -> PolarVisual:
    return PolarVisual(2.0 * math.exp(-profile.tau * b.lambda_), b.psi)


def inverse_luneburg(rho1: float, profile: ObserverProfile) -> float:
    """Parallax ``lambda_`` whose visual radius is ``rho1``."""
    if not 0.0 < rho1 < 2.0:
        raise IdealPointError(f"visual radius {rho1!r} is outside (0, 2)")
    return -math.log(rho1 / 2.0) / profile.tau


def straight_horopter_equation(lam: float, profile: ObserverProfile) -> float:
    """Left side of ``tan(l/2) tanh(tau (l + kappa)) - 1/(4 tau) = 0``."""
    tau = profile.tau
    return math.tan(0.5 * lam) * math.tanh(tau * (lam + profile.kappa)) - 0.25 / tau


def solve_lambda0(profile: ObserverProfile, *, full_output: bool = False,
                  bracket: tuple[float, float] = LAMBDA0_BRACKET, ftol: float = 1e-12):
    """Parallax of the straight-line horopter by bisection.

    Returns the root, or ``(root, RootResult)`` when ``full_output`` is set.
    Raises ``RootFindingError`` if the equation has no sign change on
    ``bracket``.
    """
    res: RootResult = bisect(lambda lam: straight_horopter_equation(lam, profile),
                             *bracket, ftol=ftol)
    return (res.root, res) if full_output else res.root


def straight_horopter_distance(profile: ObserverProfile) -> float:
    """``L0 = nu / lambda0`` in cm."""
    return profile.nu / solve_lambda0(profile)


def physical_from_bipolar(lambda_: float, phi1: float, nu: float) -> PhysicalPoint:
    """Cartesian position of the point with parallax ``lambda_`` and latitude ``phi1``.

    The eyes sit at ``y = +/- nu/2``; points of equal parallax lie on a
    Vieth-Muller circle.
    """
    s = math.sin(lambda_)
    if s == 0:
        raise ValueError("sin(lambda_) = 0: the point is at infinity")
    return PhysicalPoint(nu * (math.cos(2 * phi1) + math.cos(lambda_)) / (2 * s),
                         nu * math.sin(2 * phi1) / (2 * s))


def parallax_at_depth(x: float, nu: float) -> float:
    """Parallax of the median-plane point at depth ``x`` cm."""
    if not x > 0:
        raise ValueError(f"depth must be positive, got {x}")
    return 2.0 * math.atan(0.5 * nu / x)


@dataclass(frozen=True)
class HoropterCircle:
    """Disk geodesic symmetric about the alpha-axis with vertex at ``(vertex_rho, 0)``."""

    vertex_rho: float
    center: float
    radius: float
    basic_radius: float

    @classmethod
    def through_vertex(cls, vertex_rho: float, rb: float) -> "HoropterCircle":
        if not 0 < vertex_rho < rb:
            raise IdealPointError(
                f"horopter vertex rho={vertex_rho!r} is not inside the basic circle {rb}")
        c = (vertex_rho**2 + rb**2) / (2.0 * vertex_rho)
        return cls(vertex_rho, c, math.sqrt(c * c - rb * rb), rb)

    def angle_at_rho(self, rho: float) -> float:
        """Polar angle of the circle point at visual radius ``rho``."""
        return math.acos((rho * rho + self.basic_radius**2) / (2.0 * self.center * rho))

    @property
    def max_angle(self) -> float:
        """Largest polar angle with a physical image (``rho < min(2, R_b)``)."""
        return self.angle_at_rho(min(2.0, self.basic_radius))

    def rho_at(self, phi1):
        """Visual radius of the circle along the ray of polar angle ``phi1``."""
        cphi = self.center * np.cos(phi1)
        disc = cphi * cphi - self.basic_radius**2
        if np.any(disc < 0):
            raise ValueError("ray misses the horopter circle")
        # smaller root of rho**2 - 2 c rho cos(phi) + R_b**2 = 0, computed stably
        return self.basic_radius**2 / (cphi + np.sqrt(disc))


def horopter_circle(profile: ObserverProfile, lambda_vertex: float) -> HoropterCircle:
    if not lambda_vertex > 0:
        raise ValueError(f"vertex parallax must be positive, got {lambda_vertex}")
    return HoropterCircle.through_vertex(2.0 * math.exp(-profile.tau * lambda_vertex),
                                         profile.basic_radius)


def horopter_curve(profile: ObserverProfile, lambda_vertex: float, n_samples: int = 201,
                   max_angle: float | None = None, *, angle_fraction: float = 0.9
                   ) -> list[PhysicalPoint]:
    """Physical locus of the frontal horopter through the median point at ``lambda_vertex``.

    The horopter is the disk geodesic orthogonal to the basic circle and
    symmetric about the median.  It is sampled at ``n_samples`` polar angles
    spread evenly over ``[-max_angle, max_angle]`` (default: ``angle_fraction``
    of the angle at which it reaches the basic circle) and each sample is
    carried back to physical coordinates.
    """
    if n_samples < 3:
        raise ValueError("n_samples must be >= 3")
    circ = horopter_circle(profile, lambda_vertex)
    limit = circ.max_angle
    if max_angle is None:
        max_angle = angle_fraction * limit
    if not 0 < max_angle < min(limit, 0.5 * math.pi):
        raise ValueError(f"max_angle must lie in (0, {min(limit, 0.5 * math.pi):.6g})")
    phis = np.linspace(-max_angle, max_angle, n_samples)
    rhos = circ.rho_at(phis)
    return [physical_from_bipolar(inverse_luneburg(float(r), profile), float(phi), profile.nu)
            for r, phi in zip(rhos, phis)]


def median_curvature(profile: ObserverProfile, lambda_vertex: float,
                     delta: float = 1e-3) -> float:
    """``d2x/dy2`` of the horopter at the median, from a symmetric three-point stencil.

    The curve is even in ``y``, so ``x(y) = x0 + k y**2 / 2 + O(y**4)`` and
    the central difference reduces to ``2 (x(delta) - x0) / y(delta)**2``.
    """
    circ = horopter_circle(profile, lambda_vertex)
    p0 = physical_from_bipolar(lambda_vertex, 0.0, profile.nu)
    lam1 = inverse_luneburg(float(circ.rho_at(delta)), profile)
    p1 = physical_from_bipolar(lam1, delta, profile.nu)
    return 2.0 * (p1.x - p0.x) / p1.y**2
