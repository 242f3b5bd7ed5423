"""Conformal correspondence between the half-plane and the Poincare disk.

The half-plane point ``(mu, sigma)`` is written as the complex number
``omega = mu + i sqrt(2) sigma`` and sent to the unit disk by the inverse of
``omega = i (1 + z) / (1 - z)``.  Disk coordinates are then scaled to the
basic circle of radius ``2 / sqrt(-K3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import ConformalCheckError, IdealPointError
from .geodesics import CircleArc, GeodesicArc, VerticalLine
from .manifold import SQRT2, GaussianPoint, line_element

DEFAULT_K3 = -1.0


def basic_radius(K3: float = DEFAULT_K3) -> float:
    """Radius ``2 / sqrt(-K3)`` of the basic circle."""
    if not K3 < 0:
        raise ValueError(f"K3 must be negative, got {K3}")
    return 2.0 / math.sqrt(-K3)


@dataclass(frozen=True)
class DiskPoint:
    alpha: float
    beta: float

    @property
    def radius(self) -> float:
        return math.hypot(self.alpha, self.beta)

    @property
    def angle(self) -> float:
        return math.atan2(self.beta, self.alpha)

    def as_complex(self) -> complex:
        return complex(self.alpha, self.beta)


@dataclass(frozen=True)
class HalfPlaneComplex:
    re: float
    im: float

    def __post_init__(self):
        if not self.im > 0:
            raise ValueError(f"imaginary part must be positive, got {self.im}")

    @classmethod
    def from_point(cls, p: GaussianPoint) -> "HalfPlaneComplex":
        return cls(p.mu, SQRT2 * p.sigma)

    def to_point(self) -> GaussianPoint:
        return GaussianPoint(self.re, self.im / SQRT2)

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class DiskCircleDescriptor:
    """Image of a geodesic in the disk: a circle or, when ``is_diameter``, a diameter.

    For a diameter ``direction`` holds the unit vector along it and
    ``center``/``radius`` are ``None``.
    """

    is_diameter: bool
    center: Optional[tuple[float, float]] = None
    radius: Optional[float] = None
    direction: Optional[tuple[float, float]] = None
    basic_radius: float = 2.0

    def orthogonality_residual(self) -> float:
        """``|d**2 - rho**2 - R_b**2|`` scaled by ``max(d**2, R_b**2)``; zero for diameters."""
        if self.is_diameter:
            return 0.0
        d2 = self.center[0] ** 2 + self.center[1] ** 2
        return abs(d2 - self.radius**2 - self.basic_radius**2) / max(d2, self.basic_radius**2)

    def distance_to(self, d: DiskPoint) -> float:
        """Euclidean distance from ``d`` to the circle or diameter line."""
        if self.is_diameter:
            ux, uy = self.direction
            return abs(d.alpha * uy - d.beta * ux)
        return abs(math.hypot(d.alpha - self.center[0], d.beta - self.center[1]) - self.radius)


def _to_unit_disk(omega: complex) -> complex:
    return (omega - 1j) / (omega + 1j)


def half_plane_to_disk(p: GaussianPoint, K3: float = DEFAULT_K3) -> DiskPoint:
    z = basic_radius(K3) * _to_unit_disk(HalfPlaneComplex.from_point(p).as_complex())
    return DiskPoint(z.real, z.imag)


def disk_to_half_plane(d: DiskPoint, K3: float = DEFAULT_K3) -> GaussianPoint:
    """Inverse Mobius map from the basic disk to the half-plane.

    Raises
    ------
    IdealPointError
        If ``d`` lies on or outside the basic circle.
    """
    rb = basic_radius(K3)
    z = d.as_complex() / rb
    if not abs(z) < 1.0:
        raise IdealPointError(
            f"ideal point has no half-plane image: |(alpha, beta)| = {abs(z) * rb:.12g} "
            f">= {rb:.12g}")
    omega = 1j * (1.0 + z) / (1.0 - z)
    if not omega.imag > 0:
        raise IdealPointError(f"point {d} is numerically on the basic circle")
    return GaussianPoint(omega.real, omega.imag / SQRT2)


def ideal_to_disk(mu: float, K3: float = DEFAULT_K3) -> DiskPoint:
    """Boundary extension of the map: the ideal point ``(mu, 0)`` (or infinity)."""
    rb = basic_radius(K3)
    z = 1.0 + 0j if math.isinf(mu) else _to_unit_disk(complex(mu, 0.0))
    return DiskPoint(rb * z.real, rb * z.imag)


def disk_distance(d1: DiskPoint, d2: DiskPoint, K3: float = DEFAULT_K3) -> float:
    """Distance for the metric ``4|dz|**2 / (1 - |z|**2)**2`` on the normalized disk."""
    rb = basic_radius(K3)
    z1, z2 = d1.as_complex() / rb, d2.as_complex() / rb
    return 2.0 * math.atanh(abs(z1 - z2) / abs(1.0 - z1.conjugate() * z2))


def _circumcircle(a: complex, b: complex, c: complex):
    ab, ac = b - a, c - a
    cross = ab.real * ac.imag - ab.imag * ac.real
    scale = max(abs(ab), abs(ac)) ** 2
    if abs(cross) <= 1e-13 * scale:
        return None
    d = 2.0 * cross
    ab2, ac2 = abs(ab) ** 2, abs(ac) ** 2
    ux = (ac.imag * ab2 - ab.imag * ac2) / d
    uy = (ab.real * ac2 - ac.real * ab2) / d
    center = a + complex(ux, uy)
    return center, abs(center - a)


def geodesic_image_in_disk(arc: GeodesicArc, K3: float = DEFAULT_K3) -> DiskCircleDescriptor:
    """Circle (or diameter) carrying the image of ``arc`` in the basic disk.

    The circle is fitted through the images of the two ideal endpoints and
    one interior point of the arc, so orthogonality to the basic circle is
    a property of the result rather than an assumption.
    """
    rb = basic_radius(K3)
    lo, hi = arc.ideal_endpoints()
    if isinstance(arc, VerticalLine):
        inner = GaussianPoint(arc.mu0, 1.0)
    else:
        inner = arc.point_at(0.5 * math.pi)
    e1 = ideal_to_disk(lo, K3).as_complex()
    e2 = ideal_to_disk(hi, K3).as_complex()
    m = half_plane_to_disk(inner, K3).as_complex()
    fit = _circumcircle(e1, e2, m)
    if fit is None:
        u = (e2 - e1) / abs(e2 - e1)
        return DiskCircleDescriptor(True, direction=(u.real, u.imag), basic_radius=rb)
    center, radius = fit
    return DiskCircleDescriptor(False, center=(center.real, center.imag), radius=radius,
                                basic_radius=rb)


def conformal_factor_check(p: GaussianPoint, K3: float = DEFAULT_K3, h: float = 1e-6,
                           direction: tuple[float, float] = (1.0, 0.0)) -> float:
    """Ratio of the half-plane line element to the pulled-back disk line element.

    A displacement of Euclidean size ``h`` along ``direction`` is mapped to
    the normalized unit disk, where the line element
    ``4|dz|**2 / (1 - |z|**2)**2`` is evaluated at the midpoint image.
    """
    n = math.hypot(*direction)
    if n == 0:
        raise ValueError("direction must be non-zero")
    dmu, dsig = h * direction[0] / n, h * direction[1] / n
    rb = basic_radius(K3)
    z0 = half_plane_to_disk(GaussianPoint(p.mu - 0.5 * dmu, p.sigma - 0.5 * dsig), K3)
    z1 = half_plane_to_disk(GaussianPoint(p.mu + 0.5 * dmu, p.sigma + 0.5 * dsig), K3)
    zm = half_plane_to_disk(p, K3).as_complex() / rb
    dz = (z1.as_complex() - z0.as_complex()) / rb
    # relative rounding error in dz is about eps * |z| / |dz|
    if abs(dz) == 0 or 2.2e-16 * max(1.0, abs(zm)) / abs(dz) > 1e-7:
        raise ConformalCheckError(
            f"step h={h!r} is too small: the disk displacement {abs(dz):.3g} is lost to "
            "cancellation")
    ds2_disk = 4.0 * abs(dz) ** 2 / (1.0 - abs(zm) ** 2) ** 2
    return line_element(p, dmu, dsig) / ds2_disk
