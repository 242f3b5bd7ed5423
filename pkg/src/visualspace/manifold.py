"""The statistical manifold of univariate Gaussian tuning curves.

Points of the upper half-plane ``sigma > 0`` are identified with normalized
Gaussian densities.  The Fisher information turns the half-plane into a
hyperbolic surface with line element ``(dmu**2 + 2*dsigma**2) / sigma**2``.
Everything here is closed form except the quadrature and finite-difference
routines, which exist to cross-check the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import CurvatureError, QuadratureError

SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class GaussianPoint:
    """A point ``(mu, sigma)`` of the half-plane, ``sigma > 0``."""

    mu: float
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma)):
            raise ValueError(f"non-finite coordinates ({self.mu}, {self.sigma})")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    def as_tuple(self) -> tuple[float, float]:
        return (self.mu, self.sigma)

    def density(self, r):
        """Normalized Gaussian density evaluated at ``r``."""
        z = (np.asarray(r, dtype=float) - self.mu) / self.sigma
        return np.exp(-0.5 * z * z) / (self.sigma * _SQRT_2PI)


@dataclass(frozen=True)
class TuningCurve:
    """Gaussian tuning curve with peak firing rate ``peak_rate``.

    The peak rate only scales the displayed response; all information
    geometric quantities use the normalized density of ``point``.
    """

    peak_rate: float
    point: GaussianPoint

    def __post_init__(self):
        if not (math.isfinite(self.peak_rate) and self.peak_rate > 0):
            raise ValueError(f"peak_rate must be positive, got {self.peak_rate}")

    def __call__(self, stimulus):
        return tuning_curve_eval(self, stimulus)


def tuning_curve_eval(tc: TuningCurve, stimulus):
    """Mean firing rate of ``tc`` at ``stimulus`` (scalar or array)."""
    z = (np.asarray(stimulus, dtype=float) - tc.point.mu) / tc.point.sigma
    out = tc.peak_rate * np.exp(-0.5 * z * z)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class MetricTensor2:
    """Components of a symmetric positive-definite 2x2 metric.

    ``info`` carries optional metadata (quadrature rule, node count,
    normalization residual) and does not take part in comparisons.
    """

    g_mumu: float
    g_sigmasigma: float
    g_musigma: float = 0.0
    info: Optional[dict] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not (self.g_mumu > 0 and self.g_sigmasigma > 0 and self.determinant > 0):
            raise ValueError(f"metric is not positive definite: {self}")

    @property
    def determinant(self) -> float:
        return self.g_mumu * self.g_sigmasigma - self.g_musigma**2

    def as_array(self) -> np.ndarray:
        return np.array([[self.g_mumu, self.g_musigma],
                         [self.g_musigma, self.g_sigmasigma]])

    def inverse(self) -> np.ndarray:
        det = self.determinant
        return np.array([[self.g_sigmasigma, -self.g_musigma],
                         [-self.g_musigma, self.g_mumu]]) / det

    def norm_squared(self, dmu: float, dsigma: float) -> float:
        return (self.g_mumu * dmu * dmu + 2.0 * self.g_musigma * dmu * dsigma
                + self.g_sigmasigma * dsigma * dsigma)


@dataclass(frozen=True)
class ChristoffelSymbols2:
    """Christoffel symbols of the second kind on the half-plane.

    Attribute names read ``<upper>_<lower><lower>``; the two lower indices
    are symmetric so only six components are stored.
    """

    mu_mumu: float
    mu_musigma: float
    mu_sigmasigma: float
    sigma_mumu: float
    sigma_musigma: float
    sigma_sigmasigma: float

    def as_array(self) -> np.ndarray:
        """Array ``G[k, i, j]`` with index 0 for mu and 1 for sigma."""
        g = np.empty((2, 2, 2))
        g[0] = [[self.mu_mumu, self.mu_musigma], [self.mu_musigma, self.mu_sigmasigma]]
        g[1] = [[self.sigma_mumu, self.sigma_musigma],
                [self.sigma_musigma, self.sigma_sigmasigma]]
        return g


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration window ``mu +/- half_width * sigma`` sampled on ``nodes`` points."""

    half_width: float = 12.0
    nodes: int = 4096
    rule: str = "trapezoid"
    normalization_tol: float = 1e-6

    def __post_init__(self):
        if self.half_width <= 0 or self.nodes < 3:
            raise ValueError("quadrature needs a positive window and at least 3 nodes")
        if self.rule != "trapezoid":
            raise ValueError(f"unsupported quadrature rule {self.rule!r}")

    def grid(self, p: GaussianPoint) -> np.ndarray:
        return np.linspace(p.mu - self.half_width * p.sigma,
                           p.mu + self.half_width * p.sigma, self.nodes)


DEFAULT_QUADRATURE = QuadratureSpec()


def _trapezoid(y: np.ndarray, x: np.ndarray) -> float:
    dx = x[1] - x[0]
    return float(dx * (y.sum() - 0.5 * (y[0] + y[-1])))


def metric_tensor(p: GaussianPoint) -> MetricTensor2:
    """Closed-form Fisher-Rao metric ``diag(1/sigma**2, 2/sigma**2)``."""
    inv = 1.0 / (p.sigma * p.sigma)
    return MetricTensor2(inv, 2.0 * inv, 0.0)


def fisher_matrix_numeric(p: GaussianPoint,
                          quad: QuadratureSpec = DEFAULT_QUADRATURE) -> MetricTensor2:
    """Fisher information of the normalized Gaussian by quadrature.

    Integrates ``rho * d_i(gamma) * d_j(gamma)`` with ``gamma = -ln rho``
    over the window given by ``quad``.

    Raises
    ------
    QuadratureError
        If the density does not integrate to one within
        ``quad.normalization_tol`` on the chosen window.
    """
    r = quad.grid(p)
    rho = p.density(r)
    mass = _trapezoid(rho, r)
    if abs(mass - 1.0) > quad.normalization_tol:
        raise QuadratureError(
            f"density integrates to {mass:.12g} on mu +/- {quad.half_width} sigma; "
            "widen the quadrature window")
    z = (r - p.mu) / p.sigma
    # derivatives of gamma = -ln rho
    dg_mu = -z / p.sigma
    dg_sigma = (1.0 - z * z) / p.sigma
    info = {"rule": quad.rule, "nodes": quad.nodes, "half_width": quad.half_width,
            "normalization_residual": mass - 1.0}
    return MetricTensor2(_trapezoid(rho * dg_mu * dg_mu, r),
                         _trapezoid(rho * dg_sigma * dg_sigma, r),
                         _trapezoid(rho * dg_mu * dg_sigma, r),
                         info=info)


def kl_divergence(p1: GaussianPoint, p2: GaussianPoint, method: str = "closed",
                  quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Kullback-Leibler divergence ``KL(p1 || p2)``.

    ``method="quadrature"`` integrates the defining integral on the window
    of ``p1`` instead of using the Gaussian closed form.
    """
    if method == "closed":
        ratio = p1.sigma / p2.sigma
        dm = (p1.mu - p2.mu) / p2.sigma
        return float(-math.log(ratio) + 0.5 * (ratio * ratio + dm * dm) - 0.5)
    if method == "quadrature":
        r = quad.grid(p1)
        rho = p1.density(r)
        z1 = (r - p1.mu) / p1.sigma
        z2 = (r - p2.mu) / p2.sigma
        # ln rho1 - ln rho2, written out to avoid log of underflowed tails
        log_ratio = math.log(p2.sigma / p1.sigma) - 0.5 * z1 * z1 + 0.5 * z2 * z2
        return _trapezoid(rho * log_ratio, r)
    raise ValueError(f"unknown method {method!r}")


def line_element(p: GaussianPoint, dmu: float, dsigma: float) -> float:
    """Squared Fisher-Rao length ``ds**2`` of the displacement at ``p``."""
    return (dmu * dmu + 2.0 * dsigma * dsigma) / (p.sigma * p.sigma)


def christoffel_symbols(p: GaussianPoint) -> ChristoffelSymbols2:
    s = p.sigma
    return ChristoffelSymbols2(
        mu_mumu=0.0, mu_musigma=-1.0 / s, mu_sigmasigma=0.0,
        sigma_mumu=0.5 / s, sigma_musigma=0.0, sigma_sigmasigma=-1.0 / s)


def christoffel_numeric(p: GaussianPoint, h: float = 1e-5,
                        metric: Callable[[GaussianPoint], MetricTensor2] = metric_tensor
                        ) -> ChristoffelSymbols2:
    """Christoffel symbols from central differences of ``metric``."""
    dg = _metric_partials(p, h, metric)
    ginv = metric(p).inverse()
    g = np.zeros((2, 2, 2))
    for k in range(2):
        for i in range(2):
            for j in range(2):
                g[k, i, j] = 0.5 * sum(
                    ginv[k, m] * (dg[j][i, m] + dg[i][j, m] - dg[m][i, j])
                    for m in range(2))
    return ChristoffelSymbols2(g[0, 0, 0], g[0, 0, 1], g[0, 1, 1],
                               g[1, 0, 0], g[1, 0, 1], g[1, 1, 1])


def _metric_partials(p, h, metric):
    def at(dm, ds):
        return metric(GaussianPoint(p.mu + dm, p.sigma + ds)).as_array()
    return [(at(h, 0) - at(-h, 0)) / (2 * h), (at(0, h) - at(0, -h)) / (2 * h)]


def gaussian_curvature_numeric(p: GaussianPoint, h: float = 1e-3,
                               metric: Callable[[GaussianPoint], MetricTensor2] = metric_tensor
                               ) -> float:
    """Gaussian curvature by the Brioschi formula on finite differences.

    Only samples of ``metric`` are used, so this works for any smooth
    metric on the half-plane.  Second derivatives use a three-point
    stencil of width ``h``.

    Raises
    ------
    CurvatureError
        If ``h`` is so small relative to ``sigma`` that the second
        differences are dominated by rounding, or so large that the
        stencil leaves the half-plane.
    """
    if not h > 0 or h < 1e-5 * p.sigma:
        raise CurvatureError(
            f"step h={h!r} underflows the second-difference stencil at sigma={p.sigma}; "
            f"use h >= {1e-5 * p.sigma:.3g}")
    if p.sigma - 2 * h <= 0:
        raise CurvatureError(f"step h={h} leaves the half-plane at sigma={p.sigma}")

    def comps(dm, ds):
        m = metric(GaussianPoint(p.mu + dm, p.sigma + ds))
        return np.array([m.g_mumu, m.g_musigma, m.g_sigmasigma])

    c = comps(0, 0)
    cu_p, cu_m = comps(h, 0), comps(-h, 0)
    cv_p, cv_m = comps(0, h), comps(0, -h)
    d_u = (cu_p - cu_m) / (2 * h)
    d_v = (cv_p - cv_m) / (2 * h)
    d_uu = (cu_p - 2 * c + cu_m) / (h * h)
    d_vv = (cv_p - 2 * c + cv_m) / (h * h)
    d_uv = (comps(h, h) - comps(h, -h) - comps(-h, h) + comps(-h, -h)) / (4 * h * h)

    E, F, G = c
    E_u, F_u, G_u = d_u
    E_v, F_v, G_v = d_v
    E_vv = d_vv[0]
    G_uu = d_uu[2]
    F_uv = d_uv[1]

    m1 = np.array([[-0.5 * E_vv + F_uv - 0.5 * G_uu, 0.5 * E_u, F_u - 0.5 * E_v],
                   [F_v - 0.5 * G_u, E, F],
                   [0.5 * G_v, F, G]])
    m2 = np.array([[0.0, 0.5 * E_v, 0.5 * G_u],
                   [0.5 * E_v, E, F],
                   [0.5 * G_u, F, G]])
    return float((np.linalg.det(m1) - np.linalg.det(m2)) / (E * G - F * F) ** 2)


def scalar_curvature(p: GaussianPoint, method: str = "closed", h: float = 1e-3) -> float:
    """Scalar curvature of the Fisher-Rao half-plane.

    The closed form is the constant -1.  ``method="numeric"`` returns twice
    the Brioschi Gaussian curvature computed from metric samples.
    """
    if method == "closed":
        return -1.0
    if method == "numeric":
        return 2.0 * gaussian_curvature_numeric(p, h)
    raise ValueError(f"unknown method {method!r}")


def fisher_rao_distance(p1: GaussianPoint, p2: GaussianPoint) -> float:
    """Geodesic distance between two Gaussians under the Fisher-Rao metric.

    With ``u = mu / sqrt(2)`` the metric is twice the Poincare half-plane
    metric, so ``d = sqrt(2) * arccosh(1 + x)`` where
    ``x = (dmu**2 / 2 + dsigma**2) / (2 sigma1 sigma2)``.  The equivalent
    ``2 asinh(sqrt(x / 2))`` form is used because it keeps full relative
    precision for nearby points.
    """
    dm = p1.mu - p2.mu
    ds = p1.sigma - p2.sigma
    x = (0.5 * dm * dm + ds * ds) / (2.0 * p1.sigma * p2.sigma)
    return 2.0 * SQRT2 * math.asinh(math.sqrt(0.5 * x))
