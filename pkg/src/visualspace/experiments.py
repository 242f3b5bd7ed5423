"""Simulations built on the manifold: distance-estimation error, Table 1, alleys."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ProfileDomainError
from .luneburg import (BipolarPoint, ObserverProfile, PhysicalPoint, inverse_luneburg,
                       luneburg_map, physical_from_bipolar, polar_to_cartesian,
                       solve_lambda0)
from .manifold import SQRT2, GaussianPoint, fisher_rao_distance
from .maps import DiskPoint, disk_to_half_plane, half_plane_to_disk

# linear receptive-field size against eccentricity, sigma2 = (ecc + offset) / slope
ECC_OFFSET = 126.540
ECC_SLOPE = 167.785

DEFAULT_SEPARATIONS = tuple(float(d) for d in range(2, 17, 2))


# --------------------------------------------------------------------------
# width profiles
# --------------------------------------------------------------------------

class SigmaProfile:
    """Tuning-curve width as a function of one scalar (separation or parallax)."""

    domain: tuple[float, float]

    def _eval(self, x: float) -> float:
        raise NotImplementedError

    def __call__(self, x: float) -> float:
        lo, hi = self.domain
        if not lo <= x <= hi:
            raise ProfileDomainError(f"{x!r} is outside the profile domain [{lo!r}, {hi!r}]")
        return self._eval(x)

    def covers(self, xs: Sequence[float]) -> bool:
        lo, hi = self.domain
        return all(lo <= x <= hi for x in xs)

    @property
    def monotone(self) -> str | None:
        """``"increasing"``, ``"decreasing"``, ``"constant"`` or ``None``."""
        raise NotImplementedError


@dataclass(frozen=True)
class LinearProfile(SigmaProfile):
    offset: float
    slope: float
    domain: tuple[float, float] = (-math.inf, math.inf)

    def __post_init__(self):
        lo, hi = self.domain
        if not lo <= hi:
            raise ValueError(f"empty domain {self.domain}")
        ends = [self.offset + self.slope * x for x in (lo, hi)]
        if math.isinf(lo) or math.isinf(hi):
            if self.slope != 0 or self.offset <= 0:
                raise ValueError("an unbounded linear profile must be a positive constant")
        elif min(ends) <= 0:
            raise ValueError(f"profile is not positive on {self.domain}: end values {ends}")

    @classmethod
    def through(cls, x0: float, s0: float, x1: float, s1: float) -> "LinearProfile":
        """Profile through ``(x0, s0)`` and ``(x1, s1)`` on the domain ``[x0, x1]``."""
        slope = (s1 - s0) / (x1 - x0)
        return cls(s0 - slope * x0, slope, (min(x0, x1), max(x0, x1)))

    @classmethod
    def constant(cls, value: float, domain=(-math.inf, math.inf)) -> "LinearProfile":
        return cls(value, 0.0, domain)

    def _eval(self, x):
        return self.offset + self.slope * x

    @property
    def monotone(self):
        if self.slope > 0:
            return "increasing"
        if self.slope < 0:
            return "decreasing"
        return "constant"


@dataclass(frozen=True)
class TableProfile(SigmaProfile):
    """Piecewise-linear interpolation through ``(x, sigma)`` pairs; no extrapolation."""

    xs: tuple[float, ...]
    sigmas: tuple[float, ...]

    def __post_init__(self):
        if len(self.xs) != len(self.sigmas) or len(self.xs) < 2:
            raise ValueError("a table profile needs at least two (x, sigma) pairs")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise ValueError("table abscissae must be strictly increasing")
        if any(not s > 0 for s in self.sigmas):
            raise ValueError("table widths must be positive")
        object.__setattr__(self, "xs", tuple(float(x) for x in self.xs))
        object.__setattr__(self, "sigmas", tuple(float(s) for s in self.sigmas))

    @property
    def domain(self):
        return (self.xs[0], self.xs[-1])

    def _eval(self, x):
        return float(np.interp(x, self.xs, self.sigmas))

    @property
    def monotone(self):
        d = np.diff(self.sigmas)
        if np.all(d == 0):
            return "constant"
        if np.all(d >= 0):
            return "increasing"
        if np.all(d <= 0):
            return "decreasing"
        return None


# hand calibrated so the error grows with separation; not measured data
DEFAULT_SIGMA1 = LinearProfile(offset=0.96, slope=-0.03, domain=(2.0, 16.0))


# --------------------------------------------------------------------------
# two-dot distance estimation
# --------------------------------------------------------------------------

def sigma2_of_eccentricity(ecc_deg: float) -> float:
    """Width of the peripheral dot's tuning curve at eccentricity ``ecc_deg``."""
    if ecc_deg < 0:
        raise ValueError(f"eccentricity must be non-negative, got {ecc_deg}")
    return (ecc_deg + ECC_OFFSET) / ECC_SLOPE


@dataclass(frozen=True)
class SeparationTrial:
    """Foveal dot at ``mu = 0``, peripheral dot at ``mu = separation_deg``."""

    separation_deg: float
    sigma1: float
    sigma2: float

    def __post_init__(self):
        for key in ("separation_deg", "sigma1", "sigma2"):
            if not getattr(self, key) > 0:
                raise ValueError(f"{key} must be positive, got {getattr(self, key)}")

    @property
    def foveal(self) -> GaussianPoint:
        return GaussianPoint(0.0, self.sigma1)

    @property
    def peripheral(self) -> GaussianPoint:
        return GaussianPoint(self.separation_deg, self.sigma2)


def estimation_error(trial: SeparationTrial) -> float:
    """``|d_F - d_u|``, mixing the dimensionless distance with degrees as the model does."""
    return abs(fisher_rao_distance(trial.foveal, trial.peripheral) - trial.separation_deg)


@dataclass(frozen=True)
class ErrorRow:
    separation: float
    sigma1: float
    sigma2: float
    fisher_distance: float
    error: float


def error_curve(sigma1_profile: SigmaProfile = DEFAULT_SIGMA1,
                separations: Sequence[float] = DEFAULT_SEPARATIONS) -> list[ErrorRow]:
    """Estimation error for each separation; the eccentricity equals the separation."""
    if not sigma1_profile.covers(separations):
        raise ProfileDomainError(
            f"sigma1 profile domain {sigma1_profile.domain} does not cover {list(separations)}")
    rows = []
    for d in separations:
        trial = SeparationTrial(float(d), sigma1_profile(d), sigma2_of_eccentricity(d))
        df = fisher_rao_distance(trial.foveal, trial.peripheral)
        rows.append(ErrorRow(trial.separation_deg, trial.sigma1, trial.sigma2, df,
                             abs(df - trial.separation_deg)))
    return rows


# --------------------------------------------------------------------------
# Table 1
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Table1Entry:
    name: str
    tau: float
    nu: float
    observed_L0: float
    reference_L0: float

    @property
    def profile(self) -> ObserverProfile:
        return ObserverProfile(self.tau, self.nu, name=self.name)


TABLE1 = (
    Table1Entry("A.J", 10.68, 6.48, 108, 89.70),
    Table1Entry("T.K", 11.69, 6.70, 106, 101.51),
    Table1Entry("M.K", 8.67, 6.40, 108, 71.93),
    Table1Entry("M.V.S", 7.50, 6.25, 121, 60.78),
    Table1Entry("B.A", 11.87, 6.40, 137, 98.46),
    Table1Entry("S.V.S", 3.32, 6.60, 44, 28.46),
    Table1Entry("H.S", 9.70, 6.30, 78, 79.21),
    Table1Entry("K.G", 8.58, 6.90, 82, 76.74),
    Table1Entry("W.K", 16.90, 5.80, 145, 127.03),
)


def table1_observer(name: str) -> ObserverProfile:
    for e in TABLE1:
        if e.name == name:
            return e.profile
    raise KeyError(f"no observer named {name!r} in the built-in table")


@dataclass(frozen=True)
class Table1Row:
    name: str
    tau: float
    nu: float
    observed_L0: float
    reference_L0: float
    lambda0: float
    computed_L0: float
    residual: float

    @property
    def delta_reference(self) -> float:
        return abs(self.computed_L0 - self.reference_L0)

    @property
    def delta_observed(self) -> float:
        return abs(self.computed_L0 - self.observed_L0)


def table1_report(entries: Sequence[Table1Entry] = TABLE1, K3: float | None = None
                  ) -> list[Table1Row]:
    rows = []
    for e in entries:
        prof = e.profile if K3 is None else ObserverProfile(e.tau, e.nu, K3, e.name)
        lam0, res = solve_lambda0(prof, full_output=True)
        rows.append(Table1Row(e.name, e.tau, e.nu, e.observed_L0, e.reference_L0, lam0,
                              e.nu / lam0, res.residual))
    return rows


# --------------------------------------------------------------------------
# alleys
# --------------------------------------------------------------------------

def bipolar_from_physical(p: PhysicalPoint, nu: float) -> BipolarPoint:
    """Inverse of :func:`physical_from_bipolar` for points in front of the eyes."""
    if not p.x > 0:
        raise ValueError("point must lie in front of the observer")
    lam = math.atan2(nu * p.x, p.x * p.x + p.y * p.y - 0.25 * nu * nu)
    center = 0.5 * nu / math.tan(lam)
    return BipolarPoint(lam, 0.5 * math.atan2(p.y, p.x - center))


def visual_from_bipolar(b: BipolarPoint, profile: ObserverProfile) -> GaussianPoint:
    """Bipolar stimulus -> disk -> half-plane."""
    alpha, beta = polar_to_cartesian(luneburg_map(b, profile))
    return disk_to_half_plane(DiskPoint(alpha, beta), profile.K3)


def physical_from_visual(p: GaussianPoint, profile: ObserverProfile) -> PhysicalPoint:
    """Half-plane -> disk -> bipolar -> physical coordinates."""
    d = half_plane_to_disk(p, profile.K3)
    lam = inverse_luneburg(d.radius, profile)
    return physical_from_bipolar(lam, d.angle, profile.nu)


@dataclass(frozen=True)
class AlleyConfig:
    """Inputs of the alley simulation.

    ``depths`` are parallaxes ordered far to near; the first one is the
    parallax of the symmetric ``anchor`` pair.  Width profiles are functions
    of parallax.
    """

    profile: ObserverProfile
    anchor: tuple[BipolarPoint, BipolarPoint]
    depths: tuple[float, ...]
    sigma_parallel: SigmaProfile
    sigma_distance: SigmaProfile

    def __post_init__(self):
        a, b = self.anchor
        if a.lambda_ != b.lambda_ or a.psi != -b.psi or a.psi == 0:
            raise ValueError("anchor pair must be mirror symmetric about the median")
        if len(self.depths) < 2 or any(y <= x for x, y in zip(self.depths, self.depths[1:])):
            raise ValueError("depths must be strictly increasing parallaxes")
        if self.depths[0] != a.lambda_:
            raise ValueError("the first depth must be the anchor parallax")
        for name in ("sigma_parallel", "sigma_distance"):
            if not getattr(self, name).covers(self.depths):
                raise ProfileDomainError(f"{name} does not cover the depth sequence")


@dataclass(frozen=True)
class AlleyRow:
    depth: float          # parallax indexing the width profile
    sigma: float
    mu: float             # half the lateral visual separation, >= 0
    right: PhysicalPoint
    left: PhysicalPoint


@dataclass(frozen=True)
class AlleyCurve:
    name: str
    pair_distance: float  # Fisher-Rao distance shared by every pair
    rows: tuple[AlleyRow, ...]

    @property
    def right(self) -> list[PhysicalPoint]:
        return [r.right for r in self.rows]

    @property
    def left(self) -> list[PhysicalPoint]:
        return [r.left for r in self.rows]

    @property
    def mu(self) -> np.ndarray:
        return np.array([r.mu for r in self.rows])


@dataclass(frozen=True)
class AlleyResult:
    parallel: AlleyCurve
    distance: AlleyCurve


def _alley(name: str, cfg: AlleyConfig, sigma_of: SigmaProfile, mu_anchor: float) -> AlleyCurve:
    sigma_f = sigma_of(cfg.depths[0])
    d_star = fisher_rao_distance(GaussianPoint(-mu_anchor, sigma_f),
                                 GaussianPoint(mu_anchor, sigma_f))
    # d_F((-m, s), (m, s)) = sqrt(2) arccosh(1 + m**2 / s**2)
    spread = math.sqrt(math.cosh(d_star / SQRT2) - 1.0)
    rows = []
    for lam in cfg.depths:
        s = sigma_of(lam)
        m = s * spread
        a = physical_from_visual(GaussianPoint(m, s), cfg.profile)
        b = physical_from_visual(GaussianPoint(-m, s), cfg.profile)
        right, left = (a, b) if a.y >= b.y else (b, a)
        rows.append(AlleyRow(lam, s, m, right, left))
    return AlleyCurve(name, d_star, tuple(rows))


def alley_curves(config: AlleyConfig) -> AlleyResult:
    """Parallel and distance alleys from the same anchor pair.

    Each alley keeps the Fisher-Rao distance between its mirrored pairs at
    the anchor value ``D*``: the pair at depth ``k`` sits at
    ``(+/- mu_k, sigma_k)`` with ``sigma_k`` from that alley's profile and
    ``mu_k = sigma_k sqrt(cosh(D*/sqrt(2)) - 1)``.  Every alley therefore
    lies on a curve of constant ``mu / sigma``, and ``D*`` depends on the
    profile's width at the anchor.
    """
    mu_anchor = abs(visual_from_bipolar(config.anchor[0], config.profile).mu)
    return AlleyResult(_alley("parallel", config, config.sigma_parallel, mu_anchor),
                       _alley("distance", config, config.sigma_distance, mu_anchor))


def default_alley_config(profile: ObserverProfile, anchor_distance: float = 300.0,
                         anchor_halfwidth: float = 25.0, n_depths: int = 12,
                         swap: bool = False) -> AlleyConfig:
    """Anchor pair at ``(anchor_distance, +/- anchor_halfwidth)`` cm and calibrated profiles.

    Depths run geometrically from the anchor parallax to three times it.
    The distance-alley widths start at the anchor's own width and shrink to
    45 % of it; the parallel-alley widths start 5 % larger and shrink to
    60 %.  ``swap`` exchanges the two profiles.  These widths are a
    calibration for display, not measured values.
    """
    a = bipolar_from_physical(PhysicalPoint(anchor_distance, anchor_halfwidth), profile.nu)
    anchor = (a, BipolarPoint(a.lambda_, -a.psi))
    depths = tuple(float(x) for x in np.geomspace(a.lambda_, 3.0 * a.lambda_, n_depths))
    depths = (a.lambda_,) + depths[1:-1] + (3.0 * a.lambda_,)
    s0 = visual_from_bipolar(a, profile).sigma
    lo, hi = depths[0], depths[-1]
    dist = LinearProfile.through(lo, s0, hi, 0.45 * s0)
    par = LinearProfile.through(lo, 1.05 * s0, hi, 0.60 * s0)
    if swap:
        par, dist = dist, par
    return AlleyConfig(profile, anchor, depths, par, dist)


def count_crossings(horopter: Sequence[PhysicalPoint], branch: Sequence[PhysicalPoint]) -> int:
    """Number of times ``branch`` crosses ``horopter`` inside the horopter's lateral extent.

    The horopter is treated as a graph ``x(y)``, which requires its ``y``
    samples to be strictly monotone.
    """
    hy = np.array([p.y for p in horopter])
    hx = np.array([p.x for p in horopter])
    if np.all(np.diff(hy) < 0):
        hy, hx = hy[::-1], hx[::-1]
    elif not np.all(np.diff(hy) > 0):
        raise ValueError("horopter samples are not monotone in y")
    signs = [math.copysign(1.0, p.x - np.interp(p.y, hy, hx))
             for p in branch if hy[0] <= p.y <= hy[-1]]
    return int(sum(a != b for a, b in zip(signs, signs[1:])))
