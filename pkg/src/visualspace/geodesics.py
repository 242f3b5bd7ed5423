"""Geodesics of the Fisher-Rao half-plane.

Geodesics are vertical lines ``mu = mu0`` and half-ellipses
``(mu - c)**2 + 2 sigma**2 = r**2`` centred on the mu-axis.  The module
has both the closed-form family and a fixed-step RK4 integrator for the
geodesic equations, so that each can be checked against the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ._numerics import bisect
from .errors import GeodesicError
from .manifold import SQRT2, GaussianPoint

DEFAULT_STEP = 1e-3
VERTICAL_TOL = 1e-12


@dataclass(frozen=True)
class GeodesicState:
    """Position and arc-length derivative of a geodesic."""

    mu: float
    sigma: float
    dmu_ds: float
    dsigma_ds: float

    def __post_init__(self):
        vals = (self.mu, self.sigma, self.dmu_ds, self.dsigma_ds)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"non-finite geodesic state {vals}")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    @classmethod
    def from_direction(cls, point: GaussianPoint, dmu: float, dsigma: float) -> "GeodesicState":
        """Unit-speed state at ``point`` pointing along ``(dmu, dsigma)``."""
        speed = math.sqrt(dmu * dmu + 2.0 * dsigma * dsigma) / point.sigma
        if speed == 0:
            raise ValueError("direction must be non-zero")
        return cls(point.mu, point.sigma, dmu / speed, dsigma / speed)

    @property
    def point(self) -> GaussianPoint:
        return GaussianPoint(self.mu, self.sigma)

    def speed_squared(self) -> float:
        return (self.dmu_ds**2 + 2.0 * self.dsigma_ds**2) / self.sigma**2

    def unit_speed_residual(self) -> float:
        return abs(self.speed_squared() - 1.0)


@dataclass(frozen=True)
class GeodesicPath:
    states: tuple[GeodesicState, ...]
    arc_length: float

    def __post_init__(self):
        if not self.states:
            raise ValueError("a path needs at least one state")
        if self.arc_length < 0:
            raise ValueError("arc length must be non-negative")

    def __len__(self):
        return len(self.states)

    @property
    def start(self) -> GeodesicState:
        return self.states[0]

    @property
    def end(self) -> GeodesicState:
        return self.states[-1]

    def as_array(self) -> np.ndarray:
        """``(n, 4)`` array of ``mu, sigma, dmu_ds, dsigma_ds``."""
        return np.array([(s.mu, s.sigma, s.dmu_ds, s.dsigma_ds) for s in self.states])

    @property
    def mu(self) -> np.ndarray:
        return np.array([s.mu for s in self.states])

    @property
    def sigma(self) -> np.ndarray:
        return np.array([s.sigma for s in self.states])


@dataclass(frozen=True)
class VerticalLine:
    mu0: float

    def residual(self, p: GaussianPoint) -> float:
        return abs(p.mu - self.mu0)

    def parameter_of(self, p: GaussianPoint) -> float:
        return math.log(p.sigma)

    def point_at(self, t: float) -> GaussianPoint:
        return GaussianPoint(self.mu0, math.exp(t))

    def unit_tangent(self, p: GaussianPoint, sign: float = 1.0) -> tuple[float, float]:
        return (0.0, math.copysign(p.sigma / SQRT2, sign))

    def ideal_endpoints(self) -> tuple[float, float]:
        return (self.mu0, math.inf)


@dataclass(frozen=True)
class CircleArc:
    """The geodesic ``(mu - center_c)**2 + 2 sigma**2 = radius_r**2``.

    Parameterized by ``mu = c + r cos t``, ``sigma = r sin t / sqrt(2)``
    with ``t`` in ``(0, pi)``.
    """

    center_c: float
    radius_r: float

    def __post_init__(self):
        if not self.radius_r > 0:
            raise ValueError(f"radius must be positive, got {self.radius_r}")

    def residual(self, p: GaussianPoint) -> float:
        """Relative residual of the arc equation at ``p``."""
        r2 = self.radius_r**2
        return abs((p.mu - self.center_c) ** 2 + 2.0 * p.sigma**2 - r2) / r2

    def parameter_of(self, p: GaussianPoint) -> float:
        return math.atan2(SQRT2 * p.sigma, p.mu - self.center_c)

    def point_at(self, t: float) -> GaussianPoint:
        return GaussianPoint(self.center_c + self.radius_r * math.cos(t),
                             self.radius_r * math.sin(t) / SQRT2)

    def unit_tangent(self, p: GaussianPoint, sign: float = 1.0) -> tuple[float, float]:
        """Unit-speed tangent at ``p`` in the direction of increasing ``t`` (``sign > 0``)."""
        t = self.parameter_of(p)
        # d/dt of the parameterization has Fisher speed r / sigma
        scale = math.copysign(p.sigma / self.radius_r, sign)
        return (-self.radius_r * math.sin(t) * scale,
                self.radius_r * math.cos(t) / SQRT2 * scale)

    def ideal_endpoints(self) -> tuple[float, float]:
        return (self.center_c - self.radius_r, self.center_c + self.radius_r)


GeodesicArc = Union[VerticalLine, CircleArc]


def geodesic_ode_rhs(state: GeodesicState) -> tuple[float, float]:
    """Second derivatives ``(mu'', sigma'')`` from the geodesic equations."""
    s = state.sigma
    m1, s1 = state.dmu_ds, state.dsigma_ds
    return (2.0 / s * m1 * s1, -(0.5 * m1 * m1 - s1 * s1) / s)


def _rhs(y):
    mu, s, m1, s1 = y
    return (m1, s1, 2.0 / s * m1 * s1, -(0.5 * m1 * m1 - s1 * s1) / s)


def _rk4(y, h):
    k1 = _rhs(y)
    k2 = _rhs(tuple(a + 0.5 * h * b for a, b in zip(y, k1)))
    k3 = _rhs(tuple(a + 0.5 * h * b for a, b in zip(y, k2)))
    k4 = _rhs(tuple(a + h * b for a, b in zip(y, k3)))
    return tuple(a + h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
                 for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4))


def _as_tuple(state: GeodesicState):
    return (state.mu, state.sigma, state.dmu_ds, state.dsigma_ds)


def _checked_state(y, step_index: int, h: float) -> GeodesicState:
    if not (y[1] > 0 and all(math.isfinite(v) for v in y)):
        raise GeodesicError(
            f"integration left the half-plane at step {step_index} (h={h:.3g}, "
            f"sigma={y[1]!r}); reduce the step size")
    return GeodesicState(*y)


def integrate_geodesic(start: GeodesicState, length: float, steps: int | None = None,
                       *, step: float = DEFAULT_STEP) -> GeodesicPath:
    """Integrate the geodesic equations with classical fixed-step RK4.

    Parameters
    ----------
    start : GeodesicState
        Initial unit-speed state.
    length : float
        Arc length to integrate.
    steps : int, optional
        Number of RK4 steps.  Defaults to ``ceil(length / step)``.
    step : float
        Target step size when ``steps`` is not given.
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    if start.unit_speed_residual() > 1e-9:
        raise ValueError(
            f"start state is not unit speed (|speed^2 - 1| = {start.unit_speed_residual():.3g})")
    if length == 0:
        return GeodesicPath((start,), 0.0)
    if steps is None:
        steps = max(1, math.ceil(length / step))
    if steps < 1:
        raise ValueError("steps must be >= 1")
    h = length / steps
    y = _as_tuple(start)
    states = [start]
    for i in range(1, steps + 1):
        y = _rk4(y, h)
        states.append(_checked_state(y, i, h))
    return GeodesicPath(tuple(states), h * steps)


def conserved_quantity(state: GeodesicState) -> float:
    """First integral ``2 sigma sigma' / mu' + mu`` of a non-vertical geodesic.

    On the arc ``(mu - c)**2 + 2 sigma**2 = r**2`` it equals ``c``.
    """
    if abs(state.dmu_ds) <= 1e-12:
        raise ValueError("conserved quantity undefined for vertical geodesics")
    return 2.0 * state.sigma * state.dsigma_ds / state.dmu_ds + state.mu


def geodesic_through(p1: GaussianPoint, p2: GaussianPoint) -> GeodesicArc:
    """The unique geodesic through two distinct points."""
    if p1 == p2:
        raise ValueError("degenerate geodesic: the two points coincide")
    dm = p1.mu - p2.mu
    if abs(dm) <= VERTICAL_TOL:
        return VerticalLine(0.5 * (p1.mu + p2.mu))
    c = (p1.mu**2 + 2 * p1.sigma**2 - p2.mu**2 - 2 * p2.sigma**2) / (2.0 * dm)
    r = math.sqrt((p1.mu - c) ** 2 + 2.0 * p1.sigma**2)
    return CircleArc(c, r)


def shoot_geodesic(p1: GaussianPoint, p2: GaussianPoint, *,
                   step: float = DEFAULT_STEP, max_steps: int = 10_000_000) -> GeodesicPath:
    """Integrate the geodesic from ``p1`` until it reaches ``p2``.

    The initial direction and the stopping parameter come from the closed
    form arc through both points; the arc length is accumulated from the
    RK4 steps, with the last step shortened by bisection so the path ends
    on ``p2``.
    """
    arc = geodesic_through(p1, p2)
    t_end = arc.parameter_of(p2)
    sign = 1.0 if t_end > arc.parameter_of(p1) else -1.0
    start = GeodesicState.from_direction(p1, *arc.unit_tangent(p1, sign))

    if isinstance(arc, VerticalLine):
        def param(mu, sigma):
            return math.log(sigma) if sigma > 0 else -math.inf
    else:
        def param(mu, sigma):
            return math.atan2(SQRT2 * sigma, mu - arc.center_c)

    def remaining(y):
        return sign * (t_end - param(y[0], y[1]))

    y = _as_tuple(start)
    states = [start]
    s = 0.0
    for i in range(1, max_steps + 1):
        y_next = _rk4(y, step)
        if remaining(y_next) > 0:
            y = y_next
            s += step
            states.append(_checked_state(y, i, step))
            continue
        res = bisect(lambda h: remaining(_rk4(y, h)), 0.0, step, ftol=0.0)
        y = _rk4(y, res.root)
        s += res.root
        states.append(_checked_state(y, i, res.root))
        return GeodesicPath(tuple(states), s)
    raise GeodesicError(f"target not reached after {max_steps} steps")
