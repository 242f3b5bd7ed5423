import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from visualspace.errors import GeodesicError
from visualspace.geodesics import (CircleArc, GeodesicState, VerticalLine, conserved_quantity,
                                   geodesic_ode_rhs, geodesic_through, integrate_geodesic,
                                   shoot_geodesic)
from visualspace.manifold import GaussianPoint, fisher_rao_distance

R2 = math.sqrt(2)


def lateral_start(mu=0.0, sigma=1.0, sign=1.0):
    return GeodesicState.from_direction(GaussianPoint(mu, sigma), sign, 0.0)


# --- right-hand side --------------------------------------------------------

def test_rhs_examples():
    up = GeodesicState(0, 1, 0, 1 / R2)
    assert geodesic_ode_rhs(up)[0] == 0.0
    down = GeodesicState(0, 1, 0, -1 / R2)
    assert geodesic_ode_rhs(down)[0] == 0.0
    _, acc_s = geodesic_ode_rhs(GeodesicState(0, 1, 1, 0))
    assert acc_s == pytest.approx(-0.5)
    assert geodesic_ode_rhs(GeodesicState(0, 2, 1, 1))[0] == pytest.approx(1.0)


def test_rhs_agrees_with_christoffel_contraction():
    from visualspace.manifold import christoffel_symbols
    s = GeodesicState(0.3, 1.7, 0.4, -0.9)
    G = christoffel_symbols(s.point).as_array()
    v = np.array([s.dmu_ds, s.dsigma_ds])
    expected = -np.einsum("kij,i,j->k", G, v, v)
    assert geodesic_ode_rhs(s) == pytest.approx(tuple(expected), rel=1e-14)


def test_from_direction_is_unit_speed():
    s = GeodesicState.from_direction(GaussianPoint(1, 0.4), 3.0, -2.0)
    assert s.unit_speed_residual() < 1e-15


# --- integration ------------------------------------------------------------

def test_vertical_geodesic_reaches_e():
    start = GeodesicState.from_direction(GaussianPoint(0, 1), 0.0, 1.0)
    path = integrate_geodesic(start, R2)
    assert path.end.mu == pytest.approx(0.0, abs=1e-14)
    assert path.end.sigma == pytest.approx(math.e, rel=1e-10)


def test_lateral_start_stays_on_apex_circle():
    path = integrate_geodesic(lateral_start(), 5.0)
    a = path.as_array()
    assert np.max(np.abs(a[:, 0] ** 2 + 2 * a[:, 1] ** 2 - 2)) < 1e-8


def test_zero_length_path():
    s = lateral_start()
    path = integrate_geodesic(s, 0.0)
    assert path.states == (s,) and path.arc_length == 0.0


def test_non_unit_start_rejected():
    with pytest.raises(ValueError, match="unit speed"):
        integrate_geodesic(GeodesicState(0, 2, 1, 1), 1.0)


def test_coarse_step_is_diagnosed():
    start = GeodesicState.from_direction(GaussianPoint(0, 1), 1.0, 0.0)
    with pytest.raises(GeodesicError, match="reduce the step size"):
        integrate_geodesic(start, 10.0, steps=1)


def test_explicit_step_count():
    path = integrate_geodesic(lateral_start(), 1.0, steps=10)
    assert len(path) == 11 and path.arc_length == pytest.approx(1.0)


@settings(max_examples=15, deadline=None)
@given(st.floats(-3, 3), st.floats(0.3, 3), st.floats(0, 2 * math.pi))
def test_unit_speed_drift(mu, s, angle):
    start = GeodesicState.from_direction(GaussianPoint(mu, s), math.cos(angle), math.sin(angle))
    path = integrate_geodesic(start, 2.0)
    drift = max(st_.unit_speed_residual() for st_ in path.states)
    assert drift < 1e-7 * 2.0


@settings(max_examples=15, deadline=None)
@given(st.floats(-3, 3), st.floats(0.3, 3), st.floats(0.05, math.pi - 0.05))
def test_endpoint_distance_equals_length(mu, s, angle):
    start = GeodesicState.from_direction(GaussianPoint(mu, s), math.cos(angle), math.sin(angle))
    path = integrate_geodesic(start, 3.0)
    d = fisher_rao_distance(start.point, path.end.point)
    assert d == pytest.approx(3.0, abs=1e-6 * 4.0)


# --- first integral ---------------------------------------------------------

def test_conserved_quantity_examples():
    assert conserved_quantity(lateral_start()) == 0.0
    arc = CircleArc(1.0, math.sqrt(3))
    for t in (0.3, 1.0, 2.0, 2.9):
        p = arc.point_at(t)
        state = GeodesicState.from_direction(p, *arc.unit_tangent(p))
        # P is the arc's centre c (here 1), not 2c
        assert conserved_quantity(state) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError, match="undefined for vertical"):
        conserved_quantity(GeodesicState(0, 1, 0.0, 1 / R2))


@settings(max_examples=10, deadline=None)
@given(st.floats(-3, 3), st.floats(0.3, 3), st.floats(0.2, math.pi - 0.2))
def test_first_integral_constant(mu, s, angle):
    start = GeodesicState.from_direction(GaussianPoint(mu, s), math.cos(angle), math.sin(angle))
    path = integrate_geodesic(start, 2.0)
    p0 = conserved_quantity(start)
    drift = max(abs(conserved_quantity(x) - p0) for x in path.states if abs(x.dmu_ds) > 1e-6)
    assert drift < 1e-6


# --- closed-form arcs ---------------------------------------------------------

def test_geodesic_through_examples():
    arc = geodesic_through(GaussianPoint(0, 1), GaussianPoint(2, 1))
    assert isinstance(arc, CircleArc)
    assert arc.center_c == pytest.approx(1.0) and arc.radius_r == pytest.approx(math.sqrt(3))
    assert geodesic_through(GaussianPoint(1, 1), GaussianPoint(1, 3)) == VerticalLine(1.0)
    sym = geodesic_through(GaussianPoint(-0.7, 0.4), GaussianPoint(0.7, 0.4))
    assert sym.center_c == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ValueError, match="degenerate geodesic"):
        geodesic_through(GaussianPoint(0, 1), GaussianPoint(0, 1))


@settings(max_examples=100, deadline=None)
@given(st.floats(-5, 5), st.floats(0.1, 5), st.floats(-5, 5), st.floats(0.1, 5))
def test_arc_passes_through_both_points(m1, s1, m2, s2):
    assume((m1, s1) != (m2, s2))
    p, q = GaussianPoint(m1, s1), GaussianPoint(m2, s2)
    arc = geodesic_through(p, q)
    assert arc.residual(p) < 1e-9 and arc.residual(q) < 1e-9


def test_circle_arc_meets_axis_orthogonally():
    for c, r in [(0.0, 1.0), (2.0, 0.5), (-1.0, 4.0)]:
        arc = CircleArc(c, r)
        for t in (1e-6 * R2, math.pi - 1e-6 * R2):  # sigma = 1e-6 r
            p = arc.point_at(t)
            dmu, ds = arc.unit_tangent(p)
            angle_from_vertical = math.atan2(abs(dmu / R2), abs(ds))
            assert angle_from_vertical < 1e-3


# --- shooting -----------------------------------------------------------------

@pytest.mark.parametrize("p,q", [((0, 1), (1, 1)), ((0, 1), (0, math.e)), ((1, 2), (-2, 0.5)),
                                 ((0, 3), (0, 0.2))])
def test_shooting_length_matches_distance(p, q):
    p1, p2 = GaussianPoint(*p), GaussianPoint(*q)
    path = shoot_geodesic(p1, p2)
    d = fisher_rao_distance(p1, p2)
    assert path.arc_length == pytest.approx(d, rel=1e-6)
    assert path.arc_length == pytest.approx(oracles.arc_length_quad(*p, *q), rel=1e-6)
    assert path.end.mu == pytest.approx(p2.mu, abs=1e-6)
    assert path.end.sigma == pytest.approx(p2.sigma, rel=1e-6)
