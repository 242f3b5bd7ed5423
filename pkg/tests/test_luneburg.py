import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from visualspace.errors import IdealPointError, RootFindingError
from visualspace.experiments import TABLE1, bipolar_from_physical, table1_observer
from visualspace.luneburg import (BipolarPoint, ObserverProfile, PhysicalPoint, PolarVisual,
                                  cartesian_to_polar, horopter_circle, horopter_curve,
                                  inverse_luneburg, luneburg_map, median_curvature,
                                  parallax_at_depth, physical_from_bipolar, polar_to_cartesian,
                                  solve_lambda0, straight_horopter_distance,
                                  straight_horopter_equation)

AJ = ObserverProfile(10.68, 6.48, name="A.J")


# --- polar conversions --------------------------------------------------------

def test_polar_examples():
    assert polar_to_cartesian(PolarVisual(1, math.pi / 2), half_plane=True) == pytest.approx(
        (0, 1), abs=1e-16)
    assert polar_to_cartesian(PolarVisual(2, math.pi / 4)) == pytest.approx(
        (math.sqrt(2), math.sqrt(2)), rel=1e-15)
    with pytest.raises(ValueError):
        polar_to_cartesian(PolarVisual(1, -0.1), half_plane=True)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 10), st.floats(-3.1, 3.1))
def test_polar_round_trip(rho, phi):
    back = cartesian_to_polar(*polar_to_cartesian(PolarVisual(rho, phi)))
    assert back.rho == pytest.approx(rho, rel=1e-14)
    assert back.phi == pytest.approx(phi, abs=1e-14)


# --- Luneburg map -----------------------------------------------------------------

def test_luneburg_map_examples():
    assert luneburg_map(BipolarPoint(1e-12, 0), AJ).rho == pytest.approx(2.0, abs=1e-10)
    assert luneburg_map(BipolarPoint(1e-12, 0), AJ).rho < 2.0
    rho = luneburg_map(BipolarPoint(0.07224, 0.0), AJ).rho
    assert rho == pytest.approx(2 * math.exp(-10.68 * 0.07224), rel=1e-15)
    # 2 exp(-0.7715232) = 0.924617; the exponent -0.771526 would give 0.924614
    assert rho == pytest.approx(0.924617, abs=1e-6)
    assert luneburg_map(BipolarPoint(0.05, 0.1), AJ).phi == 0.1


def test_inverse_luneburg_examples():
    for tau in (3.32, 10.68, 16.9):
        prof = ObserverProfile(tau, 6.5)
        assert inverse_luneburg(2 * math.exp(-tau * 0.05), prof) == pytest.approx(0.05, rel=1e-14)
    assert inverse_luneburg(0.924585, AJ) == pytest.approx(0.07224, abs=1e-5)
    for bad in (2.0, 0.0, 2.5, -1.0):
        with pytest.raises(IdealPointError):
            inverse_luneburg(bad, AJ)


# --- straight horopter --------------------------------------------------------------

def test_lambda0_examples():
    assert solve_lambda0(AJ) == pytest.approx(0.072241, abs=5e-6)
    wk = ObserverProfile(16.90, 5.80)
    assert solve_lambda0(wk) == pytest.approx(0.045659, abs=5e-6)
    svs = ObserverProfile(3.32, 6.60)
    lam = solve_lambda0(svs)
    # the root is 0.231824; a printed 0.23190 is off in the fourth digit but both
    # give L0 = 28.46 +/- 0.05
    assert lam == pytest.approx(0.231824, abs=1e-6)
    assert 6.60 / lam == pytest.approx(28.46, abs=0.05)


@pytest.mark.parametrize("entry", TABLE1, ids=lambda e: e.name)
def test_lambda0_matches_brentq_and_residual(entry):
    prof = entry.profile
    lam, res = solve_lambda0(prof, full_output=True)
    # stopping on |f| < 1e-12 with |f'| ~ 0.4 pins the root to a few 1e-12
    assert lam == pytest.approx(oracles.lambda0_brentq(prof.tau), abs=1e-11)
    assert abs(straight_horopter_equation(lam, prof)) < 1e-12
    assert res.residual < 1e-12


@pytest.mark.parametrize("name,expected", [("A.J", 89.70), ("T.K", 101.51), ("H.S", 79.21)])
def test_straight_horopter_distance_examples(name, expected):
    assert straight_horopter_distance(table1_observer(name)) == pytest.approx(expected, abs=0.05)


def test_nonzero_kappa_shifts_root():
    prof = ObserverProfile(10.68, 6.48, K3=-0.5)
    assert prof.kappa == pytest.approx(math.log(2) / (2 * 10.68))
    assert solve_lambda0(prof) == pytest.approx(oracles.lambda0_brentq(10.68, -0.5), abs=1e-11)


def test_no_sign_change_is_reported():
    with pytest.raises(RootFindingError, match="sign"):
        solve_lambda0(AJ, bracket=(0.5, 1.5))


# --- physical coordinates --------------------------------------------------------

def test_physical_examples():
    nu, lam = 6.48, 0.072241
    p = physical_from_bipolar(lam, 0.0, nu)
    assert p.y == 0.0
    assert p.x == pytest.approx(nu * (1 + math.cos(lam)) / (2 * math.sin(lam)), rel=1e-15)
    assert p.x == pytest.approx(89.66, abs=0.01)
    q = physical_from_bipolar(lam, 0.2, nu)
    r = physical_from_bipolar(lam, -0.2, nu)
    assert (r.x, r.y) == (q.x, -q.y)
    with pytest.raises(ValueError):
        physical_from_bipolar(0.0, 0.1, nu)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-4, 0.05))
def test_small_angle_limit(lam):
    p = physical_from_bipolar(lam, 0.0, 6.5)
    assert abs(p.x * lam / 6.5 - 1) < 2e-3


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 1.5), st.floats(-0.7, 0.7), st.floats(5.5, 7.0))
def test_physical_point_subtends_its_parallax(lam, phi, nu):
    p = physical_from_bipolar(lam, phi, nu)
    assert oracles.eye_distances_to_parallax(p.x, p.y, nu) == pytest.approx(lam, rel=1e-9)
    b = bipolar_from_physical(p, nu)
    assert (b.lambda_, b.psi) == pytest.approx((lam, phi), abs=1e-10)


def test_parallax_at_depth():
    assert parallax_at_depth(100.0, 6.4) == pytest.approx(
        oracles.eye_distances_to_parallax(100.0, 0.0, 6.4), rel=1e-14)
    with pytest.raises(ValueError):
        parallax_at_depth(0.0, 6.4)


# --- horopters -----------------------------------------------------------------

def test_horopter_vertex_and_symmetry():
    lam = 0.1
    pts = horopter_curve(AJ, lam, 101)
    mid = pts[50]
    v = physical_from_bipolar(lam, 0.0, AJ.nu)
    assert (mid.x, mid.y) == pytest.approx((v.x, 0.0), abs=1e-12)
    for a, b in zip(pts, reversed(pts)):
        assert a.x == pytest.approx(b.x, rel=1e-12) and a.y == pytest.approx(-b.y, rel=1e-12)


@pytest.mark.parametrize("K3", [-1.0, -0.5])
@pytest.mark.parametrize("lam_v", [0.03, 0.05, 0.07])
def test_points_satisfy_cosh_ratio_relation(K3, lam_v):
    prof = ObserverProfile(10.68, 6.48, K3=K3)
    circ = horopter_circle(prof, lam_v)
    for phi in np.linspace(-0.8, 0.8, 9) * circ.max_angle:
        lam = inverse_luneburg(float(circ.rho_at(phi)), prof)
        t, k = prof.tau, prof.kappa
        assert math.cosh(t * (lam + k)) / math.cosh(t * (lam_v + k)) == pytest.approx(
            math.cos(phi), abs=1e-9)


def test_median_curvature_matches_polynomial_fit():
    for lam in (0.04, 0.1, 0.2):
        pts = horopter_curve(AJ, lam, 201, angle_fraction=0.05)
        y = np.array([p.y for p in pts])
        x = np.array([p.x for p in pts])
        coef = np.polyfit(y, x, 4)
        assert median_curvature(AJ, lam) == pytest.approx(2 * coef[-3], rel=1e-3, abs=1e-9)


@pytest.mark.parametrize("entry", TABLE1, ids=lambda e: e.name)
def test_curvature_sign_around_lambda0(entry):
    prof = entry.profile
    lam0 = solve_lambda0(prof)
    L0 = prof.nu / lam0
    assert abs(median_curvature(prof, lam0)) < 1e-3 / L0
    # nearer vertex bends toward the observer (x decreases away from the median)
    assert median_curvature(prof, 1.5 * lam0) < 0
    assert median_curvature(prof, 0.7 * lam0) > 0


def test_vertex_outside_basic_circle():
    with pytest.raises(IdealPointError):
        horopter_curve(ObserverProfile(10.68, 6.48, K3=-4.0), 0.01)


def test_horopter_argument_checks():
    with pytest.raises(ValueError):
        horopter_curve(AJ, 0.1, 2)
    with pytest.raises(ValueError):
        horopter_curve(AJ, -0.1)
    with pytest.raises(ValueError):
        horopter_curve(AJ, 0.1, max_angle=10.0)


def test_horopter_points_are_in_front():
    for lam in (0.02, 0.07, 0.3):
        assert all(isinstance(p, PhysicalPoint) and p.in_front for p in horopter_curve(AJ, lam))
