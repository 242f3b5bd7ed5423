import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from visualspace.errors import CurvatureError, QuadratureError
from visualspace.manifold import (GaussianPoint, MetricTensor2, QuadratureSpec, TuningCurve,
                                  christoffel_numeric, christoffel_symbols,
                                  fisher_matrix_numeric, fisher_rao_distance,
                                  gaussian_curvature_numeric, kl_divergence, line_element,
                                  metric_tensor, scalar_curvature, tuning_curve_eval)

mus = st.floats(-20, 20)
sigmas = st.floats(0.05, 20)
points = st.builds(GaussianPoint, mus, sigmas)


# --- types ----------------------------------------------------------------

@pytest.mark.parametrize("mu,sigma", [(0, 0), (0, -1), (math.nan, 1), (0, math.inf)])
def test_invalid_points_rejected(mu, sigma):
    with pytest.raises(ValueError):
        GaussianPoint(mu, sigma)


def test_density_is_normalized():
    p = GaussianPoint(1.5, 0.3)
    r = np.linspace(-5, 8, 20001)
    assert np.trapezoid(p.density(r), r) == pytest.approx(1.0, abs=1e-9)


def test_metric_tensor_rejects_indefinite():
    with pytest.raises(ValueError):
        MetricTensor2(1.0, 1.0, 2.0)


# --- tuning curve -----------------------------------------------------------

def test_tuning_curve_examples():
    unit = TuningCurve(1.0, GaussianPoint(0, 1))
    assert tuning_curve_eval(unit, 0.0) == 1.0
    assert tuning_curve_eval(unit, 1.0) == pytest.approx(0.606531, abs=1e-6)
    assert TuningCurve(5.0, GaussianPoint(2, 0.5))(2.0) == 5.0


def test_tuning_curve_vectorized_and_bounded():
    tc = TuningCurve(3.0, GaussianPoint(-1, 2))
    out = tc(np.linspace(-10, 10, 101))
    assert out.shape == (101,)
    assert np.all((out > 0) & (out <= 3.0))


# --- metric -----------------------------------------------------------------

@pytest.mark.parametrize("mu,sigma,expected", [(0, 1, (1, 2, 0)), (7, 1, (1, 2, 0)),
                                               (0, 2, (0.25, 0.5, 0))])
def test_metric_tensor_examples(mu, sigma, expected):
    g = metric_tensor(GaussianPoint(mu, sigma))
    assert (g.g_mumu, g.g_sigmasigma, g.g_musigma) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("mu,sigma", [(0, 1), (3, 0.5), (-2, 3.0)])
def test_fisher_numeric_matches_scipy_oracle(mu, sigma):
    ref = oracles.fisher_quad(mu, sigma)
    g = fisher_matrix_numeric(GaussianPoint(mu, sigma))
    assert g.as_array() == pytest.approx(ref, abs=1e-6)


def test_fisher_numeric_examples():
    g = fisher_matrix_numeric(GaussianPoint(0, 1))
    assert (g.g_mumu, g.g_sigmasigma, g.g_musigma) == pytest.approx((1, 2, 0), abs=1e-6)
    g = fisher_matrix_numeric(GaussianPoint(3, 0.5))
    assert (g.g_mumu, g.g_sigmasigma, g.g_musigma) == pytest.approx((4, 8, 0), abs=1e-6)


def test_fisher_numeric_records_rule():
    g = fisher_matrix_numeric(GaussianPoint(0, 1))
    assert g.info["rule"] == "trapezoid" and g.info["nodes"] == 4096
    assert g.info["normalization_residual"] < 1e-6


def test_fisher_numeric_truncated_window_fails():
    with pytest.raises(QuadratureError, match="integrates to"):
        fisher_matrix_numeric(GaussianPoint(0, 1), QuadratureSpec(half_width=1.0))


# --- KL -----------------------------------------------------------------------

def test_kl_examples():
    p = GaussianPoint(0, 1)
    assert kl_divergence(p, p) == 0.0
    assert kl_divergence(p, GaussianPoint(1, 1)) == pytest.approx(oracles.kl_quad(0, 1, 1, 1),
                                                                  abs=1e-10)
    assert kl_divergence(p, GaussianPoint(1, 1)) == pytest.approx(0.5, abs=1e-12)
    small = kl_divergence(p, GaussianPoint(0.01, 1))
    assert small == pytest.approx(5.0e-5, rel=1e-9)
    assert small == pytest.approx(0.5 * line_element(p, 0.01, 0), rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(points, points)
def test_kl_closed_matches_quadrature(p1, p2):
    # keep the integrand within double range on the window of p1
    if abs(p1.mu - p2.mu) / p2.sigma > 30 or p1.sigma / p2.sigma > 20:
        return
    ref = oracles.kl_quad(p1.mu, p1.sigma, p2.mu, p2.sigma)
    assert kl_divergence(p1, p2) == pytest.approx(ref, rel=1e-7, abs=1e-10)
    assert kl_divergence(p1, p2, method="quadrature") == pytest.approx(ref, rel=1e-6, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(points, points)
def test_kl_nonnegative(p1, p2):
    assert kl_divergence(p1, p2) >= 0


# --- Christoffel symbols and curvature ----------------------------------------

def test_christoffel_examples():
    g = christoffel_symbols(GaussianPoint(0, 1))
    assert (g.mu_musigma, g.sigma_sigmasigma, g.sigma_mumu) == (-1.0, -1.0, 0.5)
    assert (g.mu_mumu, g.mu_sigmasigma, g.sigma_musigma) == (0.0, 0.0, 0.0)
    g2 = christoffel_symbols(GaussianPoint(0, 2))
    assert (g2.mu_musigma, g2.sigma_mumu) == (-0.5, 0.25)
    assert christoffel_symbols(GaussianPoint(9, 2)) == g2


@settings(max_examples=30, deadline=None)
@given(mus, st.floats(0.2, 10))
def test_christoffel_closed_matches_oracle(mu, s):
    ref = oracles.christoffel_fd(mu, s)
    p = GaussianPoint(mu, s)
    assert christoffel_symbols(p).as_array() == pytest.approx(ref, abs=1e-7 / s**3)
    assert christoffel_numeric(p).as_array() == pytest.approx(ref, abs=1e-7 / s**3)


def test_scalar_curvature_examples():
    assert scalar_curvature(GaussianPoint(0, 1)) == -1.0
    assert scalar_curvature(GaussianPoint(5, 0.3)) == -1.0
    assert scalar_curvature(GaussianPoint(1, 2), method="numeric", h=1e-3) == pytest.approx(
        -1.0, abs=1e-4)


@pytest.mark.parametrize("mu,s", [(0, 1), (1, 2), (-3, 0.5), (4, 5)])
def test_brioschi_matches_orthogonal_formula(mu, s):
    p = GaussianPoint(mu, s)
    h = 1e-3 * s
    k = gaussian_curvature_numeric(p, h)
    assert k == pytest.approx(oracles.gaussian_curvature_orthogonal(mu, s, h), abs=1e-5)
    assert k == pytest.approx(-0.5, abs=5e-5)


def test_brioschi_on_a_flat_metric():
    flat = lambda p: MetricTensor2(1.0, 1.0)
    assert gaussian_curvature_numeric(GaussianPoint(0, 1), 1e-3, flat) == pytest.approx(0, abs=1e-9)


def test_curvature_step_underflow_is_reported():
    with pytest.raises(CurvatureError, match="underflow"):
        scalar_curvature(GaussianPoint(0, 1), method="numeric", h=1e-9)
    with pytest.raises(CurvatureError):
        scalar_curvature(GaussianPoint(0, 0.1), method="numeric", h=0.06)


# --- distance -----------------------------------------------------------------

def test_distance_examples():
    assert fisher_rao_distance(GaussianPoint(0, 1), GaussianPoint(0, 1)) == 0.0
    assert fisher_rao_distance(GaussianPoint(0, 1), GaussianPoint(0, math.e)) == pytest.approx(
        math.sqrt(2), rel=1e-15)
    assert fisher_rao_distance(GaussianPoint(0, 1), GaussianPoint(1, 1)) == pytest.approx(
        math.sqrt(2) * math.log(2), rel=1e-15)
    assert fisher_rao_distance(GaussianPoint(0, 1), GaussianPoint(1, 1)) == pytest.approx(
        0.980258, abs=1e-6)


@settings(max_examples=200, deadline=None)
@given(points, points)
def test_distance_matches_both_oracles(p1, p2):
    d = fisher_rao_distance(p1, p2)
    ref = oracles.distance_arccosh(p1.mu, p1.sigma, p2.mu, p2.sigma)
    assert d == pytest.approx(ref, rel=1e-10, abs=1e-7)
    if d > 1e-3:
        assert d == pytest.approx(oracles.distance_log(p1.mu, p1.sigma, p2.mu, p2.sigma),
                                  rel=1e-9)


@settings(max_examples=200, deadline=None)
@given(points, points, points)
def test_distance_axioms(a, b, c):
    dab = fisher_rao_distance(a, b)
    assert dab == fisher_rao_distance(b, a)
    assert dab >= 0
    assert fisher_rao_distance(a, c) <= dab + fisher_rao_distance(b, c) + 1e-12 * (1 + dab)


@settings(max_examples=100, deadline=None)
@given(mus, sigmas, sigmas)
def test_vertical_closed_form(mu, a, b):
    d = fisher_rao_distance(GaussianPoint(mu, a), GaussianPoint(mu, b))
    assert d == pytest.approx(math.sqrt(2) * abs(math.log(b / a)), abs=1e-12, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(points, points, st.floats(-10, 10))
def test_translation_invariance(p1, p2, t):
    d = fisher_rao_distance(p1, p2)
    dt = fisher_rao_distance(GaussianPoint(p1.mu + t, p1.sigma), GaussianPoint(p2.mu + t, p2.sigma))
    assert dt == pytest.approx(d, abs=1e-12, rel=1e-12)


def test_distance_keeps_precision_for_nearby_points():
    p = GaussianPoint(0, 1)
    q = GaussianPoint(1e-9, 1)
    assert fisher_rao_distance(p, q) == pytest.approx(1e-9, rel=1e-12)
