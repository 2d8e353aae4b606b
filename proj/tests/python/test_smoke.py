"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import robustgauss as rg


def test_ball_basics():
    ball = rg.BallSpec.parse("linf")
    assert ball.is_linf
    assert ball.norm(np.array([1.0, -2.0, 3.0])) == 3.0
    assert rg.BallSpec.l2().dual_norm(np.array([3.0, 4.0])) == pytest.approx(5.0)
    with pytest.raises(ValueError):
        rg.BallSpec.lp(0.5)


def test_phi_bar_values():
    assert rg.phi_bar(0.0) == 0.5
    assert rg.phi_bar(1.0) == pytest.approx(0.15865525393145705, abs=1e-14)
    assert rg.phi_bar(-1.0) == pytest.approx(1.0 - 0.15865525393145705, abs=1e-14)


def test_solve_z_l2_closed_form():
    mu = np.array([3.0, 4.0])
    sigma = rg.SpdMatrix.identity(2)
    cert = rg.solve_z(mu, sigma, rg.BallSpec.l2(), 1.0)
    assert cert.converged
    np.testing.assert_allclose(cert.z, [0.6, 0.8], atol=1e-8)


def test_worked_example_snr():
    d = 36
    mu = np.zeros(d)
    mu[0] = 6.0
    model = rg.GaussianMixture(mu, rg.SpdMatrix.identity(d))
    assert rg.adv_snr(model, rg.BallSpec.linf(), 1.0) == pytest.approx(10.0, abs=1e-6)
    assert rg.optimal_robust_risk(model, rg.BallSpec.linf(), 1.0) == pytest.approx(
        rg.phi_bar(5.0), abs=1e-9
    )


def test_fit_plugin_recovers_the_optimum():
    d = 10
    eps = 0.1
    mu = np.full(d, eps)
    mu[0] = 1.0 + eps
    model = rg.GaussianMixture(mu, rg.SpdMatrix.identity(d))
    ball = rg.BallSpec.linf()
    data = rg.sample(model, 20000, seed=7)
    assert set(np.unique(data.y)) <= {-1, 1}
    fit = rg.fit_plugin(data, ball, eps)
    assert fit.solver.converged
    excess = rg.excess_risk(fit.classifier, model, ball, eps)
    assert 0.0 <= excess < 0.01


def test_delta_decomposition_signs():
    d = 6
    mu = np.r_[2.0, np.zeros(d - 1)]
    model = rg.GaussianMixture(mu, rg.SpdMatrix.identity(d))
    ball = rg.BallSpec.l2()
    data = rg.sample(model, 500, seed=11)
    fit = rg.fit_plugin(data, ball, 0.2, tol=1e-11)
    report = rg.delta_decomposition(fit, model, ball, 0.2)
    scale = 1.0 + abs(report.delta_n)
    assert report.residual <= 1e-8 * scale
    assert report.t1 <= 1e-10 and report.t3 <= 1e-10
    assert report.t2 <= 1e-8


def test_errors_map_to_python_exceptions():
    bad = np.array([[1.0, 2.0], [2.0, 1.0]])
    with pytest.raises(rg.NumericError):
        rg.SpdMatrix.cholesky(bad)
    data = rg.Dataset(np.array([[1.0, 0.0], [0.9, 0.1]]), np.array([1, 1], dtype=np.int32))
    with pytest.raises(rg.NumericError):
        rg.fit_plugin(data, rg.BallSpec.l2(), 0.1)


def test_make_instance_roundtrip():
    mu_prime = np.array([1.0, 0.0])
    sigma = rg.SpdMatrix.identity(2)
    inst = rg.make_adv_instance(mu_prime, sigma, rg.BallSpec.l2(), 0.5)
    assert not inst.degenerate
    np.testing.assert_allclose(inst.model.mu, [1.5, 0.0], atol=1e-12)
    cert = rg.solve_z(inst.model.mu, sigma, rg.BallSpec.l2(), 0.5)
    np.testing.assert_allclose(inst.model.mu - cert.z, mu_prime, atol=1e-7)
