import numpy as np
import pytest

from opnorm_lab.quadrature import (
    circle_mean_abs_pow,
    extrapolate_to_zero,
    gauss_rule_01,
    integrate_adaptive_01,
    jacobi_rule_01,
)


@pytest.mark.parametrize("n", [2, 16, 64, 128])
def test_gauss_weights_sum_to_one(n):
    nodes, weights = gauss_rule_01(n)
    assert np.all((nodes > 0) & (nodes < 1))
    assert float(np.sum(weights)) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.5])
def test_jacobi_weights_sum_to_one(alpha):
    nodes, weights = jacobi_rule_01(64, alpha)
    assert np.all((nodes > 0) & (nodes < 1))
    assert float(np.sum(weights)) == pytest.approx(1.0, abs=1e-13)


def test_gauss_exact_on_polynomials():
    nodes, weights = gauss_rule_01(8)
    # degree 15 is the highest degree an 8-node rule integrates exactly
    vals = nodes**15
    assert float(weights @ vals) == pytest.approx(1.0 / 16.0, abs=1e-15)


def test_adaptive_smooth_integrand():
    res = integrate_adaptive_01(lambda t: np.exp(t), atol=1e-12)
    assert res.converged
    assert res.value == pytest.approx(np.e - 1.0, abs=1e-12)


def test_adaptive_kinked_integrand():
    for c in (0.3, 0.9, 1 / 3):
        res = integrate_adaptive_01(lambda t: abs(t - c), atol=1e-10)
        exact = 0.5 * (c**2 + (1 - c) ** 2)
        assert res.converged
        assert res.value == pytest.approx(exact, abs=1e-9)


def test_adaptive_complex_integrand():
    res = integrate_adaptive_01(lambda t: np.exp(1j * np.pi * t), atol=1e-12)
    assert res.converged
    assert abs(res.value - 2j / np.pi) < 1e-12


def test_adaptive_flags_divergence():
    res = integrate_adaptive_01(lambda t: 1.0 / t, atol=1e-9, max_depth=16)
    assert not res.converged
    assert res.refine_delta > 1e-3


def test_circle_mean_constant_and_monomial():
    means = circle_mean_abs_pow(lambda w: np.ones_like(w), [0.3, 0.9], 2.0, n0=64)
    assert np.allclose(means, 1.0, atol=1e-14)
    means = circle_mean_abs_pow(lambda w: w**3, [0.5], 4.0, n0=64)
    assert means[0] == pytest.approx(0.5**12, abs=1e-14)


def test_circle_mean_matches_poisson_identity():
    # mean over the circle of |1 - a r e^{i theta}|^-2 equals 1/(1 - a^2 r^2)
    a = 0.9
    means = circle_mean_abs_pow(
        lambda w: 1.0 / (1.0 - a * w), [0.5, 0.99], 2.0, n0=256
    )
    for r, m in zip((0.5, 0.99), means):
        assert m == pytest.approx(1.0 / (1.0 - a * a * r * r), rel=1e-10)


def test_extrapolate_linear_sequence():
    h = 2.0 ** -np.arange(4, 12)
    y = 3.0 + 2.0 * h
    assert extrapolate_to_zero(h, y) == pytest.approx(3.0, abs=1e-12)
