"""Contour quadrature on vertical lines: accuracy, honesty, and guards."""

import cmath
import math

import numpy as np
import pytest

from omzv import QuadConfig, QuadError
from omzv.quad import integrate_line, integrate_multi, integrate_real_line

TWO_PI = 2.0 * math.pi


def exp_kernel(alpha):
    """t -> e^(alpha t) / (e^(2 pi i t) - 1), integrable on Re t = -eps
    for 0 < Im alpha < 2 pi, with line integral 1 / (e^alpha - 1)."""
    return lambda t: np.exp(alpha * t) / (np.exp(2j * np.pi * t) - 1.0)


def kernel_decay(alpha):
    return (TWO_PI - alpha.imag, alpha.imag)


def test_kernel_lemma_midpoint(cfg):
    alpha = math.pi * 1j
    res = integrate_line(exp_kernel(alpha), 0.25, cfg,
                         decay=kernel_decay(alpha))
    assert res.value == pytest.approx(-0.5, abs=1e-10)
    assert abs(res.value - (-0.5)) <= 10.0 * res.err_estimate + 1e-12


@pytest.mark.parametrize("alpha", [0.3 + 1.0j, -0.5 + 2.0j, 1.2 + 4.5j,
                                   0.0 + 0.7j, 2.0 + 5.8j])
def test_kernel_lemma_battery(cfg, alpha):
    exact = 1.0 / (cmath.exp(alpha) - 1.0)
    res = integrate_line(exp_kernel(alpha), 0.3, cfg,
                         decay=kernel_decay(alpha))
    assert abs(res.value - exact) / abs(exact) < 1e-8


def test_line_is_eps_independent(cfg):
    alpha = 0.4 + 2.5j
    f = exp_kernel(alpha)
    vals = [integrate_line(f, eps, cfg, decay=kernel_decay(alpha)).value
            for eps in (0.1, 0.25, 0.45)]
    assert max(abs(v - vals[0]) for v in vals) < 1e-10


def test_real_line_sech(cfg):
    res = integrate_real_line(lambda x: 1.0 / np.cosh(np.pi * x), cfg,
                              decay=(math.pi, math.pi))
    assert res.value == pytest.approx(1.0, abs=1e-10)


def test_real_line_gaussian_with_oscillation(cfg):
    # int e^(-x^2) cos(3x) dx = sqrt(pi) e^(-9/4)
    res = integrate_real_line(lambda x: np.exp(-x * x) * np.cos(3.0 * x),
                              QuadConfig(half_width=8.0), decay=(2.0, 2.0),
                              osc=3.0)
    exact = math.sqrt(math.pi) * math.exp(-2.25)
    assert res.value == pytest.approx(exact, rel=1e-9)


def test_multi_separable_product(cfg):
    alpha = math.pi * 1j
    f = exp_kernel(alpha)
    dec = kernel_decay(alpha)
    res = integrate_multi(lambda t1, t2: f(t1) * f(t2), [0.25, 0.3], cfg,
                          decays=[dec, dec])
    assert res.value == pytest.approx(0.25, abs=1e-9)
    assert abs(res.value - 0.25) <= 10.0 * res.err_estimate + 1e-12


def test_error_estimates_are_honest(cfg):
    for alpha in (0.3 + 1.0j, 1.2 + 4.5j):
        exact = 1.0 / (cmath.exp(alpha) - 1.0)
        res = integrate_line(exp_kernel(alpha), 0.3, cfg,
                             decay=kernel_decay(alpha))
        assert abs(res.value - exact) <= 10.0 * res.err_estimate + 1e-12


def test_rejects_bad_decay(cfg):
    f = exp_kernel(math.pi * 1j)
    with pytest.raises((QuadError, ValueError)):
        integrate_line(f, 0.25, cfg, decay=(0.0, -1.0))


def test_config_fingerprint_tracks_settings():
    base = QuadConfig()
    assert base.fingerprint() == QuadConfig().fingerprint()
    assert QuadConfig(rel_tol=1e-7).fingerprint() != base.fingerprint()
    assert QuadConfig(panel_order=20).fingerprint() != base.fingerprint()
