"""Hyperbolic gamma: reflection, quasi-periods, far field, theta kernel."""

import math

import numpy as np
import pytest

from omzv import GammaContext, OmegaParam, QuadConfig, QuadError, theta_kernel
from omzv.hypgamma import G, _far_threshold, _log_G_far, log_G


def make_ctx(omega):
    return GammaContext(OmegaParam(omega),
                        cfg=QuadConfig(rel_tol=1e-7, abs_tol=1e-9))


def sample_grid(ctx):
    s0 = ctx.core_band
    return [re + 1j * im for re in (-1.3, 0.4, 1.1)
            for im in (-0.6 * s0, 0.0, 0.5 * s0)]


def test_log_G_at_zero(ctx1):
    assert log_G(0.0, ctx1) == 0.0


@pytest.mark.parametrize("omega", [0.6, 1.0, 1.4])
def test_reflection(omega):
    ctx = make_ctx(omega)
    for z in sample_grid(ctx):
        assert abs(np.exp(log_G(z, ctx) + log_G(-z, ctx)) - 1.0) < 1e-8


@pytest.mark.parametrize("omega", [0.6, 1.0, 1.4])
def test_shift_identities(omega):
    ctx = make_ctx(omega)
    w = omega
    for z in sample_grid(ctx):
        lhs = np.exp(log_G(z, ctx) - log_G(z - 1j, ctx))
        rhs = -2j * np.sinh(math.pi * w * z + 1j * math.pi * (1.0 - w) / 2)
        assert abs(lhs / rhs - 1.0) < 1e-8
        lhs = np.exp(log_G(z, ctx) - log_G(z - 1j / w, ctx))
        rhs = -2j * np.sinh(math.pi * z + 1j * math.pi * (1.0 - 1.0 / w) / 2)
        assert abs(lhs / rhs - 1.0) < 1e-8


@pytest.mark.parametrize("omega", [0.6, 1.0, 1.4])
def test_far_field_asymptotic(omega):
    ctx = make_ctx(omega)
    thr = _far_threshold(omega)
    for x in (0.7 * thr, thr - 0.2):
        for sgn in (1.0, -1.0):
            z = sgn * x + 0.1j * ctx.core_band
            quad_val = np.exp(log_G(z, ctx))
            asym = np.exp(complex(_log_G_far(np.asarray(z), omega)))
            assert abs(quad_val / asym - 1.0) < 1e-3


def test_far_field_switch_is_seamless(ctx1):
    thr = _far_threshold(1.0)
    below = log_G(thr - 1e-6, ctx1)
    above = log_G(thr + 1e-6, ctx1)
    assert abs(below - above) / abs(above) < 1e-6


def test_log_G_pole_raises(ctx1):
    with pytest.raises(QuadError):
        log_G(2j, ctx1)


def test_G_matches_exp_log(ctx1):
    z = 0.4 + 0.2j
    assert G(z, ctx1) == pytest.approx(np.exp(log_G(z, ctx1)), rel=1e-12)


def test_G_overflow_raises(ctx1):
    with pytest.raises(QuadError):
        G(40.0 + 20j, ctx1)


def test_theta_kernel_symmetry(ctx1):
    a = theta_kernel(0.3, -0.2, 0.01, 0.02, ctx1)
    assert theta_kernel(-0.2, 0.3, 0.01, 0.02, ctx1) == pytest.approx(
        a, rel=1e-12)
    assert theta_kernel(0.3, -0.2, 0.02, 0.01, ctx1) == pytest.approx(
        a, rel=1e-12)


def test_theta_kernel_pole_raises(ctx1):
    with pytest.raises(QuadError):
        theta_kernel(0.3, -0.3, 0.0, 0.0, ctx1)
