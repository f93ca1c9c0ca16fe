"""Connector block: deformation tables, generating function, transport,
Saalschutz, and the connected-sum expansion."""

import cmath
import math

import pytest

from omzv import (OhnoParams, OmegaParam, QuadError, compositions, d_norm,
                  double_ohno_sum, dual_index, initial_relation,
                  ohno_generating, ohno_series, ohno_table, omega_Omega,
                  saalschutz_check, transport_relation, zeta_omega)
from omzv.ncseries import series_mul, tau_letter, x_word, y_word
from omzv.ohno import connected_expansion, connected_integral


def test_compositions():
    assert compositions(3, 2) == ((0, 3), (1, 2), (2, 1), (3, 0))
    assert compositions(0, 2) == ((0, 0),)
    assert compositions(2, 1) == ((2,),)


def test_table_base_cell_is_zeta(p1, fast_cfg):
    tbl = ohno_table((2,), 1, p1, fast_cfg)
    z = zeta_omega((2,), p1, fast_cfg)
    assert abs(tbl.get(0, 0) - z.value) < 1e-8
    assert tbl.get(1, 1) == 0j
    assert double_ohno_sum((2,), 0, 0, p1, fast_cfg).value == pytest.approx(
        tbl.get(0, 0), abs=1e-12)


def test_row_duality(p1, fast_cfg):
    k = (3,)
    kd = dual_index(k)
    for m in range(3):
        a = double_ohno_sum(k, m, 0, p1, fast_cfg)
        b = double_ohno_sum(kd, m, 0, p1, fast_cfg)
        assert abs(a.value - b.value) <= max(
            1e-6, 5.0 * (a.err_estimate + b.err_estimate))


def test_generating_at_origin_is_zeta(p1, fast_cfg):
    g = ohno_generating((2,), OhnoParams(0.0, 0.0, order=2), p1, fast_cfg)
    z = zeta_omega((2,), p1, fast_cfg)
    assert abs(g.value - z.value) <= max(1e-9, g.err_estimate
                                         + z.err_estimate)


def test_generating_matches_series(p1, fast_cfg):
    op = OhnoParams(0.003 + 0.001j, -0.002 + 0.0025j, order=2)
    g = ohno_generating((2,), op, p1, fast_cfg)
    s = ohno_series((2,), op, p1, fast_cfg)
    assert abs(g.value - s.value) <= max(1e-9, g.err_estimate
                                         + s.err_estimate)


def test_d_norm_at_origin(ctx1):
    assert d_norm(0.0, 0.0, ctx1) == pytest.approx(1j, rel=1e-12)


def test_initial_relation_point(ctx1, fast_cfg):
    op = OhnoParams(0.013 + 0.004j, -0.009 + 0.007j)
    lhs, rhs = initial_relation((2,), op, ctx1, fast_cfg)
    assert abs(lhs.value - rhs.value) / abs(rhs.value) < 1e-4


def test_transport_relation_point(ctx1, fast_cfg):
    op = OhnoParams(0.005 + 0.003j, -0.004 + 0.002j)
    lhs, rhs = transport_relation((1,), (2,), op, ctx1, fast_cfg, variant=1)
    assert abs(lhs.value - rhs.value) / abs(rhs.value) < 1e-4


def test_connected_sum_is_symmetric_in_lam_mu(ctx1, fast_cfg):
    a = connected_integral((1,), (1,), OhnoParams(0.004 + 0.002j,
                                                  -0.003 + 0.005j),
                           ctx1, fast_cfg)
    b = connected_integral((1,), (1,), OhnoParams(-0.003 + 0.005j,
                                                  0.004 + 0.002j),
                           ctx1, fast_cfg)
    assert abs(a.value - b.value) <= max(
        1e-6, 5.0 * (a.err_estimate + b.err_estimate))


def test_connected_sum_at_origin(ctx1, fast_cfg, p1):
    res = connected_integral((1,), (1,), OhnoParams(), ctx1, fast_cfg)
    want = 1j * zeta_omega((2,), p1, fast_cfg).value
    assert abs(res.value - want) / abs(want) < 1e-6


def test_saalschutz_point(ctx1, fast_cfg):
    ob = ctx1.omega_bar
    lhs, rhs = saalschutz_check(0.20 + 0.55j * ob, -0.15 + 0.70j * ob,
                                -0.05 + 0.80j * ob, 0.12 + 0.78j * ob,
                                ctx1, fast_cfg)
    assert abs(lhs.value - rhs) / abs(rhs) < 1e-5


def test_saalschutz_region_guards(ctx1, fast_cfg):
    ob = ctx1.omega_bar
    with pytest.raises(QuadError):
        saalschutz_check(0.2, 0.3, 0.1, 0.15, ctx1, fast_cfg)
    with pytest.raises(QuadError):
        saalschutz_check(0.2 + 1.2j * ob, -0.15 + 0.7j * ob,
                         -0.05 + 0.8j * ob, 0.12 + 0.78j * ob,
                         ctx1, fast_cfg)


def test_connected_integral_region_guards(ctx1, fast_cfg):
    with pytest.raises(QuadError):
        connected_integral((1,), (1,), OhnoParams(0.9, 0.0), ctx1, fast_cfg)
    with pytest.raises(QuadError):
        connected_integral((1,), (1,), OhnoParams(0.001, 0.002), ctx1,
                           fast_cfg, eps=0.9)


def test_connected_expansion_matches_table(ctx1, fast_cfg, p1):
    exp_tbl = connected_expansion((1,), (1,), 1, ctx1, fast_cfg)
    tbl = ohno_table((2,), 1, p1, fast_cfg)
    combined = sum(exp_tbl.errs.values()) + sum(tbl.errs.values())
    assert exp_tbl.max_abs_diff(tbl) <= max(1e-6, 5.0 * combined)


def test_omega_table_respects_tau(p1, fast_cfg):
    op = OhnoParams(order=2)
    lhs_word = series_mul(series_mul(y_word(2), x_word(2)), x_word(2))
    rhs_word = series_mul(series_mul(y_word(2), tau_letter("x", 2)),
                          x_word(2))
    ta = omega_Omega(lhs_word, op, p1, fast_cfg)
    tb = omega_Omega(rhs_word, op, p1, fast_cfg)
    assert ta.max_abs_diff(tb) < 1e-5
