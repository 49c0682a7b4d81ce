import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from mfib.localmodel import appendix
from mfib.localmodel.config import NumericConfig


def test_critical_scan_fm():
    scan = appendix.critical_scan("Fm", NumericConfig(grid=64))
    assert scan.components == 1 and len(scan.points) == 64
    assert scan.residual < 1e-6


def test_critical_scan_feps():
    scan = appendix.critical_scan("Feps", NumericConfig(grid=128))
    assert scan.components == 1
    assert scan.residual < 1e-5


def test_submersion_has_no_critical_points():
    assert appendix.critical_scan("submersion", NumericConfig(grid=8)).components == 0


def test_empty_grid():
    with pytest.raises(ValueError):
        appendix.critical_scan("Fm", NumericConfig(grid=1))


def test_polyline_residual_is_second_order():
    res = [appendix.critical_scan("Feps", NumericConfig(grid=g)).polyline_residual for g in (32, 64, 128)]
    for a, b in zip(res, res[1:]):
        assert a / b == pytest.approx(4, rel=0.05)


def test_symbolic_closed_forms():
    e = appendix.saji_functions()["exprs"]
    th, eps = sp.symbols("theta epsilon", real=True)
    assert sp.simplify(e["r_crit"] + 4 * eps * sp.cos(3 * th)) == 0
    assert sp.simplify(e["H_S"] - 32 * eps * sp.sin(3 * th)) == 0
    assert sp.simplify(e["dH_S"] - 96 * eps * sp.cos(3 * th)) == 0


def test_fold_and_cusp_examples():
    fn = appendix.saji_functions()
    eps = 0.01
    assert fn["H_S"](math.pi / 6, eps) == pytest.approx(32 * eps)
    assert abs(fn["H_S"](math.pi / 3, eps)) < 1e-15
    assert fn["dH_S"](math.pi / 3, eps) == pytest.approx(-96 * eps)


@pytest.mark.parametrize("eps", [0.001, 0.01, 0.1])
def test_three_cusps(eps):
    rep = appendix.saji_classify(eps, NumericConfig())
    assert len(rep.cusps) == 3 and rep.cusp_error < 1e-4
    assert all(s != 0 for s in rep.cusp_slopes)
    assert rep.H_error < 1e-10 and rep.dH_error < 1e-10
    assert rep.lambda_residual < 1e-12
    assert len(rep.folds) == 3


def test_cusps_converge_at_least_second_order():
    errs = [appendix.saji_classify(0.01, NumericConfig(grid=g)).cusp_error for g in (32, 64, 128, 256)]
    for a, b in zip(errs, errs[1:]):
        assert a / b > 3.5


def test_degenerate_eps():
    with pytest.raises(ValueError):
        appendix.saji_classify(0.0)
    with pytest.raises(ValueError):
        appendix.saji_classify(0.2)


def test_gamma_values():
    eps = 0.01
    assert appendix.gamma_curve(0.0, eps) == pytest.approx(-3 * eps)
    th = np.linspace(0, math.pi, 17)
    assert np.allclose(appendix.gamma_curve(th + math.pi, eps), appendix.gamma_curve(th, eps), atol=1e-15)
    assert np.allclose(appendix.gamma_curve(th, eps), appendix.gamma_closed_form(th, eps), atol=1e-15)


def test_gamma_injective():
    rep = appendix.gamma_injectivity(0.01, NumericConfig(), n=2000)
    assert rep.injective and rep.min_separation > 0
    assert rep.factor_identity_error < 1e-12
    assert rep.closed_form_error < 1e-12


@given(st.floats(-3, 3), st.floats(-4, 4), st.floats(-3, 3), st.floats(-3, 3))
def test_identity_examples(r, s, x, y):
    # forward differences of the germ, checked independently of the complex-step code
    h = 1e-6

    def rho(d):
        return -math.sin(s) * d[0] + math.cos(s) * d[1]

    def diff(k):
        p, m = [r, s, x, y], [r, s, x, y]
        p[k] += h
        m[k] -= h
        a, b = appendix._f_germ(*p), appendix._f_germ(*m)
        return ((a[0] - b[0]) / (2 * h), (a[1] - b[1]) / (2 * h))

    assert rho(diff(1)) == pytest.approx(r, abs=1e-6)
    assert rho(diff(0)) == pytest.approx(0, abs=1e-6)
    assert rho(diff(2)) == pytest.approx(2 * (y * math.cos(s) - x * math.sin(s)), abs=1e-6)


def test_ae_identities():
    rep = appendix.ae_identity_check(NumericConfig(seed=7))
    assert rep.points == 1000 and rep.passed(1e-12)
    assert set(rep.errors) == {"d_s", "d_r", "d_x", "d_y"}
