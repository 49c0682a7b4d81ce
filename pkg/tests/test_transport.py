import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mfib.localmodel import transport
from mfib.localmodel.config import DEFAULT_BUMP, NumericConfig
from mfib.localmodel.models import eval_array


def test_inner_disk_shift_is_two():
    z = np.array([0, 0.3 + 0.2j, 1.2j, -1.3])
    assert np.max(np.abs(transport.s_tilde(1.0, 0.0, z) - 2)) < 1e-8


@settings(max_examples=50, deadline=None)
@given(st.floats(0.0, 0.85), st.floats(0, 2 * np.pi), st.floats(0.05, 1.0))
def test_quadrature_matches_winding_oracle(rad, phi, t):
    z = rad * np.exp(1j * phi)
    # oracle for partial t: unwrap over [0, t] with the same path
    ts = np.linspace(0.0, t, 4097)
    w = transport.w_path(ts, z)
    want = (np.unwrap(np.angle(w))[-1] - np.angle(w[0])) / np.pi
    assert transport.s_tilde(t, 0.0, z)[0] == pytest.approx(want, abs=1e-6)


def test_outer_region_is_untouched():
    z = np.array([2.0, 1.8j, -2.5 + 0.3j])
    r, s = transport.fiber_points(z)
    rt, st_, zt = transport.transport(1.0, r, s, z)
    assert np.allclose(zt, z)
    P = eval_array("Fm", rt, st_, zt)
    assert np.allclose(P, 1, atol=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 3), st.floats(0, 2 * np.pi), st.floats(0, 1), st.booleans())
def test_transport_stays_in_fiber(rad, phi, t, flip):
    z = np.array([rad * np.exp(1j * phi)])
    if abs(abs(z[0]) - 1) < 1e-3 and abs(phi % np.pi) < 1e-3:
        return
    r, s = transport.fiber_points(z, np.array([flip]))
    rt, st_, zt = transport.transport(t, r, s, z)
    assert abs(eval_array("Fm", rt, st_, zt)[0] - np.exp(2j * np.pi * t)) < 1e-6


def test_monodromy_report_defaults():
    rep = transport.monodromy_transport(NumericConfig(), n=200)
    assert rep.passed()
    assert rep.samples > 0


def test_rotation_on_annulus():
    z = 1.5 * np.exp(1j * np.linspace(0, 6, 9))
    _, _, zt = transport.transport(1.0, 1.0, 0.0, z)
    assert np.allclose(zt, np.exp(1j * np.pi * DEFAULT_BUMP(1.5)) * z, atol=1e-12)
