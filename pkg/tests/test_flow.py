import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mfib.localmodel import flow
from mfib.localmodel.config import NumericConfig
from mfib.localmodel.models import LocalPoint, eval_array

CFG = NumericConfig()


@pytest.fixture(scope="module")
def circles():
    return flow.attach_circles(0.5)


@pytest.fixture(scope="module")
def flowed(circles):
    return [flow.isotopy_flow(C, 1.0, CFG) for C in circles]


def test_field_examples():
    # z = 1 and r cos(2 pi s) = -1/2 puts p on the level with rho_z = 1
    v = flow.flow_field(LocalPoint("A", 0.5, 0.5, 1.0))
    assert np.allclose(v, [0, 0, 0, 0.5], atol=1e-15)
    v = flow.flow_field(LocalPoint("A", 0.5, 0.0, 0j))
    assert np.allclose(v, [0, 1 / math.pi, 0, 0], atol=1e-15)


def test_field_domain_errors():
    with pytest.raises(flow.DomainError):
        flow.flow_field(LocalPoint("A", 0.2, 0.0, 0j))
    with pytest.raises(flow.DomainError):
        flow.flow_field(LocalPoint("M", 0.5, 0.0, 0j))


level_points = st.tuples(st.floats(0.0, 1.0), st.floats(-0.6, 0.6), st.floats(-0.6, 0.6)).filter(
    lambda p: 0.02 < abs(0.5 - (p[1] ** 2 - p[2] ** 2)) and abs(math.cos(2 * math.pi * p[0])) > 0.05
    and abs(complex(p[1], p[2])) > 1e-3)


@settings(max_examples=200)
@given(level_points)
def test_field_derivatives_on_level(p):
    s, x, y = p
    r = (0.5 - (x * x - y * y)) / math.cos(2 * math.pi * s)
    if abs(r) < 0.05 or abs(r) > 20:
        return
    P = np.array([[r, s, x, y]])
    assert abs(flow.omega(P)[0] + 0.5) < 1e-12
    V = flow.field_array(P)
    assert abs(flow.directional_derivative(flow.omega, P, V)[0]) < 1e-6
    assert abs(flow.directional_derivative(flow.eta, P, V)[0] - 1) < 1e-6


def test_attach_circles_equation():
    for C in flow.attach_circles(0.01):
        r, s, x, y = C.data.T
        assert np.max(np.abs(x * x + np.cos(2 * np.pi * s) ** 2 - 0.01)) < 1e-12
        assert np.all(y == 0) and np.allclose(r, np.cos(2 * np.pi * s))
    c1, c2 = flow.attach_circles(0.01)
    assert c1.data[:, 1].max() < 0.5 < c2.data[:, 1].min()
    with pytest.raises(ValueError):
        flow.attach_circles(1.0)


@pytest.mark.parametrize("eps", [0.01, 0.3])
def test_level_crossings(eps):
    n = 4000
    for C in flow.attach_circles(eps, n):
        b = flow.crossing_bound(eps)
        emax = float(np.max(C.metadata["eta"]))
        assert emax == pytest.approx(b, abs=1e-6)
        assert flow.level_crossings(C, 0.5 * b) == 2
        assert flow.level_crossings(C, 1.01 * b) == 0
        # u at the maximum: tangency, a single point
        assert flow.level_crossings(C, emax) == 1
        assert flow.level_crossings(C, float(np.min(C.metadata["eta"]))) == 1


def test_zero_eta_samples_fixed(circles):
    C = circles[0]
    H = flow.isotopy_flow(C, 0.6, CFG)
    still = np.abs(C.metadata["eta"]) < 1e-15
    assert still.any()
    assert np.max(np.abs(H.data[still] - C.data[still])) < 1e-13


@pytest.mark.parametrize("t", [0.25, 0.5, 0.75, 1.0])
def test_isotopy_flow_reports(circles, t):
    for C in circles:
        rep = flow.isotopy_flow(C, t, CFG).metadata["report"]
        assert rep.passed(1e-6), rep


def test_endpoint_in_fiber(flowed):
    for H in flowed:
        Fa = eval_array("Fa", H.data[:, 0], H.data[:, 1], H.z)
        assert np.max(np.abs(Fa - 0.5)) < 1e-6
        assert np.max(np.abs(flow.eta(H.data))) < 1e-6


def test_flow_rejects_off_level():
    C = flow.attach_circles(0.3)[0]
    with pytest.raises(flow.DomainError):
        flow.isotopy_flow(C, 1.0, CFG)


def test_framing(circles):
    for C in circles:
        f = flow.tangency_framing_check(C, CFG)
        assert f.identity_error_r < 1e-12 and f.identity_error_y < 1e-12
        assert f.tangent_margin > 0 and f.normal_margin > 0 and f.dy_margin > 0
        assert f.relative_winding == 0
        assert f.passed(1e-12)


def test_rho_r_one_identity():
    # on samples with rho_r = 1: V(r - cos 2 pi s) = 2 sin 2 pi s
    s = np.linspace(0.05, 0.45, 9)
    P = np.column_stack([np.cos(2 * np.pi * s), s, np.full(9, 0.05), np.zeros(9)])
    V = flow.field_array(P)
    lhs = V[:, 0] + 2 * np.pi * np.sin(2 * np.pi * s) * V[:, 1]
    assert np.allclose(lhs, 2 * np.sin(2 * np.pi * s), atol=1e-12)


def test_small_circle_winding():
    b1, b2 = flow.branch_reference()
    assert (b1, b2) == pytest.approx([(0.5, 0.0), (-0.5, 0.5)])
    rec = flow.project_and_wind([flow.circle_around(b1, 0.05)])[0]
    assert rec.branch == (1, 0) and rec.core == 0
    rec = flow.project_and_wind([flow.circle_around(b2, 0.05)])[0]
    assert rec.branch == (0, 1)


def test_collision_detected():
    b1, _ = flow.branch_reference()
    rs = np.array([[b1[0] + 0.05 * math.cos(t), b1[1] + 0.05 * math.sin(t)]
                   for t in np.linspace(0, 2 * math.pi, 50, endpoint=False)])
    rs[0] = b1
    with pytest.raises(flow.BranchCollisionError):
        flow.project_and_wind([rs])


def test_arc_summaries(flowed):
    a1, a2 = (flow.arc_summary(H) for H in flowed)
    assert {a1.start, a1.end} == {1, 2} and {a2.start, a2.end} == {1, 2}
    assert a1.core_crossings == pytest.approx((0.25,), abs=1e-4)
    assert a2.core_crossings == pytest.approx((0.75,), abs=1e-4)
    assert a1.doubling_error < 1e-9 and a2.doubling_error < 1e-9
    assert a1.branch_gap < 1e-6 and a2.branch_gap < 1e-6


def test_gamma_real_part_constant_in_u2(circles):
    H = flow.isotopy_flow(circles[1], 1.0, CFG)
    assert H.metadata["report"].gamma_re_drift < 1e-6


def test_reference_classes():
    assert flow.class_of(flow.core_lift()).coords == (0, -1)
    s = (np.arange(600) + 0.5) / 600
    loop = flow.lift(np.column_stack([np.full(600, 0.3), s]))
    assert loop.metadata["lift_closes"]
    assert flow.class_of(loop).coords == (0, -1)


def test_boundary_parallel_class_is_zero():
    # r = 0.8 winds once around both branch points; its lift closes after two turns
    s = (np.arange(1200) + 0.5) / 600
    loop = flow.lift(np.column_stack([np.full(1200, 0.8), s]))
    assert loop.metadata["lift_closes"]
    assert flow.class_of(loop).coords == (0, 0)


def test_attaching_classes():
    c1 = flow.attaching_class(1, CFG)
    c2 = flow.attaching_class(2, CFG)
    assert c1.coords == (1, 0) and c2.coords == (1, 2)
    assert c1.coords != (0, 0)
    # pairing of C1 + C2 with the cut lift
    assert c1.with_cut + c2.with_cut == -2
    assert abs(c1.coords[0] * c2.coords[1] - c1.coords[1] * c2.coords[0]) == 2


def test_intersection_antisymmetric():
    L, core = flow.cut_lift(), flow.core_lift()
    assert flow.intersection_number(L, core) == -flow.intersection_number(core, L)
