import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mfib import mcg
from mfib.surface import (IntClass, Z2Class, crosscap_core, nonorientable, orientable,
                          symplectic_basis, symplectic_pairing)


def brute_transvection(c: IntClass, sign: int) -> np.ndarray:
    """Columns are images of basis vectors, computed one at a time."""
    basis = symplectic_basis(c.surface.genus)
    cols = []
    for e in basis:
        k = symplectic_pairing(e, c)
        cols.append([x + sign * k * y for x, y in zip(e.coords, c.coords)])
    return np.array(cols, dtype=np.int64).T


def test_swap_matrix():
    assert np.array_equal(mcg.rep_word(mcg.u(2, 1)), [[0, 1], [1, 0]])


@pytest.mark.parametrize("g", range(2, 7))
def test_swap_squares_to_identity(g):
    for i in range(1, g):
        assert mcg.is_identity(mcg.rep_word(mcg.u(g, i) * mcg.u(g, i)))
        assert mcg.check_square_relation(g, i)


def test_separating_twist_is_invisible_mod_2():
    # witness of non-faithfulness: t_delta and the identity agree on homology
    delta = mcg.klein_bottle_boundary(3, 1)
    assert delta.is_zero()
    assert mcg.is_identity(mcg.rep_word(mcg.t(delta)))


def test_twist_along_pair_of_cores():
    c = crosscap_core(2, 1) + crosscap_core(2, 2)
    assert np.array_equal(mcg.rep_word(mcg.t(c)), [[0, 1], [1, 0]])


def test_twist_along_one_sided_class_rejected():
    with pytest.raises(mcg.WordError):
        mcg.t(crosscap_core(3, 1))


def test_application_order():
    g = 3
    w1, w2 = mcg.u(g, 1), mcg.u(g, 2)
    lhs = mcg.rep_word(w1 * w2)
    rhs = mcg.rep_word(w2) @ mcg.rep_word(w1) % 2
    assert np.array_equal(lhs, rhs)
    assert not np.array_equal(lhs, mcg.rep_word(w2 * w1))


def test_bad_words():
    with pytest.raises(mcg.WordError):
        mcg.u(3, 3)
    with pytest.raises(mcg.WordError):
        mcg.u(1, 1)
    with pytest.raises(mcg.WordError):
        mcg.u(3, 1) * mcg.u(4, 1)
    with pytest.raises(mcg.WordError):
        mcg.MCGWord(2, ((mcg.CrosscapTransposition(2, 1), 2),))


def random_word(draw, g):
    gens = []
    for _ in range(draw(st.integers(0, 8))):
        if draw(st.booleans()):
            gens.append(mcg.u(g, draw(st.integers(1, g - 1)), draw(st.sampled_from([1, -1]))))
        else:
            bits = draw(st.lists(st.integers(0, 1), min_size=g, max_size=g))
            if sum(bits) % 2:
                bits[0] ^= 1
            c = Z2Class(nonorientable(g), tuple(bits))
            gens.append(mcg.t(c, draw(st.sampled_from([1, -1])), draw(st.sampled_from([1, -1]))))
    w = mcg.MCGWord(g)
    for x in gens:
        w = w * x
    return w


@st.composite
def words(draw):
    return random_word(draw, draw(st.integers(2, 6)))


@settings(max_examples=200)
@given(words())
def test_rep_is_orthogonal_and_inverse_cancels(w):
    R = mcg.rep_word(w)
    assert mcg.is_orthogonal_mod2(R)
    assert mcg.is_identity(mcg.rep_word(w * w.inverse()))


@settings(max_examples=100)
@given(words(), st.data())
def test_rep_preserves_pairing(w, data):
    g = w.genus
    x = Z2Class(nonorientable(g), tuple(data.draw(st.lists(st.integers(0, 1), min_size=g, max_size=g))))
    y = Z2Class(nonorientable(g), tuple(data.draw(st.lists(st.integers(0, 1), min_size=g, max_size=g))))
    assert mcg.check_pairing_consistency(x, y, mcg.rep_word(w))


def test_conjugate_of_swap_is_involution():
    w = mcg.u(3, 2) * mcg.t(Z2Class.from_bits("110"))
    R = mcg.rep_word(mcg.u(3, 1).conjugate_by(w))
    assert not mcg.is_identity(R)
    assert mcg.is_identity(R @ R % 2)


@settings(max_examples=100)
@given(st.integers(1, 3).flatmap(lambda h: st.lists(st.integers(-3, 3), min_size=2 * h, max_size=2 * h)),
       st.sampled_from([1, -1]))
def test_integral_transvection_matches_brute_force(coords, sign):
    c = IntClass(orientable(len(coords) // 2), tuple(coords))
    assert np.array_equal(mcg.integral_transvection(c, sign), brute_transvection(c, sign))


def test_lift_twist_worked_example():
    a, b = symplectic_basis(1)
    got = mcg.orientation_lift_twist(Z2Class.from_bits("11"), a, b)
    expected = brute_transvection(b, -1) @ brute_transvection(a, 1)
    assert np.array_equal(got, expected)
    assert np.array_equal(got, [[1, -1], [-1, 2]])
    J = np.array([[0, 1], [-1, 0]])
    assert np.array_equal(got.T @ J @ got, J)


def test_lift_twist_requires_matching_genus():
    a, b = symplectic_basis(2)[:2]
    with pytest.raises(Exception):
        mcg.orientation_lift_twist(Z2Class.from_bits("11"), a, b)
