import cmath
import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from weylpath.exceptions import DimensionError, DomainError
from weylpath.phase import SL2ZN, PhaseExponent, PhasePoint, phase_to_complex, sl2_act, sl2_mul


def test_phase_identity_and_quarter_turn():
    for n in (1, 3, 10):
        assert phase_to_complex(PhaseExponent(0, n)) == 1 + 0j
        assert phase_to_complex(PhaseExponent(2 * n, n)) == 1j


def test_phase_e4_n3_is_sixth_root():
    z = phase_to_complex(PhaseExponent(4, 3))
    assert abs(z - cmath.exp(1j * math.pi / 3)) < 1e-15
    assert z == pytest.approx(0.5 + 0.8660254j, abs=1e-7)


def test_canonical_representative():
    p = PhaseExponent(-3, 5)
    assert p.e == 37
    assert PhaseExponent(81, 5).e == 1


def test_half_power_and_inverse_sqrt_i():
    n = 7
    assert PhaseExponent.from_omega_power(0.5, n).e == 4
    inv_sqrt_i = PhaseExponent.eighth_turns(-1, n)
    assert inv_sqrt_i.e == (-n) % (8 * n)
    assert abs(phase_to_complex(inv_sqrt_i) - cmath.exp(-0.25j * math.pi)) < 1e-15


def test_non_eighth_power_rejected():
    with pytest.raises(DomainError):
        PhaseExponent.from_omega_power(1 / 3, 5)


@given(st.integers(1, 50), st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_phase_product_is_sum(n, e1, e2):
    p, q = PhaseExponent(e1, n), PhaseExponent(e2, n)
    lhs = phase_to_complex(p + q)
    assert abs(lhs - phase_to_complex(p) * phase_to_complex(q)) < 1e-14
    assert abs(abs(lhs) - 1) < 1e-15


def test_phase_dimension_mismatch():
    with pytest.raises(DimensionError):
        PhaseExponent(1, 3) + PhaseExponent(1, 5)


def test_sl2_identity_and_shear():
    n = 7
    m = SL2ZN(2, 3, 1, 2, n)
    assert sl2_mul(SL2ZN.identity(n), m) == m
    shear = SL2ZN(1, 1, 0, 1, n)
    assert sl2_mul(shear, shear).rows() == ((1, 2), (0, 1))


def test_sl2_mul_n5():
    s = SL2ZN(0, 4, 1, 0, 5)
    c = SL2ZN(1, 1, 0, 1, 5)
    # [[0,4],[1,0]] @ [[1,1],[0,1]] computed entrywise
    assert sl2_mul(s, c).rows() == ((0 * 1 + 4 * 0, 0 * 1 + 4 * 1), (1, 1))


def test_sl2_rejects_bad_determinant():
    with pytest.raises(DomainError):
        SL2ZN(1, 1, 1, 1, 5)


def test_sl2_dimension_mismatch():
    with pytest.raises(DimensionError):
        sl2_mul(SL2ZN.identity(3), SL2ZN.identity(5))
    with pytest.raises(DimensionError):
        sl2_act(PhasePoint(1, 0, 3), SL2ZN.identity(5))


def test_free_evolution_shear_action():
    for n in (3, 5, 11):
        shear = SL2ZN(1, 1, 0, 1, n)
        assert sl2_act(PhasePoint(1, 0, n), shear).as_tuple() == (1, 1)
        assert sl2_act(PhasePoint(0, 1, n), shear).as_tuple() == (0, 1)


def test_sl2_act_n5():
    pt = sl2_act(PhasePoint(2, 3, 5), SL2ZN(0, 4, 1, 0, 5))
    assert pt.as_tuple() == ((2 * 0 + 3 * 1) % 5, (2 * 4 + 3 * 0) % 5) == (3, 3)


def _sl2_elements(n):
    return [
        SL2ZN(a, b, c, d, n)
        for a, b, c, d in itertools.product(range(n), repeat=4)
        if (a * d - b * c) % n == 1
    ]


def test_sl2_closure_exhaustive_n3():
    group = _sl2_elements(3)
    assert len(group) == 24
    keys = {m.rows() for m in group}
    for m1 in group:
        for m2 in group:
            assert sl2_mul(m1, m2).rows() in keys


@st.composite
def sl2_pairs(draw):
    n = draw(st.sampled_from([3, 5, 7]))
    elems = _sl2_elements_cached(n)
    m1 = draw(st.sampled_from(elems))
    m2 = draw(st.sampled_from(elems))
    return n, m1, m2


_CACHE = {}


def _sl2_elements_cached(n):
    if n not in _CACHE:
        _CACHE[n] = _sl2_elements(n)
    return _CACHE[n]


@settings(max_examples=100)
@given(sl2_pairs())
def test_right_action_composes(args):
    n, m1, m2 = args
    for j in range(n):
        for s in range(n):
            pt = PhasePoint(j, s, n)
            assert sl2_act(sl2_act(pt, m1), m2) == sl2_act(pt, sl2_mul(m1, m2))


def test_sl2_inverse_and_power():
    m = SL2ZN(2, 3, 1, 2, 7)
    assert sl2_mul(m, m.inverse()) == SL2ZN.identity(7)
    assert (SL2ZN(1, 1, 0, 1, 7) ** 5).rows() == ((1, 5), (0, 1))
