import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weylpath.exceptions import DimensionError, DomainError, NotAnAutomorphismError
from weylpath.phase import SL2ZN, PhasePoint, sl2_act, sl2_mul
from weylpath.propagator import CN2, step_position_matrix
from weylpath.weyl import (
    HeisenbergElement,
    automorphism_to_sl2,
    build_generators,
    certify_unitary,
    coset_of,
    heisenberg_group,
    heisenberg_mul,
    heisenberg_to_matrix,
    match_monomial,
    monomial,
    unitarity_defect,
)


def maxabs(x):
    return float(np.max(np.abs(x)))


def test_generators_n2():
    q, p, _ = build_generators(2)
    np.testing.assert_allclose(q, np.diag([1, -1]), atol=1e-15)
    np.testing.assert_array_equal(p, [[0, 1], [1, 0]])


def test_generators_n3():
    q, _, _ = build_generators(3)
    w = cmath.exp(2j * math.pi / 3)
    np.testing.assert_allclose(np.diag(q), [1, w, w * w], atol=1e-15)


def test_shift_direction():
    # P|rho> = |rho - 1 mod N>
    n = 5
    _, p, _ = build_generators(n)
    for rho in range(n):
        e = np.zeros(n)
        e[rho] = 1
        assert np.argmax(np.abs(p @ e)) == (rho - 1) % n


def test_sylvester_entries_and_diagonalization():
    n = 5
    q, p, s = build_generators(n)
    for k in range(n):
        for rho in range(n):
            assert abs(s[k, rho] - cmath.exp(2j * math.pi * rho * k / n) / math.sqrt(n)) < 1e-15
    assert maxabs(np.linalg.inv(s) @ p @ s - q) <= 1e-13


def test_build_generators_rejects_small_n():
    with pytest.raises(DomainError):
        build_generators(1)


def test_certify_unitary_rejects():
    with pytest.raises(DomainError):
        certify_unitary(np.array([[1, 1], [0, 1]]))
    with pytest.raises(DomainError):
        certify_unitary(np.ones((2, 3)))


@pytest.mark.parametrize("n", range(2, 33))
def test_weyl_commutation(n):
    q, p, _ = build_generators(n)
    w = cmath.exp(2j * math.pi / n)
    assert maxabs(p @ q - w * q @ p) <= 1e-13


@pytest.mark.parametrize("n", [2, 3, 7, 16, 31, 64])
def test_weyl_periodicity(n):
    q, p, _ = build_generators(n)
    eye = np.eye(n)
    assert maxabs(np.linalg.matrix_power(p, n) - eye) <= 1e-12
    assert maxabs(np.linalg.matrix_power(q, n) - eye) <= 1e-12


def test_heisenberg_products():
    n = 5
    assert heisenberg_mul(HeisenbergElement(0, 1, 0, n), HeisenbergElement(0, 0, 1, n)).as_tuple() == (0, 1, 1)
    assert heisenberg_mul(HeisenbergElement(0, 0, 1, n), HeisenbergElement(0, 1, 0, n)).as_tuple() == (1, 1, 1)


def test_heisenberg_n3_against_matrices():
    g1, g2 = HeisenbergElement(2, 1, 2, 3), HeisenbergElement(1, 2, 1, 3)
    prod = heisenberg_mul(g1, g2)
    assert prod.as_tuple() == (1, 0, 0)
    q, p, _ = build_generators(3)
    w = cmath.exp(2j * math.pi / 3)
    m1 = w**2 * q @ np.linalg.matrix_power(p, 2)
    m2 = w * np.linalg.matrix_power(q, 2) @ p
    np.testing.assert_allclose(m1 @ m2, w * np.eye(3), atol=1e-14)
    np.testing.assert_allclose(heisenberg_to_matrix(prod), m1 @ m2, atol=1e-14)


def test_heisenberg_dimension_mismatch():
    with pytest.raises(DimensionError):
        heisenberg_mul(HeisenbergElement(0, 1, 0, 3), HeisenbergElement(0, 1, 0, 5))


def test_heisenberg_to_matrix_examples():
    np.testing.assert_array_equal(heisenberg_to_matrix(HeisenbergElement(0, 0, 0, 4)), np.eye(4))
    np.testing.assert_allclose(heisenberg_to_matrix(HeisenbergElement(1, 0, 0, 4)), 1j * np.eye(4), atol=1e-15)
    q, p, _ = build_generators(3)
    qp = heisenberg_to_matrix(HeisenbergElement(0, 1, 1, 3))
    np.testing.assert_allclose(qp, q @ p, atol=1e-15)
    assert unitarity_defect(qp) < 1e-14


@pytest.mark.parametrize("n", [3, 8, 13])
def test_monomial_matches_matrix_powers(n):
    q, p, _ = build_generators(n)
    for j in range(n):
        for s in range(n):
            expect = np.linalg.matrix_power(q, j) @ np.linalg.matrix_power(p, s)
            assert maxabs(monomial(n, j, s) - expect) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 5])
def test_group_order_and_closure(n):
    elems = heisenberg_group(n)
    mats = [heisenberg_to_matrix(g) for g in elems]
    keys = {tuple(np.round(m, 9).ravel()) for m in mats}
    assert len(keys) == n**3
    index = {g.as_tuple(): m for g, m in zip(elems, mats)}
    for g1, m1 in zip(elems, mats):
        for g2, m2 in zip(elems, mats):
            prod = heisenberg_mul(g1, g2)
            assert prod.as_tuple() in index
            if n < 5:
                assert maxabs(index[prod.as_tuple()] - m1 @ m2) < 1e-12


def test_coset_examples():
    assert coset_of(HeisenbergElement(5, 2, 3, 7)).as_tuple() == (2, 3)
    assert coset_of(HeisenbergElement(0, 0, 0, 7)).as_tuple() == (0, 0)


@settings(max_examples=100)
@given(st.sampled_from([3, 5, 7, 12]), st.data())
def test_coset_is_homomorphism(n, data):
    r = st.integers(0, n - 1)
    g1 = HeisenbergElement(data.draw(r), data.draw(r), data.draw(r), n)
    g2 = HeisenbergElement(data.draw(r), data.draw(r), data.draw(r), n)
    assert coset_of(heisenberg_mul(g1, g2)) == coset_of(g1) + coset_of(g2)


@settings(max_examples=50)
@given(st.sampled_from([2, 3, 5, 6]), st.data())
def test_heisenberg_mul_agrees_with_matrices(n, data):
    r = st.integers(0, n - 1)
    g1 = HeisenbergElement(data.draw(r), data.draw(r), data.draw(r), n)
    g2 = HeisenbergElement(data.draw(r), data.draw(r), data.draw(r), n)
    lhs = heisenberg_to_matrix(heisenberg_mul(g1, g2))
    assert maxabs(lhs - heisenberg_to_matrix(g1) @ heisenberg_to_matrix(g2)) < 1e-12


def test_phi_identity():
    assert automorphism_to_sl2(np.eye(5)).rows() == ((1, 0), (0, 1))


def test_phi_of_cn2_is_shear():
    for n in (3, 5, 7):
        assert automorphism_to_sl2(step_position_matrix(n, CN2)).rows() == ((1, 1), (0, 1))


def test_phi_of_sylvester_n5_bruteforce():
    # Oracle: conjugate Q and P by S and compare against every scaled monomial by hand.
    n = 5
    q, p, s = build_generators(n)
    sinv = np.linalg.inv(s)
    img_q, img_p = sinv @ q @ s, sinv @ p @ s
    found = {}
    for name, img in (("q", img_q), ("p", img_p)):
        for a in range(n):
            for b in range(n):
                mono = np.linalg.matrix_power(q, a) @ np.linalg.matrix_power(p, b)
                k = np.flatnonzero(np.abs(mono[:, 0]) > 0.5)[0]
                lam = img[k, 0] / mono[k, 0]
                if maxabs(img - lam * mono) < 1e-10:
                    found[name] = (a, b)
    assert found == {"q": (0, 4), "p": (1, 0)}
    assert automorphism_to_sl2(s).rows() == ((0, 4), (1, 0))


def test_match_monomial_reports_scalar():
    n = 7
    lam = cmath.exp(0.3j)
    a, b, got = match_monomial(lam * monomial(n, 3, 5))
    assert (a, b) == (3, 5)
    assert abs(got - lam) < 1e-14


def test_not_an_automorphism():
    rng = np.random.default_rng(0)
    u, _ = np.linalg.qr(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
    with pytest.raises(NotAnAutomorphismError):
        automorphism_to_sl2(u)


def _random_word(rng, gens, max_len=4):
    m = np.eye(gens[0].shape[0], dtype=complex)
    for _ in range(rng.integers(1, max_len + 1)):
        m = m @ gens[rng.integers(len(gens))]
    return m


@pytest.mark.parametrize("n", [5, 7])
def test_phi_is_multiplicative(n):
    rng = np.random.default_rng(n)
    gens = [build_generators(n)[2], step_position_matrix(n, CN2)]
    for _ in range(100):
        x, y = _random_word(rng, gens), _random_word(rng, gens)
        assert automorphism_to_sl2(x @ y) == sl2_mul(automorphism_to_sl2(x), automorphism_to_sl2(y))


@pytest.mark.parametrize("n", [5, 7])
def test_right_action_consistency(n):
    rng = np.random.default_rng(100 + n)
    gens = [build_generators(n)[2], step_position_matrix(n, CN2)]
    for _ in range(5):
        u = _random_word(rng, gens)
        phi = automorphism_to_sl2(u)
        for j in range(n):
            for s in range(n):
                a, b, _ = match_monomial(u.conj().T @ monomial(n, j, s) @ u)
                assert PhasePoint(a, b, n) == sl2_act(PhasePoint(j, s, n), phi)


def test_sl2_of_result_has_unit_determinant():
    m = automorphism_to_sl2(build_generators(11)[2])
    assert (m.a * m.d - m.b * m.c) % 11 == 1
    assert m == SL2ZN(0, -1, 1, 0, 11)
