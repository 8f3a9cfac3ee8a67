"""Coefficient recurrence, sharp bounds, parametrization, and brute-force oracles."""

import numpy as np
import pytest

from qstarlike import (
    BruteForceGrid,
    CaratheodoryMixture,
    CaratheodoryTriple,
    DomainError,
    a234_from_p,
    bieberbach_bound,
    coeffs_from_p,
    extremal_F_coeffs,
    extremal_G_coeffs,
    fekete_szego_bound,
    fs_brute_force,
    functional_fs,
    functional_h22,
    hankel2_bound,
    hankel_brute_force,
    hankel_domain_max,
    log_strip_p_coeffs,
    p2_functional_bound,
    p2_functional_check,
    p123_from_triple,
    triple_from_p123,
)


def test_coeffs_from_p_zero_driving_gives_identity():
    series = coeffs_from_p(np.zeros(9), 0.5, 10)
    assert np.allclose(series.coeffs[1:], 0.0)


def test_coeffs_from_p_constant_two_hits_growth_bound():
    series = coeffs_from_p(np.full(9, 2.0), 0.5, 10)
    for n in range(2, 11):
        want = bieberbach_bound(0.5, n)
        assert abs(series.coeffs[n - 1].real - want) <= 1e-12 * want


def test_coeffs_from_p_z_squared_kernel():
    series = coeffs_from_p(np.array([0.0, 2.0, 0.0]), 0.5, 4)
    assert series.coeffs[1] == 0.0
    assert series.coeffs[2].real == pytest.approx(2.0 / (0.5 * 1.5), rel=1e-14)
    assert series.coeffs[3] == 0.0


def test_a234_closed_forms():
    a2, a3, a4 = a234_from_p(2.0, 2.0, 2.0, 0.5)
    assert a2 == pytest.approx(4.0)
    assert a3 == pytest.approx(2 * (2 + 0.5) / (0.5**2 * 1.5), rel=1e-13)
    assert a4 == pytest.approx(bieberbach_bound(0.5, 4), rel=1e-13)
    assert a234_from_p(0.0, 2.0, 0.0, 0.5) == pytest.approx((0.0, 8.0 / 3.0, 0.0))
    assert a234_from_p(0.0, 0.0, 0.0, 0.5) == (0.0, 0.0, 0.0)


def test_a234_agrees_with_recurrence_on_mixtures():
    rng = np.random.default_rng(77)
    for _ in range(500):
        q = rng.uniform(0.1, 0.95)
        mixture = CaratheodoryMixture.random(rng)
        p = mixture.p_coeffs(3)
        series = coeffs_from_p(p, q, 4)
        closed = a234_from_p(p[0], p[1], p[2], q)
        for got, want in zip(closed, series.coeffs[1:]):
            assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


def test_bieberbach_bound_values():
    assert bieberbach_bound(0.5, 2) == pytest.approx(4.0)
    assert bieberbach_bound(0.5, 3) == pytest.approx(2 * 2.5 / (0.25 * 1.5), rel=1e-13)
    with pytest.raises(DomainError):
        bieberbach_bound(0.5, 1)


def test_bieberbach_bound_classical_limit():
    q = 1.0 - 1e-6
    for n in range(2, 11):
        assert abs(bieberbach_bound(q, n) - n) <= 1e-3


def test_extremal_F_matches_product_formula():
    for q in (0.3, 0.5, 0.9):
        series = extremal_F_coeffs(q, 30)
        assert series.coeffs[0] == 1.0
        for n in range(2, 31):
            want = bieberbach_bound(q, n)
            assert abs(series.coeffs[n - 1].real - want) <= 1e-12 * want


def test_extremal_F_known_values():
    series = extremal_F_coeffs(0.5, 3)
    assert series.coeffs[1].real == pytest.approx(4.0)
    assert series.coeffs[2].real == pytest.approx(40.0 / 3.0, rel=1e-13)


def test_extremal_G_odd_support():
    series = extremal_G_coeffs(0.5, 6)
    assert np.allclose(series.coeffs[[1, 3, 5]], 0.0)
    assert series.coeffs[2].real == pytest.approx(8.0 / 3.0, rel=1e-13)


def test_fekete_szego_bound_branches():
    q = 0.5
    bound = fekete_szego_bound(q, 0.0)
    assert bound.value == pytest.approx(40.0 / 3.0, rel=1e-13)
    assert bound.branch == "F"
    mu_star = (2 + q) / (2 * (1 + q))
    bound = fekete_szego_bound(q, mu_star)
    assert bound.value == pytest.approx(8.0 / 3.0, rel=1e-13)
    assert bound.branch == "G"


def test_fekete_szego_classical_limit():
    q = 1.0 - 1e-6
    for mu in (0.0, 0.5, 1.0, 2.0):
        want = max(1.0, abs(3.0 - 4.0 * mu))
        assert abs(fekete_szego_bound(q, mu).value - want) <= 1e-4


def test_hankel_bounds():
    assert hankel2_bound(0.5) == pytest.approx(64.0 / 9.0, rel=1e-14)
    assert abs(hankel2_bound(1.0 - 1e-6) - 1.0) <= 1e-4
    # the parametrization maximum exceeds the stated constant for q < 1 and
    # meets it as q -> 1
    assert hankel_domain_max(0.5) == pytest.approx(10.158730158730158, rel=1e-13)
    assert hankel_domain_max(0.5) > hankel2_bound(0.5)
    assert abs(hankel_domain_max(1.0 - 1e-8) - hankel2_bound(1.0 - 1e-8)) <= 1e-6


def test_functionals():
    assert functional_fs(0.0, 0.0, 1 + 1j) == 0.0
    assert functional_h22(0.0, 0.0, 0.0) == 0.0
    b2, b3 = 4.0, 40.0 / 3.0
    assert functional_fs(b2, b3, 1.0) == pytest.approx(8.0 / 3.0, rel=1e-12)
    assert functional_fs(0.0, 8.0 / 3.0, 123.0) == pytest.approx(8.0 / 3.0)
    # z^2 kernel attains the stated Hankel constant exactly
    g = a234_from_p(0.0, 2.0, 0.0, 0.5)
    assert functional_h22(*g) == pytest.approx(hankel2_bound(0.5), rel=1e-14)
    # half-plane kernel regression value (sits above the stated constant)
    f = a234_from_p(2.0, 2.0, 2.0, 0.5)
    assert functional_h22(*f) == pytest.approx(10.158730158730158, rel=1e-12)


def test_triple_validation():
    with pytest.raises(DomainError):
        CaratheodoryTriple(2.5, 0.0, 0.0)
    with pytest.raises(DomainError):
        CaratheodoryTriple(1.0, 1.2, 0.0)
    with pytest.raises(DomainError):
        CaratheodoryTriple(1.0, 0.0, -1.5)


def test_p123_from_triple_anchor_points():
    assert p123_from_triple(CaratheodoryTriple(2.0, 0.3j, -0.5)) == (2.0, 2.0, 2.0)
    p1, p2, p3 = p123_from_triple(CaratheodoryTriple(0.0, 1.0, 0.7))
    assert (p1, p2, p3) == (0.0, 2.0, 0.0)
    p1, p2, p3 = p123_from_triple(CaratheodoryTriple(0.0, 0.0, 1.0))
    assert (p1, p2, p3) == (0.0, 0.0, 2.0)


def test_triple_roundtrip_on_mixtures():
    rng = np.random.default_rng(101)
    for _ in range(500):
        mixture = CaratheodoryMixture.random(rng)
        p = mixture.p_coeffs(3)
        triple, eta = triple_from_p123(p[0], p[1], p[2])
        q1, q2, q3 = p123_from_triple(triple)
        assert abs(q1 - p[0] * eta) <= 1e-9
        assert abs(q2 - p[1] * eta**2) <= 1e-9
        assert abs(q3 - p[2] * eta**3) <= 1e-9


def test_mixture_coefficients_bounded():
    rng = np.random.default_rng(55)
    for _ in range(500):
        mixture = CaratheodoryMixture.random(rng)
        assert np.abs(mixture.p_coeffs(20)).max() <= 2.0 + 1e-12


def test_mixture_validation():
    with pytest.raises(DomainError):
        CaratheodoryMixture(np.array([0.5, 0.4]), np.array([1.0, 1.0j]))  # sum != 1
    with pytest.raises(DomainError):
        CaratheodoryMixture(np.array([1.0]), np.array([0.5 + 0.0j]))  # |phase| != 1


def test_p2_functional_bound_and_sharpness():
    assert p2_functional_bound(0.5) == 2.0
    cert = p2_functional_check(2.0, 2.0, 0.5)
    assert cert.verdict == "pass" and cert.lhs == pytest.approx(0.0)
    # sharp at the z^2 kernel point for lambda = 0
    cert = p2_functional_check(0.0, 2.0, 0.0)
    assert cert.lhs == pytest.approx(cert.rhs) and cert.verdict == "pass"
    # sharp at the half-plane kernel point for lambda = 2
    cert = p2_functional_check(2.0, 2.0, 2.0)
    assert cert.lhs == pytest.approx(6.0) and cert.rhs == pytest.approx(6.0)


def test_p2_functional_on_mixtures():
    rng = np.random.default_rng(31)
    for _ in range(500):
        mixture = CaratheodoryMixture.random(rng)
        p = mixture.p_coeffs(2)
        for lam in (-1.0, 0.0, 0.5, 1.0, 2.0):
            assert p2_functional_check(p[0], p[1], lam).verdict == "pass"


def test_hankel_brute_force_finds_domain_maximum():
    for q in (0.5, 0.9):
        result = hankel_brute_force(q)
        want = hankel_domain_max(q)
        assert result.value <= want + 1e-9
        assert result.value >= want - 1e-3
        assert result.argmax.p1 == pytest.approx(2.0, abs=1e-5)


def test_hankel_brute_force_degenerate_g_point():
    # single-point check: the z^2 kernel triple evaluates exactly to the
    # stated constant
    triple = CaratheodoryTriple(0.0, 1.0, 1.0)
    value = functional_h22(*a234_from_p(*p123_from_triple(triple), 0.5))
    assert value == pytest.approx(hankel2_bound(0.5), rel=1e-14)


def test_fs_brute_force_matches_bound():
    q = 0.5
    res = fs_brute_force(q, 0.0)
    assert res.value == pytest.approx(fekete_szego_bound(q, 0.0).value, abs=1e-3)
    assert res.value <= fekete_szego_bound(q, 0.0).value + 1e-9
    assert res.argmax.p1 == pytest.approx(2.0, abs=1e-5)
    mu_star = (2 + q) / (2 * (1 + q))
    res = fs_brute_force(q, mu_star)
    assert res.value == pytest.approx(fekete_szego_bound(q, mu_star).value, abs=1e-3)
    assert res.argmax.p1 == pytest.approx(0.0, abs=1e-5)
    assert abs(res.argmax.x) == pytest.approx(1.0, abs=1e-5)
    # a weight with large modulus: the coefficient-heavy branch dominates
    res = fs_brute_force(q, 10.0)
    assert abs(res.value - fekete_szego_bound(q, 10.0).value) <= 1e-3
    # complex weight
    res = fs_brute_force(q, 1.0 + 1.0j)
    assert abs(res.value - fekete_szego_bound(q, 1 + 1j).value) <= 1e-3


def test_brute_force_coarse_grid_still_converges():
    res = hankel_brute_force(0.5, BruteForceGrid(n_p1=9, n_rho=7, n_theta_x=8, n_theta_z=4))
    assert abs(res.value - hankel_domain_max(0.5)) <= 1e-3


def test_log_strip_coefficients():
    p = log_strip_p_coeffs(10)
    assert np.allclose(p[1::2], 0.0)
    assert np.abs(p).max() <= 2.0
    assert p[0] == pytest.approx(-2j * 1.9 / np.pi)
    with pytest.raises(DomainError):
        log_strip_p_coeffs(5, strength=2.5)
