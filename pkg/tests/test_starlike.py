"""Order of starlikeness: closed form vs grid oracle, bounds, membership."""

import math

import numpy as np
import pytest

from qstarlike import (
    DomainError,
    GridSpec,
    NearZeroDenominator,
    NormalizedSeries,
    PhiParams,
    boundary_trace,
    classical_order_grid,
    coeffs_from_p,
    corollary_order,
    extremal_F_coeffs,
    in_sq_alpha,
    in_sq_star_alpha,
    log_strip_p_coeffs,
    phi_ratio_shifted,
    shifted_phi_series,
    sigma_q_grid,
    sigma_q_grid_located,
    sigma_q_phi,
    sigma_q_phi_with_grid,
    starlike_ratio,
)

P0 = PhiParams(0.5, 0.5, 0.25, 0.5)
IDENTITY = NormalizedSeries(np.array([1.0], dtype=complex))


def test_grid_spec_validation():
    with pytest.raises(DomainError):
        GridSpec(n_theta=4)
    with pytest.raises(DomainError):
        GridSpec(max_radius=1.0)


def test_starlike_ratio_identity_function():
    for z in (0.0, 0.5, -0.3 + 0.4j):
        assert starlike_ratio(IDENTITY, z, 0.5) == pytest.approx(1.0)


def test_starlike_ratio_matches_contiguous_identity():
    # w(z) = 1 + z q (1-a)(1-b)/((1-c)(1-q)) * shifted ratio, checked on the
    # truncated series of z*Phi(z)
    series = shifted_phi_series(P0, 1.0, eval_radius=0.6)
    prefactor = (1 - P0.a) * (1 - P0.b) / ((1 - P0.c) * (1 - P0.q))
    for z in (0.5, -0.55, 0.3j):
        lhs = starlike_ratio(series, z, P0.q)
        rhs = 1 + z * P0.q * prefactor * phi_ratio_shifted(P0, z)
        assert abs(lhs - rhs) < 1e-9


def test_starlike_ratio_flags_vanishing_denominator():
    # f(z) = z - z^2/0.3 vanishes at z = 0.3
    f = NormalizedSeries(np.array([1.0, -1.0 / 0.3], dtype=complex))
    with pytest.raises(NearZeroDenominator):
        starlike_ratio(f, 0.3, 0.5)


def test_sigma_grid_identity_is_one():
    assert sigma_q_grid(IDENTITY, 0.5, GridSpec(64, 8, 0.99)) == pytest.approx(1.0)


def test_sigma_grid_extremal_half_plane_kernel():
    # w of the F kernel is (1+z)/(1-z) inside its convergence disk
    # |z| < q/(2-q); min over |z| <= R is (1-R)/(1+R), decreasing in R
    fq = extremal_F_coeffs(0.9, 400)
    values = []
    for radius in (0.7, 0.75):
        got = sigma_q_grid(fq, 0.9, GridSpec(360, 32, radius))
        want = (1 - radius) / (1 + radius)
        assert got == pytest.approx(want, abs=1e-8)
        values.append(got)
    assert values[1] < values[0]  # nonincreasing in max_radius


def test_sigma_grid_matches_closed_form():
    rep = sigma_q_phi_with_grid(P0, 0.9)
    assert abs(rep.grid_estimate - rep.closed_form) <= 1e-4


def test_sigma_closed_form_instance():
    rep = sigma_q_phi(P0, 1.0)
    assert rep.s == pytest.approx(1.0)
    assert rep.rho == -1.0
    assert rep.lower_bound == pytest.approx(0.5, abs=1e-9)
    assert rep.upper_bound == pytest.approx(2.0 / 3.0, abs=1e-9)
    # regression: the boundary-extrapolated value itself
    assert rep.closed_form == pytest.approx(0.7908265509737, abs=1e-9)


def test_sigma_closed_form_small_radius_tends_to_one():
    rep = sigma_q_phi(P0, 1e-6)
    assert rep.closed_form == pytest.approx(1.0, abs=1e-5)


def test_sigma_lower_bound_holds_on_draws():
    rng = np.random.default_rng(17)
    for _ in range(40):
        c = rng.uniform(0, 0.8)
        a = rng.uniform(c + 0.02, 0.98)
        b = rng.uniform(c + 0.02, 0.98)
        q = rng.uniform(0.15, 0.95)
        r = rng.uniform(0.1, 1.0)
        rep = sigma_q_phi(PhiParams(a, b, c, q), r)
        assert rep.lower_bound <= rep.closed_form + 1e-9


def test_sigma_s_negative_branch():
    p = PhiParams(1.5, 0.5, 0.25, 0.5)
    rep = sigma_q_phi(p, 1.0)
    assert rep.s == pytest.approx(-1.0 / 3.0)
    assert rep.rho == 1.0
    assert math.isinf(rep.lower_bound) and rep.lower_bound < 0
    # the denominator series crosses zero inside the disk: order is -inf too
    assert math.isinf(rep.closed_form) and rep.closed_form < 0
    # below the zero crossing the closed form is finite and grid-checkable
    rep_small = sigma_q_phi_with_grid(p, 0.3)
    assert math.isfinite(rep_small.closed_form)
    assert abs(rep_small.grid_estimate - rep_small.closed_form) <= 1e-4


def test_sigma_rejects_degenerate_parameters():
    with pytest.raises(DomainError):
        sigma_q_phi(PhiParams(1.0, 0.5, 0.25, 0.5), 0.5)  # s = 0
    with pytest.raises(DomainError):
        sigma_q_phi(PhiParams(0.0, 0.5, 0.0, 0.5), 0.5)  # s undefined
    with pytest.raises(DomainError):
        sigma_q_phi(P0, 0.0)
    with pytest.raises(DomainError):
        sigma_q_phi(P0, 1.5)


def test_infimum_location_tracks_sign_of_s():
    grid = GridSpec(720, 64)
    series = shifted_phi_series(P0, 0.9, grid.max_radius)
    _, _, theta = sigma_q_grid_located(series, P0.q, grid)
    assert abs(theta - math.pi) <= 1e-3
    p_neg = PhiParams(1.5, 0.5, 0.25, 0.5)
    series = shifted_phi_series(p_neg, 0.3, grid.max_radius)
    _, _, theta = sigma_q_grid_located(series, p_neg.q, grid)
    assert min(theta, 2 * math.pi - theta) <= 1e-3


def test_corollary_order_values():
    assert corollary_order(P0, 1.0) == pytest.approx(0.5, abs=1e-12)
    assert corollary_order(P0, 1e-9) == pytest.approx(1.0, abs=1e-8)
    # s = 2 at a = q/(2-q): the shifted function reaches order zero
    q = 0.5
    p = PhiParams(q / (2 - q), q / (2 - q), 0.1, q)
    assert corollary_order(p, 1.0) == pytest.approx(0.0, abs=1e-12)


def test_corollary_order_requires_ordering():
    with pytest.raises(DomainError):
        corollary_order(PhiParams(0.3, 0.5, 0.25, 0.5), 1.0)  # a < b


def test_membership_identity_function():
    res = in_sq_alpha(IDENTITY, 0.5, 0.5, GridSpec(64, 8, 0.99))
    assert res.verdict and res.margin == pytest.approx(0.5)
    res = in_sq_star_alpha(IDENTITY, 0.5, 0.9, GridSpec(64, 8, 0.99))
    assert res.verdict


def test_membership_truncated_half_plane_kernel_fails():
    # beyond its convergence radius q/(2-q) the truncated kernel series has
    # zeros in the disk and the ratio dips far below any order
    f60 = extremal_F_coeffs(0.5, 60)
    res = in_sq_alpha(f60, 0.5, 0.1, GridSpec(256, 32, 0.999))
    assert not res.verdict


def test_log_strip_witness_separates_the_classes():
    q = 0.5
    witness = coeffs_from_p(log_strip_p_coeffs(599), q, 600)
    grid = GridSpec(512, 48, 0.97)
    sq = in_sq_alpha(witness, q, 0.0, grid)
    star = in_sq_star_alpha(witness, q, 0.0, grid)
    assert sq.verdict and sq.margin > 0.03
    assert not star.verdict and star.margin < -0.5


def test_star_members_pass_half_plane_test():
    from qstarlike import CaratheodoryMixture

    rng = np.random.default_rng(29)
    grid = GridSpec(256, 32, 0.97)
    members = 0
    for _ in range(12):
        q = rng.uniform(0.2, 0.9)
        alpha = rng.uniform(0.0, 0.6)
        mixture = CaratheodoryMixture.random(rng)
        base = mixture.series(q, 80)
        damping = 0.7 * q / (2 - q)
        scaled = NormalizedSeries(base.coeffs * damping ** np.arange(80))
        star = in_sq_star_alpha(scaled, q, alpha, grid)
        if not star.verdict:
            continue
        members += 1
        assert in_sq_alpha(scaled, q, alpha, grid).verdict
    assert members >= 5


def test_boundary_trace_shapes_and_symmetry():
    from qstarlike import extremal_G_coeffs

    g = extremal_G_coeffs(0.5, 64)
    table = boundary_trace(g, 0.5, 0.4, 16)
    assert table.shape == (16, 3)
    assert np.all(np.diff(table[:, 0]) > 0)
    # w of the z^2 kernel is even: theta -> theta + pi leaves it unchanged
    re = table[:, 1]
    assert np.allclose(re, np.roll(re, 8), atol=1e-10)
    # identity: constant trace
    table = boundary_trace(IDENTITY, 0.5, 0.9, 8)
    assert np.allclose(table[:, 1], 1.0) and np.allclose(table[:, 2], 0.0)


def test_boundary_trace_half_plane_kernel_minimum():
    fq = extremal_F_coeffs(0.9, 400)
    mins = []
    for radius in (0.6, 0.7):
        table = boundary_trace(fq, 0.9, radius, 256)
        mins.append(table[:, 1].min())
        assert mins[-1] == pytest.approx((1 - radius) / (1 + radius), abs=1e-6)
    assert mins[1] < mins[0]  # small positive, decreasing with radius


def test_kuestner_classical_limit():
    q = 0.999
    p = PhiParams(q**0.5, q**0.5, q**0.5, q)
    rep = sigma_q_phi(p, 1.0)
    assert abs(rep.closed_form - 0.75) <= 5e-3
    classical = classical_order_grid(0.5, 0.5, 0.5, 0.95, GridSpec(360, 48))
    rep95 = sigma_q_phi(p, 0.95)
    assert abs(rep95.closed_form - classical) <= 5e-3
    # closed classical value: min of Re(1 + z/(2(1-z))) on |z| <= 0.95
    want = 1.0 - 0.5 * 0.95 / 1.95
    assert classical == pytest.approx(want, abs=1e-4)
