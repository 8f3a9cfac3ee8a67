"""q-calculus primitives: brackets, Pochhammer products, q-difference operator."""

import numpy as np
import pytest

from qstarlike import (
    DomainError,
    NormalizedSeries,
    q_bracket,
    q_derivative_at,
    q_derivative_series,
    q_pochhammer,
    require_q,
)


@pytest.mark.parametrize("bad_q", [0.0, 1.0, -0.2, 1.5, 2.0])
def test_q_rejected_outside_open_interval(bad_q):
    with pytest.raises(DomainError):
        require_q(bad_q)


def test_q_bracket_values():
    assert q_bracket(1, 0.5) == 1.0
    assert q_bracket(0, 0.7) == 0.0
    assert q_bracket(3, 0.5) == pytest.approx(1.75, abs=0)  # 1 + q + q^2


def test_q_bracket_negative_n_rejected():
    with pytest.raises(DomainError):
        q_bracket(-1, 0.5)


def test_q_pochhammer_values():
    assert q_pochhammer(0.3, 0.5, 0) == 1.0
    assert q_pochhammer(0.0, 0.5, 7) == 1.0
    assert q_pochhammer(0.5, 0.5, 2) == pytest.approx(0.375, rel=1e-15)


def test_q_pochhammer_product_law():
    # (a;q)_{n+m} = (a;q)_n (a q^n; q)_m
    rng = np.random.default_rng(42)
    for _ in range(200):
        a = rng.uniform(0.0, 1.0)
        q = rng.uniform(0.05, 0.95)
        n = int(rng.integers(0, 11))
        m = int(rng.integers(0, 11))
        whole = q_pochhammer(a, q, n + m)
        split = q_pochhammer(a, q, n) * q_pochhammer(a * q**n, q, m)
        assert whole == pytest.approx(split, rel=1e-12, abs=1e-300)


def test_q_derivative_identity_function():
    for z in (0.3, -0.5 + 0.2j, 0.7j):
        assert q_derivative_at(lambda w: w, z, 0.5) == pytest.approx(1.0)


def test_q_derivative_square_at_one():
    assert q_derivative_at(lambda w: w * w, 1.0, 0.5) == pytest.approx(1.5)


def test_q_derivative_monomials():
    # D_q z^n = [n]_q z^{n-1}
    rng = np.random.default_rng(3)
    for n in range(1, 11):
        q = rng.uniform(0.1, 0.9)
        z = rng.uniform(0.1, 0.9) * np.exp(2j * np.pi * rng.random())
        got = q_derivative_at(lambda w: w**n, z, q)
        want = q_bracket(n, q) * z ** (n - 1)
        assert abs(got - want) <= 1e-12 * abs(want)


def test_q_derivative_series_at_origin():
    f = NormalizedSeries(np.array([1.0, 2.0, 3.0], dtype=complex))
    assert q_derivative_at(f, 0.0, 0.5) == 1.0


def test_q_derivative_callable_at_origin_rejected():
    with pytest.raises(DomainError):
        q_derivative_at(lambda w: w, 0.0, 0.5)


def test_q_derivative_near_classical_limit():
    # at q = 1 - 1e-6 the operator matches a central difference to 1e-4
    q = 1.0 - 1e-6
    rng = np.random.default_rng(11)
    for _ in range(20):
        coeffs = rng.normal(size=6)

        def poly(w, c=coeffs):
            return sum(ck * w**k for k, ck in enumerate(c))

        z = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.4, 0.4))
        if abs(z) < 1e-3:
            continue
        h = 1e-5
        central = (poly(z + h) - poly(z - h)) / (2 * h)
        assert abs(q_derivative_at(poly, z, q) - central) <= 1e-4


def test_q_derivative_series_coefficients():
    f = NormalizedSeries(np.array([1.0], dtype=complex))
    assert np.allclose(q_derivative_series(f, 0.5), [1.0])
    g = NormalizedSeries(np.array([1.0, 1.0], dtype=complex))
    assert np.allclose(q_derivative_series(g, 0.5), [1.0, 1.5])
    # classical limit: coefficients approach n a_n
    h = NormalizedSeries(np.array([1.0, 2.0, -0.5], dtype=complex))
    got = q_derivative_series(h, 1.0 - 1e-9)
    assert np.allclose(got, [1.0, 4.0, -1.5], atol=1e-7)


def test_normalized_series_validation():
    with pytest.raises(DomainError):
        NormalizedSeries(np.array([2.0], dtype=complex))
    with pytest.raises(DomainError):
        NormalizedSeries(np.array([], dtype=complex))
    f = NormalizedSeries(np.array([1.0, 0.25], dtype=complex))
    assert f.n_terms == 2
    assert f.eval(0.5) == pytest.approx(0.5 + 0.25 * 0.25)


def test_series_eval_matches_derivative_form():
    # z (D_q f)(z) / f(z) from ratio_polys agrees with the direct quotient
    rng = np.random.default_rng(5)
    coeffs = np.concatenate([[1.0], rng.normal(size=6) * 0.2]).astype(complex)
    f = NormalizedSeries(coeffs)
    q = 0.6
    num, den = f.ratio_polys(q)
    z = 0.4 + 0.1j
    lhs = z * q_derivative_at(f, z, q) / f.eval(z)
    rhs = np.polyval(num[::-1], z) / np.polyval(den[::-1], z)
    assert abs(lhs - rhs) < 1e-13
