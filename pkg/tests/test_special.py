"""Disc polynomials and Jacobi recurrence against independent formulas."""

import numpy as np
import pytest
import scipy.special

from zonalkit import (
    DomainError,
    canonical_indices,
    disc_poly,
    disc_poly_all,
    disc_poly_monomial,
    jacobi_r,
    norm_const,
)


def disc_points(count, seed):
    rng = np.random.default_rng(seed)
    # sqrt radius makes the samples area-uniform on the disc
    r = np.sqrt(rng.uniform(0.0, 1.0, count))
    return r * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, count))


# ---------------------------------------------------------------- jacobi


@pytest.mark.parametrize("alpha", [0, 1, 2, 3, 6, 10])
@pytest.mark.parametrize("k", [0, 1, 2, 5, 11, 24])
def test_jacobi_recurrence_matches_scipy(alpha, k):
    t = np.linspace(-1.0, 1.0, 41)
    ours = jacobi_r(k, alpha, 0, t)
    ref = scipy.special.eval_jacobi(k, alpha, 0, t)
    ref /= scipy.special.eval_jacobi(k, alpha, 0, 1.0)
    assert np.max(np.abs(ours - ref)) < 1e-12


def test_jacobi_normalized_at_one():
    for alpha in range(0, 8):
        for k in range(0, 20):
            assert jacobi_r(k, alpha, 0, 1.0) == pytest.approx(1.0, abs=1e-13)


def test_jacobi_rejects_negative_degree():
    with pytest.raises(ValueError):
        jacobi_r(-1, 0, 0, 0.5)


# ---------------------------------------------------------- disc polys


def test_value_at_one_is_one():
    for q in (2, 3, 5):
        for m in range(5):
            for n in range(5):
                assert disc_poly(q, m, n, 1.0 + 0.0j) == pytest.approx(1.0, abs=1e-12)


def test_recurrence_matches_monomial_sum():
    z = disc_points(50, 3)
    for q in (2, 3, 4, 5):
        for m in range(7):
            for n in range(7):
                a = disc_poly(q, m, n, z)
                b = disc_poly_monomial(q, m, n, z)
                assert np.max(np.abs(a - b)) < 1e-11, (q, m, n)


def test_monomial_sum_degrades_gracefully_at_high_degree():
    # the alternating sum cancels harder as the binomials grow; the
    # recurrence has no such loss, so the gap measures the oracle floor
    z = disc_points(20, 4)
    a = disc_poly(3, 15, 14, z)
    b = disc_poly_monomial(3, 15, 14, z)
    assert np.max(np.abs(a - b)) < 1e-9
    a = disc_poly(2, 18, 16, z)
    b = disc_poly_monomial(2, 18, 16, z)
    assert np.max(np.abs(a - b)) < 1e-6


def test_bounded_by_one_on_disc():
    z = disc_points(400, 5)
    for q in (2, 3):
        _, rows = disc_poly_all(q, 10, z)
        assert np.max(np.abs(rows)) <= 1.0 + 1e-12


def test_swapping_indices_conjugates():
    z = disc_points(30, 6)
    for q in (2, 4):
        for m, n in ((1, 0), (2, 1), (3, 3), (0, 4)):
            left = disc_poly(q, n, m, z)
            right = np.conj(disc_poly(q, m, n, z))
            assert np.max(np.abs(left - right)) < 1e-13


def test_phase_factorization():
    # R_{m,n}(e^{i t} z) = e^{i (m-n) t} R_{m,n}(z)
    z = disc_points(30, 7)
    t = 0.7324
    for m, n in ((2, 0), (1, 3), (2, 2)):
        rotated = disc_poly(2, m, n, np.exp(1j * t) * z)
        expected = np.exp(1j * (m - n) * t) * disc_poly(2, m, n, z)
        assert np.max(np.abs(rotated - expected)) < 1e-13


def test_q2_reduces_to_scaled_jacobi_on_reals():
    # on the real axis the phase drops out
    x = np.linspace(0.0, 1.0, 21)
    for m, n in ((3, 1), (2, 2)):
        k, d = min(m, n), abs(m - n)
        want = x**d * jacobi_r(k, 0, d, 2 * x**2 - 1)
        got = disc_poly(2, m, n, x.astype(complex)).real
        assert np.max(np.abs(got - want)) < 1e-13


def test_scalar_input_gives_scalar():
    v = disc_poly(2, 1, 1, 0.3 + 0.1j)
    assert isinstance(v, complex)


def test_point_outside_disc_rejected():
    with pytest.raises(DomainError):
        disc_poly(2, 1, 0, 1.5 + 0.0j)


def test_nearly_on_circle_clamped():
    # |z| = 1 + 5e-13 sits inside the clamp band
    z = (1.0 + 5e-13) * np.exp(0.3j)
    v = disc_poly(2, 2, 1, z)
    assert abs(v) <= 1.0 + 1e-12


def test_invalid_arguments_rejected():
    with pytest.raises(ValueError):
        disc_poly(1, 0, 0, 0.0j)
    with pytest.raises(ValueError):
        disc_poly(2, -1, 0, 0.0j)


# ------------------------------------------------------------- indexing


def test_canonical_order_q2():
    assert canonical_indices(2, 2) == [
        (0, 0),
        (0, 1),
        (1, 0),
        (0, 2),
        (1, 1),
        (2, 0),
        (1, 2),
        (2, 1),
        (2, 2),
    ]


def test_canonical_order_q1():
    assert canonical_indices(1, 3) == [0, -1, 1, -2, 2, -3, 3]


def test_canonical_count():
    for q in (2, 3):
        for degree in (0, 1, 4):
            assert len(canonical_indices(q, degree)) == (degree + 1) ** 2


def test_disc_poly_all_matches_single_evaluations():
    z = disc_points(25, 8)
    inds, rows = disc_poly_all(3, 4, z)
    assert inds == canonical_indices(3, 4)
    for i, (m, n) in enumerate(inds):
        assert np.max(np.abs(rows[i] - disc_poly(3, m, n, z))) < 1e-14


# ------------------------------------------------------------ constants


def test_norm_constants_q2_are_total_degree_plus_one():
    for m in range(6):
        for n in range(6):
            assert norm_const(2, m, n) == pytest.approx(m + n + 1)


def test_norm_constants_binomial_form():
    # (m+n+q-1)/(q-1) * binom(m+q-2, q-2) * binom(n+q-2, q-2)
    assert norm_const(3, 1, 1) == pytest.approx(8.0)
    assert norm_const(3, 2, 0) == pytest.approx(6.0)
    assert norm_const(4, 1, 1) == pytest.approx(15.0)
    assert norm_const(5, 2, 1) == pytest.approx(7 * 10 * 4 / 4)


def test_norm_constant_is_reciprocal_square_norm():
    # independent check by high order quadrature on the disc
    from zonalkit import disc_rule

    rule = disc_rule(3, 24, 48)
    for m, n in ((1, 0), (2, 2), (3, 1)):
        vals = disc_poly(3, m, n, rule.nodes)
        mass = float(np.sum(rule.weights * np.abs(vals) ** 2).real)
        assert mass == pytest.approx(1.0 / norm_const(3, m, n), rel=1e-12)
