"""Spectral convolution against the direct quadrature oracle."""

import numpy as np
import pytest

from zonalkit import (
    CoefficientTable,
    DimensionMismatchError,
    HermitianityError,
    TestHarmonic,
    ZonalKernel,
    circle_rule,
    convolve_direct,
    convolve_spectral,
    disc_rule,
    funk_hecke_check,
    geometric_kernel,
    hermitian_selfconv_pd_check,
    inner,
    mode_kernel,
    mode_table,
    norm_const,
    poisson_table,
    random_probes,
    sphere3_rule,
    sphere_mc_sample,
    synthesize,
    zero_kernel,
)


def point_pairs(q, count, seed):
    pts = sphere_mc_sample(q, 2 * count, seed).nodes
    return pts[:count], pts[count:]


def random_table(q, degree, seed):
    rng = np.random.default_rng(seed)
    if q == 1:
        entries = {
            k: complex(rng.standard_normal(), rng.standard_normal())
            for k in range(-degree, degree + 1)
        }
    else:
        entries = {
            (m, n): complex(rng.standard_normal(), rng.standard_normal())
            for m in range(degree + 1)
            for n in range(degree + 1)
        }
    return CoefficientTable(q, degree, entries)


# ----------------------------------------------------------- spectral side


def test_single_mode_convolution_divides_by_h():
    a = CoefficientTable(2, 2, {(1, 1): 2.0})
    b = CoefficientTable(2, 2, {(1, 1): 3.0})
    c = convolve_spectral(a, b)
    assert c.entries == {(1, 1): 6.0 / 3.0 + 0.0j}


def test_disjoint_supports_convolve_to_zero():
    a = CoefficientTable(1, 3, {1: 1.0})
    b = CoefficientTable(1, 3, {2: 1.0})
    assert convolve_spectral(a, b).entries == {}


def test_poisson_semigroup():
    # Poisson(rho) * Poisson(sigma) = Poisson(rho sigma), coefficientwise
    a = poisson_table(0.5, 12)
    b = poisson_table(0.6, 12)
    c = convolve_spectral(a, b)
    want = poisson_table(0.3, 12)
    assert set(c.entries) == set(want.entries)
    for k, v in want.items():
        assert c.get(k) == pytest.approx(v, rel=1e-15)


def test_convolution_commutes_exactly():
    a = random_table(2, 4, 81)
    b = random_table(2, 4, 82)
    left = convolve_spectral(a, b)
    right = convolve_spectral(b, a)
    assert left.entries == right.entries


def test_degree_truncates_to_minimum():
    a = random_table(1, 6, 83)
    b = random_table(1, 3, 84)
    c = convolve_spectral(a, b)
    assert c.degree == 3


def test_convolution_rejects_mixed_q():
    with pytest.raises(DimensionMismatchError):
        convolve_spectral(random_table(1, 2, 85), random_table(2, 2, 86))


# ------------------------------------------------------------- direct side


def test_direct_convolution_of_circle_modes():
    # e^{i k th} * e^{i k th} keeps the mode: value (x conj(y))^k
    k1 = mode_kernel(1, 1)
    rule = circle_rule(16)
    (x,), (y,) = point_pairs(1, 1, 87)
    got = convolve_direct(k1, k1, x, y, rule)
    assert got == pytest.approx(x * np.conj(y), abs=1e-14)


def test_direct_convolution_of_sphere_modes():
    # Z_{1,0} * Z_{1,0} = Z_{1,0}/h_{1,0}; at x = y = pole the value is 1/2
    kern = mode_kernel(2, (1, 0))
    rule = sphere3_rule(8, 16)
    pole = np.array([1.0 + 0.0j, 0.0 + 0.0j])
    got = convolve_direct(kern, kern, pole, pole, rule)
    assert got == pytest.approx(0.5, abs=1e-13)


def test_direct_convolution_with_zero_kernel():
    kern = mode_kernel(2, (1, 0))
    rule = sphere3_rule(6, 12)
    (x,), (y,) = point_pairs(2, 1, 88)
    assert convolve_direct(kern, zero_kernel(2), x, y, rule) == 0.0


@pytest.mark.parametrize(
    "q,rule_factory,seed",
    [(1, lambda: circle_rule(64), 91), (2, lambda: sphere3_rule(12, 24), 92)],
)
def test_direct_matches_spectral_on_random_tables(q, rule_factory, seed):
    a = random_table(q, 3, seed)
    b = random_table(q, 3, seed + 100)
    c = convolve_spectral(a, b)
    ka, kb = ZonalKernel.from_table(a), ZonalKernel.from_table(b)
    rule = rule_factory()
    xs, ys = point_pairs(q, 5, seed + 200)
    for x, y in zip(xs, ys):
        direct = convolve_direct(ka, kb, x, y, rule)
        w = inner(q, x, y)
        assert abs(direct - synthesize(c, w)) < 1e-10


def test_direct_convolution_is_zonal():
    # the value depends on x . y only: rotate both arguments together
    kern = geometric_kernel(2, 0.5, 4)
    rule = sphere3_rule(12, 24)
    rng = np.random.default_rng(93)
    (x,), (y,) = point_pairs(2, 1, 94)
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    u, _ = np.linalg.qr(g)
    a = convolve_direct(kern, kern, x, y, rule)
    b = convolve_direct(kern, kern, u @ x, u @ y, rule)
    assert abs(a - b) < 1e-12


def test_direct_convolution_rejects_wrong_rule():
    kern = mode_kernel(2, (1, 0))
    with pytest.raises(DimensionMismatchError):
        convolve_direct(kern, kern, np.array([1.0 + 0j, 0j]),
                        np.array([1.0 + 0j, 0j]), circle_rule(8))
    with pytest.raises(DimensionMismatchError):
        convolve_direct(kern, zero_kernel(1), np.array([1.0 + 0j, 0j]),
                        np.array([1.0 + 0j, 0j]), sphere3_rule(4, 8))


def test_selfconv_projects_onto_mode():
    # <K*K, Z_{m,n}> = (a/h)^2 h: check via a second spectral transform
    a = CoefficientTable(2, 2, {(1, 1): 4.0})
    c = convolve_spectral(a, a)
    assert c.get((1, 1)) == pytest.approx(16.0 / 3.0, rel=1e-15)


# -------------------------------------------------------------- funk-hecke


def test_funk_hecke_constant_kernel():
    kern = ZonalKernel.from_function(2, lambda z: np.ones_like(z))
    rng = np.random.default_rng(95)
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    y = v / np.linalg.norm(v)
    sph = sphere3_rule(10, 20)
    disc = disc_rule(2, 8, 18)
    for mn in ((1, 0), (2, 1)):
        assert funk_hecke_check(kern, TestHarmonic(*mn), y, sph, disc) < 1e-13


def test_funk_hecke_mode_kernels():
    rng = np.random.default_rng(96)
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    y = v / np.linalg.norm(v)
    sph = sphere3_rule(12, 24)
    disc = disc_rule(2, 10, 22)
    for index in ((1, 0), (2, 1)):
        kern = mode_kernel(2, index)
        for mn in ((1, 0), (1, 1), (2, 1)):
            res = funk_hecke_check(kern, TestHarmonic(*mn), y, sph, disc)
            assert res < 1e-12, (index, mn)


def test_funk_hecke_truncated_family():
    kern = geometric_kernel(2, 0.4, 6)
    rng = np.random.default_rng(97)
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    y = v / np.linalg.norm(v)
    res = funk_hecke_check(kern, TestHarmonic(2, 1), y,
                           sphere3_rule(16, 32), disc_rule(2, 12, 26))
    assert res < 1e-12


def test_funk_hecke_requires_q2():
    from zonalkit import poisson_kernel

    with pytest.raises(DimensionMismatchError):
        funk_hecke_check(poisson_kernel(0.5), TestHarmonic(1, 0),
                         1.0 + 0j, circle_rule(8), disc_rule(2, 4, 9))


# ---------------------------------------------------------------- pd check


def test_selfconv_form_nonnegative_for_pd_kernel():
    kern = mode_kernel(2, (1, 1))
    rule = sphere3_rule(6, 12)
    probes = random_probes(2, 6, 2, 98)
    assert hermitian_selfconv_pd_check(kern, rule, probes) >= -1e-9


def test_selfconv_form_zero_kernel():
    rule = circle_rule(12)
    probes = random_probes(1, 4, 2, 99)
    assert hermitian_selfconv_pd_check(zero_kernel(1), rule, probes) == 0.0


def test_selfconv_form_empty_probes():
    kern = mode_kernel(1, 0)
    assert hermitian_selfconv_pd_check(kern, circle_rule(8), []) == 0.0


def test_selfconv_rejects_non_hermitian_kernel():
    # a constant imaginary offset breaks conjugate symmetry of the samples
    kern = ZonalKernel.from_function(1, lambda z: np.full_like(z, 2j))
    probes = random_probes(1, 2, 1, 100)
    with pytest.raises(HermitianityError):
        hermitian_selfconv_pd_check(kern, circle_rule(8), probes)


def test_random_probes_deterministic():
    p1 = random_probes(2, 3, 2, 101)
    p2 = random_probes(2, 3, 2, 101)
    x = sphere_mc_sample(2, 5, 102).nodes
    for a, b in zip(p1, p2):
        assert np.array_equal(a(x), b(x))
