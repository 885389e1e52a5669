"""Normalized Jacobi polynomials, disc polynomials, and their constants.

Disc polynomials R_{m,n}(z) on the closed unit disc are the zonal building
blocks on the unit sphere of C^q (q >= 2): in polar form

    R_{m,n}(z) = r^{|m-n|} e^{i(m-n)theta} * P_k^{(q-2,|m-n|)}(2r^2-1) / P_k(1)

with k = min(m,n). The primary evaluation path is the three-term recurrence
on the classical Jacobi polynomials P; an independent monomial-sum formula
(``disc_poly_monomial``) serves as the accuracy oracle.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, lgamma

import numpy as np

from ._backend import basis_rows
from .errors import DomainError

# |z| within this of 1 is clamped onto the disc; beyond it is a domain error
DISC_CLAMP_TOL = 1e-12


def _jacobi_p_last(k, alpha, beta, t):
    """Unnormalized P_k^{(alpha,beta)}(t) by the three-term recurrence."""
    t = np.asarray(t, dtype=float)
    pkm1 = np.ones_like(t)
    if k == 0:
        return pkm1
    pk = (alpha + 1.0) + (alpha + beta + 2.0) * (t - 1.0) * 0.5
    for j in range(2, k + 1):
        a1 = 2.0 * j * (j + alpha + beta) * (2.0 * j + alpha + beta - 2.0)
        a2 = (2.0 * j + alpha + beta - 1.0) * (alpha * alpha - beta * beta)
        a3 = (2.0 * j + alpha + beta - 2.0) * (2.0 * j + alpha + beta - 1.0) * (2.0 * j + alpha + beta)
        a4 = 2.0 * (j + alpha - 1.0) * (j + beta - 1.0) * (2.0 * j + alpha + beta)
        pk, pkm1 = ((a2 + a3 * t) * pk - a4 * pkm1) / a1, pk
    return pk


def _jacobi_norm(k, alpha):
    """P_k^{(alpha,beta)}(1) = binom(k+alpha, k), exact for integer alpha."""
    if float(alpha).is_integer():
        return float(comb(k + int(alpha), k))
    return float(np.exp(lgamma(k + alpha + 1.0) - lgamma(alpha + 1.0) - lgamma(k + 1.0)))


def jacobi_r(k, alpha, beta, t):
    """Normalized Jacobi polynomial R_k^{(alpha,beta)}(t) with R_k(1) = 1."""
    if k < 0:
        raise ValueError("degree k must be nonnegative")
    t = np.asarray(t, dtype=float)
    out = _jacobi_p_last(k, float(alpha), float(beta), t) / _jacobi_norm(k, alpha)
    return out if out.ndim else float(out)


def canonical_indices(q, degree):
    """Spectral indices of degree <= degree in canonical order.

    q >= 2: pairs (m, n) with 0 <= m, n <= degree, sorted by total degree
    m + n, then lexicographically. q = 1: integers k with |k| <= degree,
    sorted by |k| then value: 0, -1, 1, -2, 2, ...
    """
    if q == 1:
        out = [0]
        for k in range(1, degree + 1):
            out.extend((-k, k))
        return out
    out = []
    for s in range(2 * degree + 1):
        for m in range(max(0, s - degree), min(s, degree) + 1):
            out.append((m, s - m))
    return out


def _clamp_disc(z):
    """Project points just outside the unit disc back onto it."""
    z = np.asarray(z, dtype=np.complex128)
    r = np.abs(z)
    if np.any(r > 1.0 + DISC_CLAMP_TOL):
        raise DomainError(f"|z| = {float(r.max())} exceeds the unit disc tolerance")
    out = np.where(r > 1.0, z / np.where(r > 1.0, r, 1.0), z)
    return out


def disc_poly(q, m, n, z):
    """Disc polynomial R_{m,n}^{q-2}(z), q >= 2, via the Jacobi recurrence."""
    if q < 2:
        raise ValueError("disc polynomials require q >= 2")
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    z = np.asarray(z, dtype=np.complex128)
    scalar = z.ndim == 0
    flat = _clamp_disc(z).ravel()
    vals = basis_rows(q, np.array([m]), np.array([n]), flat)[0]
    return complex(vals[0]) if scalar else vals.reshape(z.shape)


def disc_poly_all(q, degree, z):
    """All disc polynomials of degree <= degree at the points z.

    Returns (indices, values) with indices from canonical_indices(q, degree)
    and values of shape (len(indices), len(z)).
    """
    if q < 2:
        raise ValueError("disc polynomials require q >= 2")
    inds = canonical_indices(q, degree)
    ms = np.array([i[0] for i in inds], dtype=np.int64)
    ns = np.array([i[1] for i in inds], dtype=np.int64)
    flat = _clamp_disc(np.asarray(z, dtype=np.complex128)).ravel()
    return inds, basis_rows(q, ms, ns, flat)


def disc_poly_monomial(q, m, n, z):
    """R_{m,n}^{q-2}(z) by the explicit monomial sum; accuracy oracle.

    Coefficients are exact rationals at every size, so the only error source
    is cancellation between the alternating extended-precision terms. That
    cancellation grows with the binomial size of the coefficients: expect
    ~1e-12 up to total degree ~30 and gradual loss beyond.
    """
    if q < 2:
        raise ValueError("disc polynomials require q >= 2")
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    z = np.asarray(z, dtype=np.complex128)
    scalar = z.ndim == 0
    flat = _clamp_disc(z).ravel().astype(np.clongdouble)
    acc = np.zeros(flat.shape, dtype=np.clongdouble)
    for j in range(min(m, n) + 1):
        num = Fraction(
            factorial(m) * factorial(n) * factorial(q - 2) * factorial(m + n + q - 2 - j),
            factorial(m + q - 2) * factorial(n + q - 2) * factorial(j) * factorial(m - j) * factorial(n - j),
        )
        mag = np.longdouble(num.numerator) / np.longdouble(num.denominator)
        term = mag * flat ** (m - j) * np.conj(flat) ** (n - j)
        if j % 2:
            acc -= term
        else:
            acc += term
    out = acc.astype(np.complex128)
    return complex(out[0]) if scalar else out.reshape(z.shape)


def norm_const(q, m, n):
    """Normalization constant h_{m,n}^{q-2}, exact integer arithmetic.

    h = (m+n+q-1)/(q-1) * C(m+q-2, q-2) * C(n+q-2, q-2); the reciprocal of
    the squared L2(disc) norm of R_{m,n}. For q = 1 every mode has h = 1.
    """
    if q == 1:
        return 1.0
    if q < 1:
        raise ValueError("q must be >= 1")
    h = Fraction(m + n + q - 1, q - 1) * comb(m + q - 2, q - 2) * comb(n + q - 2, q - 2)
    return float(h)
