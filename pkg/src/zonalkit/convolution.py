"""Generalized spherical convolution, spectrally and by direct quadrature.

The convolution of two kernels is (K1 * K2)(x, y) = integral of
K1(x, xi) K2(xi, y) over the sphere in the normalized surface measure.
On zonal kernels it acts diagonally on coefficients: c = a b / h for
q >= 2 and c_k = a_k b_k for q = 1; the direct quadrature route is kept
fully independent so each can certify the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, HermitianityError
from .quadrature import QuadratureRule
from .special import disc_poly, norm_const
from .spectral import (
    CoefficientTable,
    ZonalKernel,
    _check_sphere_points,
    clamp_inner,
    inner,
)

HERMITIAN_SAMPLE_TOL = 1e-10


@dataclass(frozen=True)
class TestHarmonic:
    """Harmonic polynomial Y(x) = x_1^m conj(x_2)^n on the sphere of C^2.

    Holomorphic in x_1 and antiholomorphic in x_2 with no mixed factors,
    so it is annihilated by the complex Laplacian for every (m, n).
    """

    m: int
    n: int

    # not a unit-test container, despite the Test prefix
    __test__ = False

    def eval(self, x):
        x = np.asarray(x, dtype=np.complex128)
        return x[..., 0] ** self.m * np.conj(x[..., 1]) ** self.n


def convolve_spectral(a, b):
    """Entrywise spectral convolution: c = a.b/h (q >= 2), c_k = a_k.b_k."""
    if a.q != b.q:
        raise DimensionMismatchError(f"tables have q={a.q} and q={b.q}")
    degree = min(a.degree, b.degree)
    entries = {}
    for idx, av in a.entries.items():
        bv = b.entries.get(idx)
        if bv is None:
            continue
        h = 1.0 if a.q == 1 else norm_const(a.q, idx[0], idx[1])
        entries[idx] = av * bv / h
    return CoefficientTable(a.q, degree, entries)


def _check_rule_for_direct(q, rule):
    if rule.q != q:
        raise DimensionMismatchError(f"rule has q={rule.q}, kernels have q={q}")
    if rule.kind == "circle" and q == 1:
        return
    if rule.kind == "sphere3" and q == 2:
        return
    if rule.kind == "sphere_mc":
        return
    raise DimensionMismatchError(
        f"rule kind {rule.kind!r} cannot integrate over the sphere for q={q}"
    )


def convolve_direct(k1, k2, x, y, rule):
    """Quadrature value of (K1 * K2)(x, y); the oracle for convolve_spectral.

    The rule's weights carry the 1/omega_q normalization, so this is a
    plain weighted sum of K1(x, xi_j) K2(xi_j, y) over sphere nodes.
    """
    if k1.q != k2.q:
        raise DimensionMismatchError(f"kernels have q={k1.q} and q={k2.q}")
    q = k1.q
    _check_rule_for_direct(q, rule)
    x = _check_sphere_points(q, x)
    y = _check_sphere_points(q, y)
    nodes = rule.nodes
    v1 = k1.eval(clamp_inner(inner(q, x, nodes)))
    v2 = k2.eval(clamp_inner(inner(q, nodes, y)))
    return complex(np.sum(rule.weights * v1 * v2))


def funk_hecke_check(kernel, harmonic, y, sphere_rule, disc_rule):
    """Residual of the Funk-Hecke identity for one harmonic and base point.

    Left side: sphere average of K'(x . y) conj(Y(x)). Right side: the
    disc integral of K' conj(R_{m,n}) (which equals a_{m,n}/h_{m,n})
    times conj(Y(y)). The two quadratures share nothing.
    """
    if kernel.q != 2:
        raise DimensionMismatchError("the harmonic test family is defined for q=2")
    _check_rule_for_direct(2, sphere_rule)
    if disc_rule.kind != "disc" or disc_rule.q != 2:
        raise DimensionMismatchError("right side needs a q=2 disc rule")
    y = _check_sphere_points(2, y)
    lhs_vals = kernel.eval(clamp_inner(inner(2, sphere_rule.nodes, y)))
    lhs = np.sum(sphere_rule.weights * lhs_vals * np.conj(harmonic.eval(sphere_rule.nodes)))
    basis = disc_poly(2, harmonic.m, harmonic.n, disc_rule.nodes)
    ratio = np.sum(disc_rule.weights * kernel.eval(disc_rule.nodes) * np.conj(basis))
    rhs = ratio * np.conj(harmonic.eval(y))
    return abs(complex(lhs) - complex(rhs))


def random_probes(q, count, degree, seed):
    """Fixed-seed low-degree polynomial probes on the sphere.

    Each probe is p(<x, y0>) for a random base point y0 and a random
    polynomial p in z and conj(z) of total degree <= degree.
    """
    rng = np.random.default_rng(seed)
    probes = []
    for _ in range(count):
        if q == 1:
            y0 = np.exp(2j * np.pi * rng.random())
        else:
            v = rng.standard_normal(q) + 1j * rng.standard_normal(q)
            y0 = v / np.linalg.norm(v)
        terms = [
            (m, n, complex(rng.standard_normal(), rng.standard_normal()))
            for m in range(degree + 1)
            for n in range(degree + 1 - m)
        ]

        def probe(x, y0=y0, terms=terms):
            w = inner(q, np.asarray(x, complex), y0)
            out = np.zeros_like(w)
            for m, n, c in terms:
                out = out + c * w**m * np.conj(w) ** n
            return out

        probes.append(probe)
    return probes


def hermitian_selfconv_pd_check(kernel, rule, probes):
    """Minimum of <(K*K)f, f> over the probe functions.

    K*K of a hermitian kernel is positive definite on L2, so the returned
    minimum is >= -1e-8 for any honest K. Hermitianity of the samples is
    checked first; the quadratic form is assembled from the raw sample
    matrix without exploiting the symmetry it is supposed to have.
    """
    q = kernel.q
    _check_rule_for_direct(q, rule)
    nodes = rule.nodes
    if q == 1:
        gram = nodes[:, None] * np.conj(nodes[None, :])
    else:
        gram = nodes @ nodes.conj().T
    samples = kernel.eval(clamp_inner(gram))
    herm_defect = float(np.max(np.abs(samples - samples.conj().T)))
    if herm_defect > HERMITIAN_SAMPLE_TOL:
        raise HermitianityError(
            f"kernel samples deviate from hermitian symmetry by {herm_defect:.3e}"
        )
    w = rule.weights
    selfconv = (samples * w[None, :]) @ samples
    best = None
    for probe in probes:
        f = np.asarray(probe(nodes), dtype=np.complex128)
        u = w * f
        form = np.vdot(u, selfconv @ u).real
        best = form if best is None else min(best, form)
    return 0.0 if best is None else float(best)
