"""Convolution square roots of positive-definite zonal kernels.

A kernel whose coefficients a (that is, h times the basis inner products
<K, Z>) are nonnegative and summable has a convolution square root P with
P * P = K, obtained diagonally: a(P) = sqrt(h a) for q >= 2 and
a_k(P) = sqrt(a_k) for q = 1. This module builds that root, diagnoses
the two hypotheses behind it (nonnegativity, summability), verifies
roots spectrally and against direct quadrature, and runs classical
positive-definiteness checks on sampled Gram matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .convolution import convolve_direct, convolve_spectral
from .errors import (
    DimensionMismatchError,
    HermitianityError,
    NegativeCoefficientError,
    ValidationError,
)
from .operator import hermitian_eig
from .quadrature import sphere_mc_sample
from .special import norm_const
from .spectral import (
    CoefficientTable,
    ZonalKernel,
    clamp_inner,
    inner,
    l2_norm_sq,
    zonal_eval,
)

COEFF_TOL = 1e-12

GRAM_TOL = 1e-9

TAIL_WINDOW = 5

# fixed seed for the direct-quadrature spot checks in verify_root
VERIFY_SEED = 1729


@dataclass(frozen=True)
class RootReport:
    """Existence diagnostics and residuals for a convolution root."""

    min_coefficient: float
    summability_partial: float
    tail_estimate: float
    l2_residual: float
    status: str
    per_degree: list = field(default_factory=list)
    offending_index: object = None

    def to_json_dict(self):
        doc = {
            "min_coefficient": self.min_coefficient,
            "summability_partial": self.summability_partial,
            "tail_estimate": self.tail_estimate,
            "l2_residual": self.l2_residual,
            "status": self.status,
            "per_degree": [float(s) for s in self.per_degree],
        }
        if self.offending_index is not None:
            idx = self.offending_index
            doc["offending_index"] = list(idx) if isinstance(idx, tuple) else idx
        return doc


def _per_degree_sums(table, reduce):
    length = table.degree + 1 if table.q == 1 else 2 * table.degree + 1
    sums = [0.0] * length
    for idx, a in table.items():
        d = abs(idx) if table.q == 1 else idx[0] + idx[1]
        sums[d] += reduce(a)
    return sums


def _tail_fit(per_degree):
    """Geometric extrapolation of the remaining tail; (estimate, diverging)."""
    window = [abs(s) for s in per_degree if s != 0.0][-TAIL_WINDOW:]
    if len(window) < 2:
        return 0.0, False
    ratio = (window[-1] / window[0]) ** (1.0 / (len(window) - 1))
    if ratio >= 1.0:
        return math.inf, True
    return window[-1] * ratio / (1.0 - ratio), False


def existence_diagnostics(table, tol=COEFF_TOL):
    """Evaluate the root-existence hypotheses on a coefficient table.

    Reports the smallest real part of the basis inner products a/h, the
    partial sum of coefficients (whose convergence as the degree grows is
    the summability hypothesis), per-degree sums, and a geometric tail
    estimate. Diagnostics never raise; violations show up as status.
    """
    min_coeff = None
    offending = None
    for idx, a in table.items():
        h = 1.0 if table.q == 1 else norm_const(table.q, idx[0], idx[1])
        val = a.real / h
        if min_coeff is None or val < min_coeff:
            min_coeff = val
            offending = idx
    if min_coeff is None:
        min_coeff = 0.0
    per_degree = _per_degree_sums(table, lambda a: a.real)
    total = math.fsum(per_degree)
    tail, diverging = _tail_fit(per_degree)
    if min_coeff < -tol:
        status = "negative_coefficient"
    elif diverging:
        status = "tail_warning"
    else:
        status = "ok"
        offending = None
    return RootReport(
        min_coefficient=min_coeff,
        summability_partial=total,
        tail_estimate=tail,
        l2_residual=0.0,
        status=status,
        per_degree=per_degree,
        offending_index=offending if status == "negative_coefficient" else None,
    )


def convolution_root(table, tol=COEFF_TOL):
    """Diagonal convolution square root: a -> sqrt(h a) (q >= 2), sqrt(a_k).

    Coefficients in [-tol, 0) are quadrature noise and clamp to zero;
    anything below -tol (or with imaginary part above tol) violates the
    nonnegativity hypothesis and raises NegativeCoefficientError naming
    the first offending index in canonical order.
    """
    entries = {}
    for idx, a in table.items():
        if a.real < -tol or abs(a.imag) > tol:
            raise NegativeCoefficientError(idx, complex(a))
        val = max(a.real, 0.0)
        if val == 0.0:
            continue
        h = 1.0 if table.q == 1 else norm_const(table.q, idx[0], idx[1])
        entries[idx] = complex(math.sqrt(h * val))
    return CoefficientTable(table.q, table.degree, entries)


def _difference_table(a, b):
    entries = dict(a.entries)
    for idx, v in b.entries.items():
        entries[idx] = entries.get(idx, 0.0) - v
    return CoefficientTable(a.q, max(a.degree, b.degree), entries)


def verify_root(p, k, rule=None):
    """Residual of P * P = K: spectral norm, plus spot checks on a rule.

    Always computes ||P*P - K||_2 from the coefficient difference. With a
    rule, additionally evaluates the direct convolution of P with itself
    at 10 seeded point pairs against K and returns the larger residual.
    """
    if p.q != k.q:
        raise DimensionMismatchError(f"tables have q={p.q} and q={k.q}")
    diff = _difference_table(convolve_spectral(p, p), k)
    residual = math.sqrt(l2_norm_sq(diff))
    if rule is None:
        return residual
    kp = ZonalKernel.from_table(p)
    kk = ZonalKernel.from_table(k)
    points = sphere_mc_sample(p.q, 20, VERIFY_SEED).nodes
    for i in range(10):
        x, y = points[2 * i], points[2 * i + 1]
        direct = convolve_direct(kp, kp, x, y, rule)
        residual = max(residual, abs(direct - complex(zonal_eval(kk, x, y))))
    return residual


def pd_gram_check(kernel, npoints, seed, tol=GRAM_TOL):
    """Minimum eigenvalue of the kernel's Gram matrix at seeded points.

    Classical positive definiteness makes this nonnegative for kernels
    that are self-convolutions or roots. Gram asymmetry beyond tol is a
    kernel defect and raises before any eigenvalue is computed.
    """
    if npoints < 1:
        raise ValidationError("npoints must be >= 1")
    points = sphere_mc_sample(kernel.q, npoints, seed).nodes
    if kernel.q == 1:
        gram_args = points[:, None] * np.conj(points[None, :])
    else:
        gram_args = points @ points.conj().T
    gram = kernel.eval(clamp_inner(gram_args))
    defect = float(np.max(np.abs(gram - gram.conj().T)))
    if defect > tol:
        raise HermitianityError(f"kernel Gram asymmetry {defect:.3e} exceeds {tol}")
    eig = hermitian_eig((gram + gram.conj().T) / 2.0)
    return float(eig.eigenvalues[-1])


def continuity_report(table):
    """Absolute coefficient sum and its per-degree pieces.

    sum |a| bounds the expansion uniformly (each basis function has
    modulus at most 1), so a convergent tail certifies the truncations
    converge uniformly and the limit kernel is continuous.
    """
    per_degree = _per_degree_sums(table, abs)
    return math.fsum(per_degree), per_degree
