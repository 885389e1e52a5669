"""Coefficient tables, zonal kernels, and the transforms between them.

A zonal kernel on the unit sphere of C^q is K(x, y) = K'(x . y) with
x . y = sum_j x_j conj(y_j). K' expands in disc polynomials (q >= 2) or
circle harmonics z^k (q = 1); a CoefficientTable is the truncated image of
K' under that expansion. The L2 theory is isometric: with the normalized
inner products used throughout, ||K||_2^2 = sum |a|^2 / h (q >= 2) or
sum |a_k|^2 (q = 1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._backend import basis_rows, synth_q1, synth_q2
from .errors import (
    DimensionMismatchError,
    DomainError,
    ResolutionError,
    ValidationError,
)
from .quadrature import QuadratureRule
from .special import _clamp_disc, canonical_indices, norm_const

# entries smaller than this are dropped on table construction
PRUNE_TOL = 1e-14

# positive-definiteness candidate test: real parts >= -PD_TOL, |imag| <= PD_TOL
PD_TOL = 1e-12

# tolerated rounding for on-sphere points and inner products
SPHERE_NORM_TOL = 1e-10
INNER_CLAMP_TOL = 1e-9

SCHEMA_VERSION = 1


def index_key(q):
    """Canonical sort key for spectral indices: total degree, then lex."""
    if q == 1:
        return lambda k: (abs(k), k)
    return lambda mn: (mn[0] + mn[1], mn)


@dataclass(frozen=True)
class CoefficientTable:
    """Sparse map from spectral indices to complex coefficients.

    Indices are ints k (q = 1) or pairs (m, n) (q >= 2), all within the
    truncation degree: |k| <= degree, respectively m, n <= degree. Entries
    with |a| < 1e-14 are dropped at construction.
    """

    q: int
    degree: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        clean = {}
        for idx, a in self.entries.items():
            a = complex(a)
            if abs(a) < PRUNE_TOL:
                continue
            if self.q == 1:
                k = int(idx)
                if abs(k) > self.degree:
                    raise ValueError(f"index {k} exceeds degree {self.degree}")
                clean[k] = a
            else:
                m, n = idx
                m, n = int(m), int(n)
                if m < 0 or n < 0 or m > self.degree or n > self.degree:
                    raise ValueError(f"index {(m, n)} outside degree {self.degree}")
                clean[(m, n)] = a
        object.__setattr__(self, "entries", clean)

    def items(self):
        """Entries in canonical order (total degree, then lexicographic)."""
        key = index_key(self.q)
        return [(idx, self.entries[idx]) for idx in sorted(self.entries, key=key)]

    def get(self, idx, default=0.0 + 0.0j):
        return self.entries.get(idx, default)

    @property
    def is_pd_candidate(self):
        """True when all coefficients are real and nonnegative to 1e-12."""
        return all(
            a.real >= -PD_TOL and abs(a.imag) <= PD_TOL for a in self.entries.values()
        )

    def to_json_dict(self):
        doc = {"schema_version": SCHEMA_VERSION, "q": self.q, "N": self.degree, "entries": []}
        for idx, a in self.items():
            if self.q == 1:
                doc["entries"].append({"k": idx, "re": float(a.real), "im": float(a.imag)})
            else:
                doc["entries"].append(
                    {"m": idx[0], "n": idx[1], "re": float(a.real), "im": float(a.imag)}
                )
        return doc

    @classmethod
    def from_json_dict(cls, doc):
        try:
            q = int(doc["q"])
            degree = int(doc["N"])
            raw = doc["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"coefficient file missing or invalid field: {exc}") from exc
        entries = {}
        for pos, ent in enumerate(raw):
            try:
                a = complex(float(ent["re"]), float(ent["im"]))
                idx = int(ent["k"]) if q == 1 else (int(ent["m"]), int(ent["n"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValidationError(f"bad coefficient entry #{pos}: {exc}") from exc
            if idx in entries:
                raise ValidationError(f"duplicate coefficient index {idx}")
            entries[idx] = a
        try:
            return cls(q, degree, entries)
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc


def save_table(table, path):
    """Write a coefficient table as JSON."""
    with open(path, "w") as fh:
        json.dump(table.to_json_dict(), fh, indent=2)
        fh.write("\n")


def load_table(path):
    """Read a coefficient table from JSON."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
    return CoefficientTable.from_json_dict(doc)


@dataclass(frozen=True)
class ZonalKernel:
    """An evaluable generating function K' with its dimension q.

    Backed by a closed form or by a coefficient table; fn must accept and
    return complex numpy arrays. Evaluation domain: the closed unit disc
    (q >= 2) or the unit circle (q = 1).
    """

    q: int
    fn: Callable[[np.ndarray], np.ndarray]
    table: CoefficientTable | None = None
    name: str = ""

    def eval(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = np.asarray(self.fn(z), dtype=np.complex128)
        return out

    @classmethod
    def from_table(cls, table, name=""):
        return cls(table.q, lambda z: synthesize(table, z), table, name)

    @classmethod
    def from_function(cls, q, fn, name=""):
        return cls(q, fn, None, name)


def forward_transform(kernel, degree, rule):
    """Project a kernel onto the basis: a_{m,n} = h * int K' conj(R) dnu.

    The rule must match the kernel (disc rule for q >= 2, circle rule for
    q = 1) and resolve the degree: nrad >= N+1 and nang >= 2N+1. Kernel
    samples are evaluated once per node and reused across all indices.
    """
    q = kernel.q
    if q >= 2:
        if rule.kind != "disc":
            raise DimensionMismatchError("q >= 2 transforms need a disc rule")
        if rule.q != q:
            raise DimensionMismatchError(f"rule has q={rule.q}, kernel has q={q}")
        nrad, nang = rule.grid
        if nrad < degree + 1 or nang < 2 * degree + 1:
            raise ResolutionError(
                f"rule ({nrad},{nang}) too coarse for degree {degree}: "
                f"need nrad >= {degree + 1}, nang >= {2 * degree + 1}"
            )
        samples = kernel.eval(rule.nodes)
        wv = rule.weights * samples
        inds = canonical_indices(q, degree)
        ms = np.array([i[0] for i in inds], dtype=np.int64)
        ns = np.array([i[1] for i in inds], dtype=np.int64)
        coefs = np.zeros(len(inds), dtype=np.complex128)
        block = max(1, 4_194_304 // max(len(inds), 1))
        for j0 in range(0, len(wv), block):
            j1 = min(len(wv), j0 + block)
            rows = basis_rows(q, ms, ns, rule.nodes[j0:j1])
            coefs += rows.conj() @ wv[j0:j1]
        entries = {
            idx: norm_const(q, idx[0], idx[1]) * c for idx, c in zip(inds, coefs)
        }
        return CoefficientTable(q, degree, entries)
    if rule.kind != "circle":
        raise DimensionMismatchError("q = 1 transforms need a circle rule")
    (nang,) = rule.grid
    if nang < 2 * degree + 1:
        raise ResolutionError(
            f"circle rule ({nang}) too coarse for degree {degree}: need nang >= {2 * degree + 1}"
        )
    samples = kernel.eval(rule.nodes)
    spectrum = np.fft.fft(samples) / nang
    entries = {}
    for k in canonical_indices(1, degree):
        entries[k] = spectrum[k % nang]
    return CoefficientTable(1, degree, entries)


def synthesize(table, z):
    """Evaluate the truncated expansion sum a * R (or sum a_k z^k) at z.

    Summation runs in the canonical entry order (total degree, then
    lexicographic) with compensated accumulation, so results are
    deterministic. Domain: |z| <= 1 for q >= 2, |z| = 1 for q = 1.
    """
    z = np.asarray(z, dtype=np.complex128)
    scalar = z.ndim == 0
    flat = z.ravel()
    items = table.items()
    coefs = np.array([a for _, a in items], dtype=np.complex128)
    if table.q == 1:
        r = np.abs(flat)
        if np.any(np.abs(r - 1.0) > INNER_CLAMP_TOL):
            raise DomainError("q = 1 synthesis requires |z| = 1")
        flat = flat / r
        ks = np.array([idx for idx, _ in items], dtype=np.int64)
        vals = synth_q1(ks, coefs, flat)
    else:
        flat = _clamp_disc(flat)
        ms = np.array([idx[0] for idx, _ in items], dtype=np.int64)
        ns = np.array([idx[1] for idx, _ in items], dtype=np.int64)
        vals = synth_q2(table.q, ms, ns, coefs, flat)
    return complex(vals[0]) if scalar else vals.reshape(z.shape)


def l2_norm_sq(table):
    """Parseval sum: sum |a|^2 / h for q >= 2, sum |a_k|^2 for q = 1."""
    total = 0.0
    for idx, a in table.items():
        h = 1.0 if table.q == 1 else norm_const(table.q, idx[0], idx[1])
        total += (a.real * a.real + a.imag * a.imag) / h
    return total


def _check_sphere_points(q, x):
    x = np.asarray(x, dtype=np.complex128)
    if q == 1:
        norms = np.abs(x)
    else:
        if x.shape[-1] != q:
            raise DimensionMismatchError(f"points must have {q} complex coordinates")
        norms = np.linalg.norm(x, axis=-1)
    if np.any(np.abs(norms - 1.0) > SPHERE_NORM_TOL):
        raise DomainError("point is not on the unit sphere")
    return x


def inner(q, x, y):
    """Hermitian inner product x . y = sum_j x_j conj(y_j)."""
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if q == 1:
        return x * np.conj(y)
    return np.sum(x * np.conj(y), axis=-1)


def clamp_inner(w):
    """Clamp inner products into the closed unit disc (tolerance 1e-9)."""
    w = np.asarray(w, dtype=np.complex128)
    r = np.abs(w)
    if np.any(r > 1.0 + INNER_CLAMP_TOL):
        raise DomainError("inner product outside the closed unit disc")
    return np.where(r > 1.0, w / np.where(r > 1.0, r, 1.0), w)


def zonal_eval(kernel, x, y):
    """Evaluate K(x, y) = K'(x . y) at sphere points x, y."""
    x = _check_sphere_points(kernel.q, x)
    y = _check_sphere_points(kernel.q, y)
    w = clamp_inner(inner(kernel.q, x, y))
    return kernel.eval(w)
