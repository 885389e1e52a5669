"""Nystrom discretization, Hermitian eigensolve, and operator square roots.

The integral operator generated by a zonal kernel is discretized as the
symmetrized matrix M_ij = sqrt(w_i) K(x_i, x_j) sqrt(w_j), whose spectrum
approximates the operator spectrum. The operator square root is rebuilt
from the eigensystem as kernel samples S_ij and compared against the
spectral convolution root, giving two independent routes to the same
object.

Two storage layouts. Dense matrices are capped at 4096 nodes. On the
tensor grid of sphere3_rule the inner product x . x' depends on the angle
indices only through their offsets, so M is block circulant in both angle
directions: a 2D DFT over the offsets splits it exactly (a unitary change
of basis) into nang^2 Hermitian blocks of size nu x nu. That factored
layout keeps the large Mercer comparison grids tractable.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    HermitianityError,
    NegativeEigenvalueError,
    ValidationError,
)
from .special import norm_const
from .spectral import clamp_inner, inner, synthesize

DENSE_CAP = 4096

HERMITIAN_TOL = 1e-9

# relative threshold for locating the first significant vector component
PHASE_EPS = 1e-12

ROW_BLOCK = 512


@dataclass(frozen=True)
class NystromOperator:
    """Discretized integral operator: dense matrix or DFT-factored blocks.

    kind "dense": matrix holds M itself. kind "factored": blocks[k1, k2]
    is the Hermitian nu x nu block at angle-frequency pair (k1, k2), and
    gram_struct[a, a2, beta, gamma] holds the distinct inner products
    x . x' for radial indices (a, a2) and angle offsets (beta, gamma);
    samples[a, a2, beta, gamma] holds K' at those inner products.
    """

    q: int
    kind: str
    points: np.ndarray
    weights: np.ndarray
    matrix: np.ndarray | None = None
    blocks: np.ndarray | None = None
    gram_struct: np.ndarray | None = None
    samples: np.ndarray | None = None
    u_weights: np.ndarray | None = None
    nang: int = 0

    def __len__(self):
        return len(self.weights)

    def _decode(self, idx):
        # node layout of sphere3_rule: ((a * nang) + b) * nang + c
        b, c = divmod(np.asarray(idx), self.nang)
        a, b = divmod(b, self.nang)
        return a, b, c

    def dense_matrix(self):
        """Materialize M; factored operators only up to the dense cap."""
        if self.kind == "dense":
            return self.matrix
        n = len(self)
        if n > DENSE_CAP:
            raise ValidationError(
                f"matrix with {n} nodes exceeds the dense cap {DENSE_CAP}"
            )
        i = np.arange(n)
        ai, bi, ci = self._decode(i)
        scale = np.sqrt(self.u_weights) / self.nang
        m = np.empty((n, n), dtype=np.complex128)
        for lo in range(0, n, ROW_BLOCK):
            hi = min(n, lo + ROW_BLOCK)
            m[lo:hi] = self.samples[
                ai[lo:hi, None],
                ai[None, :],
                (bi[lo:hi, None] - bi[None, :]) % self.nang,
                (ci[lo:hi, None] - ci[None, :]) % self.nang,
            ]
            m[lo:hi] *= scale[ai[lo:hi]][:, None] * scale[ai][None, :]
        return m


def _gram(q, x, y):
    """All pairwise inner products between two point sets."""
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if q == 1:
        return x[:, None] * np.conj(y[None, :])
    return x @ y.conj().T


def discretize_operator(kernel, rule):
    """Symmetrized Nystrom matrix of the integral operator on the rule.

    Circle and Monte Carlo rules build the dense matrix (node count
    capped at 4096); sphere3 tensor rules build the exact DFT-factored
    form. Sample hermitianity beyond 1e-9 is reported as a kernel
    defect before any spectral work.
    """
    if rule.q != kernel.q:
        raise DimensionMismatchError(
            f"rule has q={rule.q}, kernel has q={kernel.q}"
        )
    if rule.kind not in ("circle", "sphere3", "sphere_mc"):
        raise ValidationError(f"rule kind {rule.kind!r} is not a sphere rule")
    if rule.kind in ("circle", "sphere_mc"):
        n = len(rule.weights)
        if n > DENSE_CAP:
            raise ValidationError(f"{n} nodes exceed the dense cap {DENSE_CAP}")
        samples = kernel.eval(clamp_inner(_gram(kernel.q, rule.nodes, rule.nodes)))
        sw = np.sqrt(rule.weights)
        m = sw[:, None] * samples * sw[None, :]
        defect = float(np.max(np.abs(m - m.conj().T)))
        if defect > HERMITIAN_TOL:
            raise HermitianityError(
                f"operator matrix deviates from hermitian by {defect:.3e}"
            )
        return NystromOperator(
            q=kernel.q, kind="dense", points=rule.nodes, weights=rule.weights, matrix=m
        )
    nu, nang = rule.grid
    u, wu = rule.axes
    phase = np.exp(2j * np.pi * np.arange(nang) / nang)
    rad = np.sqrt(u[:, None] * u[None, :])
    rad2 = np.sqrt((1.0 - u[:, None]) * (1.0 - u[None, :]))
    gram = (
        rad[:, :, None, None] * phase[None, None, :, None]
        + rad2[:, :, None, None] * phase[None, None, None, :]
    )
    samples = kernel.eval(clamp_inner(gram))
    chat = np.fft.fft2(samples, axes=(2, 3))
    scale = np.sqrt(wu[:, None] * wu[None, :]) / nang**2
    blocks = np.transpose(chat * scale[:, :, None, None], (2, 3, 0, 1))
    defect = float(np.max(np.abs(blocks - np.conj(np.transpose(blocks, (0, 1, 3, 2))))))
    if defect > HERMITIAN_TOL:
        raise HermitianityError(
            f"operator blocks deviate from hermitian by {defect:.3e}"
        )
    return NystromOperator(
        q=kernel.q,
        kind="factored",
        points=rule.nodes,
        weights=rule.weights,
        blocks=np.ascontiguousarray(blocks),
        gram_struct=gram,
        samples=samples,
        u_weights=wu,
        nang=nang,
    )


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues sorted descending with a realization of the vectors.

    Dense systems carry the orthonormal eigenvector columns. Factored
    systems carry, per eigenvalue, the angle-frequency pair (k1, k2) and
    the radial block vector psi; the full eigenvector on node (a, b, c)
    is psi[a] exp(2 pi i (k1 b + k2 c) / nang) / nang.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray | None = None
    freq1: np.ndarray | None = None
    freq2: np.ndarray | None = None
    radial: np.ndarray | None = None
    nang: int = 0

    def __len__(self):
        return len(self.eigenvalues)

    def vector(self, i):
        """Materialize eigenvector i as a full column."""
        if self.vectors is not None:
            return self.vectors[:, i]
        nang = self.nang
        angles = np.arange(nang)
        ph1 = np.exp(2j * np.pi * self.freq1[i] * angles / nang)
        ph2 = np.exp(2j * np.pi * self.freq2[i] * angles / nang)
        full = self.radial[:, i][:, None, None] * ph1[None, :, None] * ph2[None, None, :]
        return full.ravel() / nang


def _phase_fix(columns):
    """Rotate each column so its first significant component is real > 0."""
    for j in range(columns.shape[1]):
        col = columns[:, j]
        mags = np.abs(col)
        top = mags.max()
        if top == 0.0:
            continue
        i0 = int(np.argmax(mags > PHASE_EPS * top))
        piv = col[i0]
        columns[:, j] = col * (np.conj(piv) / abs(piv))
    return columns


def hermitian_eig(m):
    """Full eigensystem of a Hermitian matrix, deterministically ordered.

    Descending eigenvalues; within degenerate groups the solver order is
    kept stable and each vector's phase is fixed by making its first
    significant component real and positive.
    """
    m = np.asarray(m, dtype=np.complex128)
    defect = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if defect > HERMITIAN_TOL:
        raise HermitianityError(f"matrix deviates from hermitian by {defect:.3e}")
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2.0)
    order = np.argsort(-vals, kind="stable")
    return EigenSystem(eigenvalues=vals[order], vectors=_phase_fix(vecs[:, order]))


def operator_eig(op):
    """Eigensystem of a discretized operator (dense or factored)."""
    if op.kind == "dense":
        return hermitian_eig(op.matrix)
    nang = op.nang
    nu = op.blocks.shape[-1]
    lam = np.empty(nang * nang * nu)
    radial = np.empty((nu, nang * nang * nu), dtype=np.complex128)
    freq1 = np.empty(nang * nang * nu, dtype=np.int64)
    freq2 = np.empty(nang * nang * nu, dtype=np.int64)
    pos = 0
    for k1 in range(nang):
        for k2 in range(nang):
            vals, vecs = np.linalg.eigh(op.blocks[k1, k2])
            sl = slice(pos, pos + nu)
            lam[sl] = vals[::-1]
            radial[:, sl] = _phase_fix(vecs[:, ::-1].copy())
            freq1[sl] = k1
            freq2[sl] = k2
            pos += nu
    order = np.argsort(-lam, kind="stable")
    return EigenSystem(
        eigenvalues=lam[order],
        freq1=freq1[order],
        freq2=freq2[order],
        radial=radial[:, order],
        nang=nang,
    )


@dataclass(frozen=True)
class SqrtKernel:
    """Samples of the operator square-root kernel S at the rule nodes.

    Dense form stores a factor A with S = A A^H (so S is positive
    semidefinite by construction); the factored form stores the values
    S_struct[a, a2, beta, gamma] on the tensor structure, which covers
    every node pair. Values are unweighted kernel samples: the sqrt(w)
    symmetrization of the matrix has been divided back out.
    """

    q: int
    kind: str
    points: np.ndarray
    weights: np.ndarray
    factor: np.ndarray | None = None
    s_struct: np.ndarray | None = None
    gram_struct: np.ndarray | None = None
    nang: int = 0

    def __len__(self):
        return len(self.weights)

    def _decode(self, idx):
        b, c = divmod(np.asarray(idx), self.nang)
        a, b = divmod(b, self.nang)
        return a, b, c

    def row_block(self, rows):
        """Sample values S[rows, :] against all nodes."""
        if self.kind == "dense":
            return self.factor[rows] @ self.factor.conj().T
        n = len(self)
        ai, bi, ci = self._decode(np.asarray(rows))
        aj, bj, cj = self._decode(np.arange(n))
        return self.s_struct[
            ai[:, None],
            aj[None, :],
            (bi[:, None] - bj[None, :]) % self.nang,
            (ci[:, None] - cj[None, :]) % self.nang,
        ]

    def dense(self):
        """Materialize the full sample matrix (small operators only)."""
        n = len(self)
        if n > DENSE_CAP:
            raise ValidationError(f"{n} nodes exceed the dense cap {DENSE_CAP}")
        return self.row_block(np.arange(n))


def operator_sqrt_kernel(eig, op, clamp_tol=None):
    """Mercer square root: S_ij = sum_n sqrt(l_n) u_n(i) conj(u_n(j)) / sqrt(w_i w_j).

    Eigenvalues in [-clamp_tol, 0) are treated as discretization zeros;
    anything below -clamp_tol means the input operator was not positive
    semidefinite and raises. Default clamp_tol is 1e-10 times the top
    eigenvalue.
    """
    lam = eig.eigenvalues
    lmax = float(lam[0]) if len(lam) else 0.0
    if clamp_tol is None:
        clamp_tol = 1e-10 * max(lmax, 0.0)
    bad = np.flatnonzero(lam < -clamp_tol)
    if bad.size:
        i = int(bad[0])
        raise NegativeEigenvalueError(i, float(lam[i]))
    # discretization scatters the operator's zero eigenvalues to both sides
    # of 0; the whole dead zone |lam| <= clamp_tol is treated as zero, else
    # sqrt(dust) pollutes the kernel samples
    lamc = np.where(lam > clamp_tol, lam, 0.0)
    if eig.vectors is not None:
        keep = np.flatnonzero(lamc > 0.0)
        a = eig.vectors[:, keep] * lamc[keep] ** 0.25
        a /= np.sqrt(op.weights)[:, None]
        return SqrtKernel(
            q=op.q, kind="dense", points=op.points, weights=op.weights, factor=a
        )
    nang = eig.nang
    nu = eig.radial.shape[0]
    tblocks = np.zeros((nang, nang, nu, nu), dtype=np.complex128)
    for i in np.flatnonzero(lamc > 0.0):
        psi = eig.radial[:, i]
        tblocks[eig.freq1[i], eig.freq2[i]] += np.sqrt(lamc[i]) * np.outer(
            psi, np.conj(psi)
        )
    chat = np.transpose(tblocks, (2, 3, 0, 1))
    s_struct = np.fft.ifft2(chat, axes=(2, 3)) * nang**2
    wu = op.u_weights
    s_struct /= np.sqrt(wu[:, None] * wu[None, :])[:, :, None, None]
    return SqrtKernel(
        q=op.q,
        kind="structured",
        points=op.points,
        weights=op.weights,
        s_struct=s_struct,
        gram_struct=op.gram_struct,
        nang=nang,
    )


def compare_roots(s, p):
    """Max absolute deviation of S samples from the spectral root at x_i . x_j.

    Structured square roots are compared on the tensor structure, which
    enumerates every distinct node pair exactly once; dense ones stream
    row blocks so no full Gram matrix is held at once.
    """
    if p.q != s.q:
        raise DimensionMismatchError(f"table has q={p.q}, samples have q={s.q}")
    if s.kind == "structured":
        target = synthesize(p, clamp_inner(s.gram_struct.ravel()))
        return float(np.max(np.abs(s.s_struct.ravel() - target)))
    n = len(s)
    worst = 0.0
    for lo in range(0, n, ROW_BLOCK):
        hi = min(n, lo + ROW_BLOCK)
        gram = clamp_inner(_gram(s.q, s.points[lo:hi], s.points))
        target = synthesize(p, gram.ravel()).reshape(gram.shape)
        block = s.row_block(np.arange(lo, hi))
        worst = max(worst, float(np.max(np.abs(block - target))))
    return worst


def table_eigenvalues(table):
    """Operator eigenvalues implied by a coefficient table, sorted descending.

    Each index contributes the eigenvalue a/h with multiplicity h (the
    dimension of the bidegree harmonic space); for q = 1 each circle
    frequency contributes a_k once.
    """
    vals = []
    for idx, a in table.items():
        if table.q == 1:
            vals.append(a.real)
        else:
            h = norm_const(table.q, idx[0], idx[1])
            mult = int(round(h))
            vals.extend([a.real / h] * mult)
    return np.sort(np.asarray(vals))[::-1]


def eigenvalues_to_csv(eig, path):
    """Write (index, eigenvalue) rows for convergence plots."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "eigenvalue"])
        for i, lam in enumerate(eig.eigenvalues):
            writer.writerow([i, repr(float(lam))])
