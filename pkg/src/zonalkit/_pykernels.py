"""Pure numpy implementations of the evaluation kernels.

These are the fallback for the compiled extension in ``_ckernels``; both
expose the same three functions with identical semantics and accumulation
order, so results agree to the last bit up to compiler rounding:

- ``basis_rows(q, ms, ns, z)``: disc polynomial values R_{m,n}(z), one row
  per requested index, any q >= 2.
- ``synth_q2(q, ms, ns, coefs, z)``: sum of coefs[e] * R_{ms[e],ns[e]}(z)
  accumulated in the given entry order with compensated (Kahan) summation.
- ``synth_q1(ks, coefs, z)``: sum of coefs[e] * z**ks[e] for points on the
  unit circle, same accumulation scheme.

Entries are internally grouped by the repetition index d = m - n so each
group shares one run of the Jacobi three-term recurrence in t = 2|z|^2 - 1;
the requested output order is preserved.
"""

from __future__ import annotations

from math import comb

import numpy as np

# Cap on scratch size (complex elements) when evaluating many entries at
# many points; blocks over points beyond this.
_BLOCK_ELEMS = 8_388_608


def _jacobi_run(kmax, alpha, beta, t, out, ks, rows, scale):
    """Run the P_k^{(alpha,beta)} recurrence on t, writing scale * P_k / P_k(1)
    into out[rows[i]] for each requested degree ks[i] (ks ascending)."""
    pkm1 = np.ones_like(t)
    pk = None
    pos = 0
    norm = 1.0
    while pos < len(ks) and ks[pos] == 0:
        out[rows[pos]] = scale
        pos += 1
    if kmax >= 1:
        pk = (alpha + 1.0) + (alpha + beta + 2.0) * (t - 1.0) * 0.5
        norm = norm * (1.0 + alpha) / 1.0
        while pos < len(ks) and ks[pos] == 1:
            out[rows[pos]] = scale * (pk / norm)
            pos += 1
    for k in range(2, kmax + 1):
        a1 = 2.0 * k * (k + alpha + beta) * (2.0 * k + alpha + beta - 2.0)
        a2 = (2.0 * k + alpha + beta - 1.0) * (alpha * alpha - beta * beta)
        a3 = (2.0 * k + alpha + beta - 2.0) * (2.0 * k + alpha + beta - 1.0) * (2.0 * k + alpha + beta)
        a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + alpha + beta)
        pk, pkm1 = ((a2 + a3 * t) * pk - a4 * pkm1) / a1, pk
        norm = norm * (k + alpha) / k
        while pos < len(ks) and ks[pos] == k:
            out[rows[pos]] = scale * (pk / norm)
            pos += 1


def basis_rows(q, ms, ns, z):
    """Disc polynomial values: out[e, j] = R_{ms[e], ns[e]}^{q-2}(z[j])."""
    ms = np.asarray(ms, dtype=np.int64)
    ns = np.asarray(ns, dtype=np.int64)
    z = np.ascontiguousarray(z, dtype=np.complex128)
    ne, npts = len(ms), len(z)
    out = np.empty((ne, npts), dtype=np.complex128)
    if ne == 0:
        return out
    t = 2.0 * (z.real * z.real + z.imag * z.imag) - 1.0
    ds = ms - ns
    kk = np.minimum(ms, ns)
    order = np.lexsort((kk, ds))
    alpha = float(q - 2)
    e0 = 0
    while e0 < ne:
        d = ds[order[e0]]
        e1 = e0
        while e1 < ne and ds[order[e1]] == d:
            e1 += 1
        grp = order[e0:e1]
        ks = kk[grp]
        phase = z**d if d >= 0 else np.conj(z) ** (-d)
        _jacobi_run(int(ks[-1]), alpha, float(abs(d)), t, out, ks, grp, phase)
        e0 = e1
    return out


def synth_q2(q, ms, ns, coefs, z):
    """Kahan-compensated sum of coefs[e] * R_{ms[e],ns[e]}(z) in entry order."""
    ms = np.asarray(ms, dtype=np.int64)
    ns = np.asarray(ns, dtype=np.int64)
    coefs = np.asarray(coefs, dtype=np.complex128)
    z = np.ascontiguousarray(z, dtype=np.complex128)
    ne, npts = len(ms), len(z)
    acc = np.zeros(npts, dtype=np.complex128)
    if ne == 0:
        return acc
    comp = np.zeros(npts, dtype=np.complex128)
    block = max(256, min(npts, _BLOCK_ELEMS // ne)) if npts else 0
    for j0 in range(0, npts, block):
        j1 = min(npts, j0 + block)
        rows = basis_rows(q, ms, ns, z[j0:j1])
        a, c = acc[j0:j1], comp[j0:j1]
        for e in range(ne):
            y = coefs[e] * rows[e] - c
            tmp = a + y
            c[...] = (tmp - a) - y
            a[...] = tmp
    return acc


def synth_q1(ks, coefs, z):
    """Kahan-compensated sum of coefs[e] * z**ks[e] in entry order, |z| = 1."""
    ks = np.asarray(ks, dtype=np.int64)
    coefs = np.asarray(coefs, dtype=np.complex128)
    z = np.ascontiguousarray(z, dtype=np.complex128)
    ne, npts = len(ks), len(z)
    acc = np.zeros(npts, dtype=np.complex128)
    if ne == 0:
        return acc
    comp = np.zeros(npts, dtype=np.complex128)
    block = max(256, min(npts, _BLOCK_ELEMS // ne)) if npts else 0
    for j0 in range(0, npts, block):
        j1 = min(npts, j0 + block)
        zb = z[j0:j1]
        rows = np.empty((ne, j1 - j0), dtype=np.complex128)
        # fill power rows walking outward from k = 0 so each step is one multiply
        idx = np.arange(ne)
        pos_entries = idx[ks >= 0][np.argsort(ks[ks >= 0], kind="stable")]
        neg_entries = idx[ks < 0][np.argsort(-ks[ks < 0], kind="stable")]
        pw = np.ones(j1 - j0, dtype=np.complex128)
        cur = 0
        for e in pos_entries:
            k = int(ks[e])
            while cur < k:
                pw = pw * zb
                cur += 1
            rows[e] = pw
        zc = np.conj(zb)
        pw = np.ones(j1 - j0, dtype=np.complex128)
        cur = 0
        for e in neg_entries:
            k = int(ks[e])
            while cur > k:
                pw = pw * zc
                cur -= 1
            rows[e] = pw
        a, c = acc[j0:j1], comp[j0:j1]
        for e in range(ne):
            y = coefs[e] * rows[e] - c
            tmp = a + y
            c[...] = (tmp - a) - y
            a[...] = tmp
    return acc
