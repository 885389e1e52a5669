# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the evaluation kernels.

Same functions and accumulation order as ``_pykernels``; see that module for
the semantics. The Jacobi recurrence runs per point with entries grouped by
d = m - n, and synthesis uses compensated (Kahan) summation in entry order.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline double complex _ipow(double complex z, long d) noexcept nogil:
    # binary exponentiation, d >= 0 (matches numpy's integer power rounding)
    cdef double complex acc = 1.0
    cdef double complex base = z
    while d > 0:
        if d & 1:
            acc = acc * base
        d >>= 1
        if d:
            base = base * base
    return acc


cdef void _rows_point(double alpha, Py_ssize_t ngroups,
                      const cnp.int64_t[::1] group_d,
                      const cnp.int64_t[::1] group_lo,
                      const cnp.int64_t[::1] group_hi,
                      const cnp.int64_t[::1] sorted_ks,
                      const cnp.int64_t[::1] sorted_rows,
                      const double[::1] norms,
                      double complex zj, double tj,
                      double complex* buf) noexcept nogil:
    cdef Py_ssize_t g, pos, hi
    cdef long d, k, kmax
    cdef double beta, a1, a2, a3, a4, pk, pkm1, tmp
    cdef double complex phase
    for g in range(ngroups):
        d = group_d[g]
        pos = group_lo[g]
        hi = group_hi[g]
        kmax = sorted_ks[hi - 1]
        if d >= 0:
            phase = _ipow(zj, d)
        else:
            phase = _ipow(zj.conjugate(), -d)
        beta = <double>(d if d >= 0 else -d)
        pkm1 = 1.0
        while pos < hi and sorted_ks[pos] == 0:
            buf[sorted_rows[pos]] = phase
            pos += 1
        if kmax >= 1:
            pk = (alpha + 1.0) + (alpha + beta + 2.0) * (tj - 1.0) * 0.5
            while pos < hi and sorted_ks[pos] == 1:
                buf[sorted_rows[pos]] = phase * (pk / norms[1])
                pos += 1
            for k in range(2, kmax + 1):
                a1 = 2.0 * k * (k + alpha + beta) * (2.0 * k + alpha + beta - 2.0)
                a2 = (2.0 * k + alpha + beta - 1.0) * (alpha * alpha - beta * beta)
                a3 = (2.0 * k + alpha + beta - 2.0) * (2.0 * k + alpha + beta - 1.0) * (2.0 * k + alpha + beta)
                a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + alpha + beta)
                tmp = ((a2 + a3 * tj) * pk - a4 * pkm1) / a1
                pkm1 = pk
                pk = tmp
                while pos < hi and sorted_ks[pos] == k:
                    buf[sorted_rows[pos]] = phase * (pk / norms[k])
                    pos += 1


def _grouping(q, ms, ns):
    ds = ms - ns
    kk = np.minimum(ms, ns)
    order = np.lexsort((kk, ds))
    sorted_d = ds[order]
    bounds = np.flatnonzero(np.diff(sorted_d)) + 1
    lo = np.concatenate(([0], bounds)).astype(np.int64)
    hi = np.concatenate((bounds, [len(order)])).astype(np.int64)
    group_d = sorted_d[lo].astype(np.int64)
    kmax = int(kk.max()) if len(kk) else 0
    alpha = float(q - 2)
    norms = np.ones(kmax + 1)
    for k in range(1, kmax + 1):
        norms[k] = norms[k - 1] * (k + alpha) / k
    return (kk[order].astype(np.int64), order.astype(np.int64),
            group_d, lo, hi, norms, alpha)


def basis_rows(q, ms, ns, z):
    """Disc polynomial values: out[e, j] = R_{ms[e], ns[e]}^{q-2}(z[j])."""
    ms = np.ascontiguousarray(ms, dtype=np.int64)
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    cdef const double complex[::1] zv = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t ne = len(ms), npts = len(zv)
    out = np.empty((ne, npts), dtype=np.complex128)
    if ne == 0:
        return out
    sorted_ks, sorted_rows, group_d, lo, hi, norms, alpha = _grouping(q, ms, ns)
    cdef const cnp.int64_t[::1] v_ks = sorted_ks
    cdef const cnp.int64_t[::1] v_rows = sorted_rows
    cdef const cnp.int64_t[::1] v_gd = group_d
    cdef const cnp.int64_t[::1] v_lo = lo
    cdef const cnp.int64_t[::1] v_hi = hi
    cdef const double[::1] v_norms = norms
    cdef double complex[:, ::1] v_out = out
    cdef double a = alpha
    cdef Py_ssize_t ng = len(group_d), j, e
    cdef double tj
    cdef double complex zj
    buf_arr = np.empty(ne, dtype=np.complex128)
    cdef double complex[::1] buf = buf_arr
    with nogil:
        for j in range(npts):
            zj = zv[j]
            tj = 2.0 * (zj.real * zj.real + zj.imag * zj.imag) - 1.0
            _rows_point(a, ng, v_gd, v_lo, v_hi, v_ks, v_rows, v_norms, zj, tj, &buf[0])
            for e in range(ne):
                v_out[e, j] = buf[e]
    return out


def synth_q2(q, ms, ns, coefs, z):
    """Kahan-compensated sum of coefs[e] * R_{ms[e],ns[e]}(z) in entry order."""
    ms = np.ascontiguousarray(ms, dtype=np.int64)
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    cdef const double complex[::1] cv = np.ascontiguousarray(coefs, dtype=np.complex128)
    cdef const double complex[::1] zv = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t ne = len(ms), npts = len(zv)
    acc_arr = np.zeros(npts, dtype=np.complex128)
    if ne == 0:
        return acc_arr
    sorted_ks, sorted_rows, group_d, lo, hi, norms, alpha = _grouping(q, ms, ns)
    cdef const cnp.int64_t[::1] v_ks = sorted_ks
    cdef const cnp.int64_t[::1] v_rows = sorted_rows
    cdef const cnp.int64_t[::1] v_gd = group_d
    cdef const cnp.int64_t[::1] v_lo = lo
    cdef const cnp.int64_t[::1] v_hi = hi
    cdef const double[::1] v_norms = norms
    cdef double complex[::1] v_acc = acc_arr
    cdef double a = alpha
    cdef Py_ssize_t ng = len(group_d), j, e
    cdef double tj
    cdef double complex zj, y, tmp2, s, c
    buf_arr = np.empty(ne, dtype=np.complex128)
    cdef double complex[::1] buf = buf_arr
    with nogil:
        for j in range(npts):
            zj = zv[j]
            tj = 2.0 * (zj.real * zj.real + zj.imag * zj.imag) - 1.0
            _rows_point(a, ng, v_gd, v_lo, v_hi, v_ks, v_rows, v_norms, zj, tj, &buf[0])
            s = 0.0
            c = 0.0
            for e in range(ne):
                y = cv[e] * buf[e] - c
                tmp2 = s + y
                c = (tmp2 - s) - y
                s = tmp2
            v_acc[j] = s
    return acc_arr


def synth_q1(ks, coefs, z):
    """Kahan-compensated sum of coefs[e] * z**ks[e] in entry order, |z| = 1."""
    ks = np.ascontiguousarray(ks, dtype=np.int64)
    cdef const double complex[::1] cv = np.ascontiguousarray(coefs, dtype=np.complex128)
    cdef const double complex[::1] zv = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t ne = len(ks), npts = len(zv)
    acc_arr = np.zeros(npts, dtype=np.complex128)
    if ne == 0:
        return acc_arr
    idx = np.arange(ne)
    pos_entries = idx[ks >= 0][np.argsort(ks[ks >= 0], kind="stable")].astype(np.int64)
    neg_entries = idx[ks < 0][np.argsort(-ks[ks < 0], kind="stable")].astype(np.int64)
    cdef const cnp.int64_t[::1] v_ks = ks
    cdef const cnp.int64_t[::1] v_pos = pos_entries
    cdef const cnp.int64_t[::1] v_neg = neg_entries
    cdef double complex[::1] v_acc = acc_arr
    cdef Py_ssize_t npos = len(pos_entries), nneg = len(neg_entries), j, i, e
    cdef long cur, k
    cdef double complex zj, zc, pw, y, tmp, s, c
    buf_arr = np.empty(ne, dtype=np.complex128)
    cdef double complex[::1] buf = buf_arr
    with nogil:
        for j in range(npts):
            zj = zv[j]
            pw = 1.0
            cur = 0
            for i in range(npos):
                e = v_pos[i]
                k = v_ks[e]
                while cur < k:
                    pw = pw * zj
                    cur += 1
                buf[e] = pw
            zc = zj.conjugate()
            pw = 1.0
            cur = 0
            for i in range(nneg):
                e = v_neg[i]
                k = v_ks[e]
                while cur > k:
                    pw = pw * zc
                    cur -= 1
                buf[e] = pw
            s = 0.0
            c = 0.0
            for e in range(ne):
                y = cv[e] * buf[e] - c
                tmp = s + y
                c = (tmp - s) - y
                s = tmp
            v_acc[j] = s
    return acc_arr
