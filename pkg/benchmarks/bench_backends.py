"""Benchmark the compiled evaluation core against the pure-Python fallback.

Times the three hot kernels (basis_rows, synth_q2, synth_q1) on
representative workloads and prints a table with per-backend timings and
speedups. Both implementations are imported directly so the comparison
does not depend on which backend the package selected at import time.

Run with: python3 benchmarks/bench_backends.py
"""

import time

import numpy as np

from zonalkit import _pykernels
from zonalkit.special import canonical_indices

try:
    from zonalkit import _ckernels
except ImportError:
    _ckernels = None


def time_call(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def disc_points(count, seed):
    rng = np.random.default_rng(seed)
    r = np.sqrt(rng.uniform(0.0, 1.0, count))
    return r * np.exp(1j * rng.uniform(0.0, 2 * np.pi, count))


def circle_points(count):
    return np.exp(2j * np.pi * np.arange(count) / count)


def workloads():
    rng = np.random.default_rng(7)
    for q, degree, npts in ((2, 16, 20000), (3, 24, 20000), (4, 32, 8000)):
        inds = canonical_indices(q, degree)
        ms = np.array([m for m, _ in inds])
        ns = np.array([n for _, n in inds])
        z = disc_points(npts, seed=q)
        coefs = rng.standard_normal(len(inds)) + 1j * rng.standard_normal(len(inds))
        label = f"basis_rows q={q} deg={degree} ({len(inds)} fns x {npts} pts)"
        yield label, "basis_rows", (q, ms, ns, z)
        label = f"synth_q2   q={q} deg={degree} ({len(inds)} fns x {npts} pts)"
        yield label, "synth_q2", (q, ms, ns, coefs, z)
    ks = np.array(canonical_indices(1, 256))
    coefs = rng.standard_normal(len(ks)) + 1j * rng.standard_normal(len(ks))
    z = circle_points(50000)
    yield f"synth_q1   deg=256 ({len(ks)} fns x 50000 pts)", "synth_q1", (ks, coefs, z)


def main():
    if _ckernels is None:
        print("compiled backend not built; timing the pure backend only")
    rows = []
    for label, name, args in workloads():
        t_py = time_call(getattr(_pykernels, name), *args)
        if _ckernels is not None:
            t_c = time_call(getattr(_ckernels, name), *args)
            a = getattr(_ckernels, name)(*args)
            b = getattr(_pykernels, name)(*args)
            dev = float(np.max(np.abs(a - b)))
            rows.append((label, t_c, t_py, t_py / t_c, dev))
        else:
            rows.append((label, None, t_py, None, 0.0))

    header = f"{'workload':52s} {'compiled':>10s} {'pure':>10s} {'speedup':>8s} {'max dev':>9s}"
    print(header)
    print("-" * len(header))
    for label, t_c, t_py, speedup, dev in rows:
        c = f"{t_c * 1e3:8.2f}ms" if t_c is not None else "       --"
        s = f"{speedup:7.1f}x" if speedup is not None else "      --"
        print(f"{label:52s} {c:>10s} {t_py * 1e3:8.2f}ms {s:>8s} {dev:9.1e}")


if __name__ == "__main__":
    main()
