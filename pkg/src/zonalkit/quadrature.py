"""Quadrature rules for the disc measure, circle, 3-sphere, and MC sampling.

Every rule is normalized: disc rules integrate against the probability
measure nu_{q-2} = (q-1)/pi (1-|z|^2)^{q-2} dxdy, and circle/sphere rules
compute surface averages (1/omega_q) * integral. This keeps every spectral
identity free of stray surface-area factors.

Exactness rule of thumb: to resolve degree N use nrad = N+1, nang = 2N+2.
Nonvanishing angular terms force even combined repetition index, making the
radial integrands polynomials of degree <= 2N in r^2, inside the Gauss
exactness 2*nrad - 1; angular frequencies reach 2N < nang.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from math import factorial, lgamma, log, pi

import numpy as np

from .errors import ConvergenceError
from .special import _jacobi_p_last


@dataclass(frozen=True)
class QuadratureRule:
    """Immutable node/weight list.

    kind: 'disc' | 'circle' | 'sphere3' | 'sphere_mc'. nodes are complex
    scalars (disc, circle, and q=1 MC) or complex q-tuples (rows) for sphere
    kinds. grid records the construction sizes; axes carries the (u, wu)
    radial grid for sphere3 rules, which exposes their product structure.
    """

    kind: str
    q: int
    nodes: np.ndarray
    weights: np.ndarray
    grid: tuple = ()
    axes: tuple = field(default=(), repr=False)

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self):
        return len(self.weights)


def _gauss_jacobi(npts, alpha, beta=0.0):
    """Nodes/weights for weight (1-t)^alpha (1+t)^beta on [-1, 1]."""
    n = int(npts)
    if n < 1:
        raise ValueError("npts must be >= 1")
    alpha = float(alpha)
    beta = float(beta)

    def deriv(t):
        return 0.5 * (n + alpha + beta + 1.0) * _jacobi_p_last(n - 1, alpha + 1.0, beta + 1.0, t)

    # Newton from Chebyshev-like initial guesses
    k = np.arange(1, n + 1)
    t = -np.cos(pi * (k - 0.25 + 0.5 * beta) / (n + 0.5 * (alpha + beta + 1.0)))
    converged = False
    for _ in range(50):
        dt = _jacobi_p_last(n, alpha, beta, t) / deriv(t)
        t = t - dt
        if np.max(np.abs(dt)) < 5e-16:
            converged = True
            break
    ok = converged and bool(np.all(np.diff(t) > 0.0) and t[0] > -1.0 and t[-1] < 1.0)
    if not ok:
        # bisection fallback: bracket the n simple roots by sign scanning on a
        # Chebyshev-clustered grid, then polish with a few Newton steps
        size = max(16 * n + 1, 257)
        for _ in range(4):
            grid = -np.cos(np.linspace(0.0, pi, size))
            sign = np.sign(_jacobi_p_last(n, alpha, beta, grid))
            idx = np.flatnonzero(sign[:-1] * sign[1:] < 0)
            if len(idx) == n:
                break
            size *= 4
        else:
            bad = int(np.argmax(np.abs(dt)))
            raise ConvergenceError(
                f"root finder failed for node {bad} of P_{n}^({alpha},{beta})"
            )
        lo, hi = grid[idx].copy(), grid[idx + 1].copy()
        flo = _jacobi_p_last(n, alpha, beta, lo)
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            fmid = _jacobi_p_last(n, alpha, beta, mid)
            left = flo * fmid > 0
            lo = np.where(left, mid, lo)
            flo = np.where(left, fmid, flo)
            hi = np.where(left, hi, mid)
        t = 0.5 * (lo + hi)
        for _ in range(3):
            t = t - _jacobi_p_last(n, alpha, beta, t) / deriv(t)
    # w_i = C / ((1 - t_i^2) P_n'(t_i)^2) with the classical mass constant
    lc = (
        (alpha + beta + 1.0) * log(2.0)
        + lgamma(n + alpha + 1.0)
        + lgamma(n + beta + 1.0)
        - lgamma(n + 1.0)
        - lgamma(n + alpha + beta + 1.0)
    )
    d = deriv(t)
    w = np.exp(lc) / ((1.0 - t * t) * d * d)
    return t, w


def gauss_jacobi_rule(npts, alpha):
    """Gauss rule on [-1, 1] for the weight (1-t)^alpha.

    Nodes are the roots of P_npts^{(alpha,0)} found by Newton iteration with
    a bisection fallback; exact for polynomial degree <= 2*npts - 1.
    Returns (nodes, weights).
    """
    return _gauss_jacobi(npts, alpha, 0.0)


def disc_rule(q, nrad, nang):
    """Product rule for the disc probability measure nu_{q-2}, q >= 2.

    Radial nodes from gauss_jacobi_rule(nrad, q-2) mapped by r = sqrt((t+1)/2),
    angular nodes uniform. Exact for products R_{m,n} conj(R_{k,l}) of degree
    <= N whenever nrad >= N+1 and nang >= 2N+1.
    """
    if q < 2:
        raise ValueError("disc rules require q >= 2")
    t, wt = gauss_jacobi_rule(nrad, q - 2)
    r = np.sqrt((t + 1.0) * 0.5)
    theta = 2.0 * pi * np.arange(nang) / nang
    ang = np.exp(1j * theta)
    nodes = (r[:, None] * ang[None, :]).ravel()
    wrad = (q - 1.0) * wt / (2.0 ** (q - 1) * nang)
    weights = np.repeat(wrad, nang)
    return QuadratureRule("disc", q, nodes, weights, grid=(int(nrad), int(nang)))


def circle_rule(nang):
    """Uniform rule on the unit circle computing averages; q = 1.

    Exact for z^k with |k| < nang; z^{nang} aliases to 1 (all nodes agree),
    and generally z^k integrates as if k were reduced mod nang.
    """
    if nang < 1:
        raise ValueError("nang must be >= 1")
    nodes = np.exp(2j * pi * np.arange(nang) / nang)
    weights = np.full(nang, 1.0 / nang)
    return QuadratureRule("circle", 1, nodes, weights, grid=(int(nang),))


def sphere3_rule(nu, nang):
    """Average-computing rule on the unit sphere of C^2 (the 3-sphere).

    Hopf parametrization x = (sqrt(u) e^{i phi1}, sqrt(1-u) e^{i phi2}) with
    u Gauss-Legendre on [0, 1] (nu nodes) and both angles uniform (nang
    each); the normalized surface measure is du dphi1 dphi2 / (2 pi)^2.
    """
    if nu < 1 or nang < 1:
        raise ValueError("nu and nang must be >= 1")
    t, wt = gauss_jacobi_rule(nu, 0)
    u = (t + 1.0) * 0.5
    wu = wt * 0.5
    phase = np.exp(2j * pi * np.arange(nang) / nang)
    z1 = (np.sqrt(u)[:, None] * phase[None, :])[:, :, None]
    z2 = (np.sqrt(1.0 - u)[:, None] * phase[None, :])[:, None, :]
    nodes = np.empty((nu, nang, nang, 2), dtype=np.complex128)
    nodes[..., 0] = z1
    nodes[..., 1] = z2
    nodes = nodes.reshape(-1, 2)
    weights = np.repeat(wu / (nang * nang), nang * nang)
    return QuadratureRule(
        "sphere3", 2, nodes, weights, grid=(int(nu), int(nang)), axes=(u, wu)
    )


def sphere_mc_sample(q, npts, seed):
    """Uniform Monte Carlo points on the unit sphere of C^q.

    Normalized standard complex Gaussian vectors drawn from a PCG64 generator
    with the given seed; bit-reproducible for a fixed (q, npts, seed).
    """
    if npts < 1:
        raise ValueError("npts must be >= 1")
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    g = rng.standard_normal((int(npts), 2 * int(q)))
    x = g[:, :q] + 1j * g[:, q:]
    x /= np.linalg.norm(x, axis=1)[:, None]
    nodes = x[:, 0] if q == 1 else x
    weights = np.full(int(npts), 1.0 / int(npts))
    return QuadratureRule("sphere_mc", int(q), nodes, weights, grid=(int(npts), int(seed)))


def surface_area(q):
    """Surface area omega_q = 2 pi^q / (q-1)! of the unit sphere of C^q."""
    if q < 1:
        raise ValueError("q must be >= 1")
    return 2.0 * pi**q / factorial(q - 1)


def rule_for_degree(q, degree):
    """Default rule resolving expansions of degree N: nrad=N+1, nang=2N+2."""
    if q == 1:
        return circle_rule(2 * degree + 2)
    return disc_rule(q, degree + 1, 2 * degree + 2)


def rule_to_csv(rule, path):
    """Write nodes and weights as CSV: re/im per coordinate, then weight."""
    nodes = np.atleast_2d(rule.nodes.T).T if rule.nodes.ndim == 1 else rule.nodes
    ncoord = nodes.shape[1]
    if ncoord == 1:
        header = ["re", "im", "weight"]
    else:
        header = []
        for j in range(1, ncoord + 1):
            header.extend([f"re{j}", f"im{j}"])
        header.append("weight")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row, w in zip(nodes, rule.weights):
            cells = []
            for v in row:
                cells.extend([repr(float(v.real)), repr(float(v.imag))])
            cells.append(repr(float(w)))
            writer.writerow(cells)
