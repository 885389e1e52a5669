"""File-driven command line front end.

Subcommands compose through JSON files: `expand` turns a kernel spec into
a coefficient file, `root` produces the convolution square root plus its
report, `convolve` multiplies tables spectrally, `verify` checks a root
against its kernel, `pd-check` samples a Gram matrix, `hs-compare`
cross-validates the operator square root against the spectral one, and
`audit` runs the orthogonality and Funk-Hecke identity suite.

Exit codes: 0 success, 1 validation error (malformed files, bad flags,
dimension mismatches), 2 mathematical precondition violated (negative
coefficient or eigenvalue, hermitianity defect), 3 tolerance exceeded.
Outputs are deterministic: fixed seeds, fixed summation orders, and
round-trip float formatting.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from . import convolution, families, operator, quadrature, roots, special, spectral
from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    DomainError,
    HermitianityError,
    NegativeCoefficientError,
    NegativeEigenvalueError,
    ResolutionError,
    ValidationError,
)

DEFAULT_DEGREE = 32

ORACLE_SEED = 714


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; route through the
    # validation path instead so exit 2 stays reserved for math errors
    def error(self, message):
        raise ValidationError(message)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def _emit(doc, out):
    text = json.dumps(doc, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _load_spec(path):
    return families.spec_from_dict(_load_json(path))


def _load_table_or_spec(path, degree):
    doc = _load_json(path)
    if isinstance(doc, dict) and "entries" in doc:
        return spectral.CoefficientTable.from_json_dict(doc)
    return families.spec_to_table(families.spec_from_dict(doc), degree)


def _default_rule(q, degree, nrad=None, nang=None):
    nang = 2 * degree + 2 if nang is None else nang
    if q == 1:
        return quadrature.circle_rule(nang)
    nrad = degree + 1 if nrad is None else nrad
    return quadrature.disc_rule(q, nrad, nang)


def _sphere_rule(q, degree, nrad=None, nang=None):
    nang = 2 * degree + 2 if nang is None else nang
    if q == 1:
        return quadrature.circle_rule(nang)
    if q == 2:
        nrad = degree + 1 if nrad is None else nrad
        return quadrature.sphere3_rule(nrad, nang)
    return quadrature.sphere_mc_sample(q, 8192, ORACLE_SEED)


def _cmd_expand(args):
    spec = _load_spec(args.spec)
    kernel = families.spec_to_kernel(spec, args.degree)
    rule = _default_rule(spec.q, args.degree, args.nrad, args.nang)
    table = spectral.forward_transform(kernel, args.degree, rule)
    _emit(table.to_json_dict(), args.out)
    return 0


def _cmd_convolve(args):
    a = spectral.CoefficientTable.from_json_dict(_load_json(args.table_a))
    b = spectral.CoefficientTable.from_json_dict(_load_json(args.table_b))
    c = convolution.convolve_spectral(a, b)
    doc = c.to_json_dict()
    if args.oracle:
        rule = _sphere_rule(a.q, max(a.degree, b.degree))
        ka = spectral.ZonalKernel.from_table(a)
        kb = spectral.ZonalKernel.from_table(b)
        points = quadrature.sphere_mc_sample(a.q, 10, ORACLE_SEED).nodes
        worst = 0.0
        for i in range(5):
            x, y = points[2 * i], points[2 * i + 1]
            direct = convolution.convolve_direct(ka, kb, x, y, rule)
            w = spectral.clamp_inner(spectral.inner(a.q, x, y))
            worst = max(worst, abs(direct - spectral.synthesize(c, w)))
        doc["oracle_residual"] = worst
    _emit(doc, args.out)
    return 0


def _cmd_root(args):
    table = _load_table_or_spec(args.kernel, args.degree)
    report = roots.existence_diagnostics(table)
    try:
        root = roots.convolution_root(table)
    except NegativeCoefficientError as exc:
        if report.status != "negative_coefficient":
            report = replace(
                report, status="negative_coefficient", offending_index=exc.index
            )
        _emit({"report": report.to_json_dict(), "root": None}, args.out)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = replace(report, l2_residual=roots.verify_root(root, table))
    _emit({"report": report.to_json_dict(), "root": root.to_json_dict()}, args.out)
    if args.out_root is not None:
        spectral.save_table(root, args.out_root)
    return 0


def _cmd_verify(args):
    root = spectral.CoefficientTable.from_json_dict(_load_json(args.root))
    kernel = spectral.CoefficientTable.from_json_dict(_load_json(args.kernel))
    residual = roots.verify_root(root, kernel)
    ok = residual <= args.tol
    _emit(
        {
            "l2_residual": residual,
            "tolerance": args.tol,
            "status": "ok" if ok else "tolerance_exceeded",
        },
        args.out,
    )
    return 0 if ok else 3


def _cmd_pd_check(args):
    spec = _load_spec(args.spec)
    kernel = families.spec_to_kernel(spec, args.degree)
    min_eig = roots.pd_gram_check(kernel, args.points, args.seed)
    ok = min_eig >= -args.tol
    _emit(
        {
            "min_eigenvalue": min_eig,
            "points": args.points,
            "seed": args.seed,
            "tolerance": args.tol,
            "status": "ok" if ok else "tolerance_exceeded",
        },
        args.out,
    )
    return 0 if ok else 3


def _cmd_hs_compare(args):
    spec = _load_spec(args.spec)
    kernel = families.spec_to_kernel(spec, args.degree)
    table = families.spec_to_table(spec, args.degree)
    rule = _sphere_rule(spec.q, args.degree, args.nrad, args.nang)
    op = operator.discretize_operator(kernel, rule)
    eig = operator.operator_eig(op)
    sqrt_kernel = operator.operator_sqrt_kernel(eig, op)
    root = roots.convolution_root(table)
    deviation = operator.compare_roots(sqrt_kernel, root)
    if args.csv is not None:
        operator.eigenvalues_to_csv(eig, args.csv)
    _emit(
        {
            "deviation": deviation,
            "nodes": len(op),
            "top_eigenvalue": float(eig.eigenvalues[0]) if len(eig) else 0.0,
            "eigenvalue_csv": args.csv,
        },
        args.out,
    )
    return 0


def _cmd_audit(args):
    q = args.q
    degree = args.degree
    report = {"q": q, "degree": degree, "tolerance": args.tol}
    rule = _default_rule(q, degree)
    inds, rows = special.disc_poly_all(q, degree, rule.nodes) if q >= 2 else (None, None)
    if q == 1:
        ks = np.array(special.canonical_indices(1, degree))
        rows = rule.nodes[None, :] ** ks[:, None]
        hs = np.ones(len(ks))
    else:
        hs = np.array([special.norm_const(q, m, n) for m, n in inds])
    gram = (rows * rule.weights[None, :]) @ rows.conj().T
    gram -= np.diag(1.0 / hs)
    ortho_max = float(np.max(np.abs(gram)))
    report["orthogonality_max"] = ortho_max
    fh_max = None
    if q == 2:
        fh_max = 0.0
        sph = quadrature.sphere3_rule(degree + 2, 2 * degree + 4)
        disc = _default_rule(2, degree + 2)
        rng = np.random.default_rng(ORACLE_SEED)
        kernels = [
            spectral.ZonalKernel.from_function(2, lambda z: np.ones_like(z), "const"),
            families.mode_kernel(2, (1, 0)),
            families.mode_kernel(2, (2, 1)),
        ]
        for kern in kernels:
            for mn in ((1, 0), (1, 1), (2, 1)):
                harmonic = convolution.TestHarmonic(*mn)
                v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
                y = v / np.linalg.norm(v)
                res = convolution.funk_hecke_check(kern, harmonic, y, sph, disc)
                fh_max = max(fh_max, res)
    report["funk_hecke_max"] = fh_max
    failed = ortho_max > args.tol or (fh_max is not None and fh_max > args.tol)
    report["status"] = "tolerance_exceeded" if failed else "ok"
    _emit(report, args.out)
    return 3 if failed else 0


def build_parser():
    parser = _Parser(prog="zonalkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="kernel spec -> coefficient file")
    p.add_argument("spec", help="kernel spec JSON path")
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--nrad", type=int, default=None, help="radial points (default degree+1)")
    p.add_argument("--nang", type=int, default=None, help="angular points (default 2*degree+2)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("convolve", help="two coefficient files -> coefficient file")
    p.add_argument("table_a")
    p.add_argument("table_b")
    p.add_argument("--oracle", action="store_true", help="attach direct-quadrature residual")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_convolve)

    p = sub.add_parser("root", help="coefficient file or spec -> root + report")
    p.add_argument("kernel", help="coefficient file or kernel spec JSON")
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--out", default=None)
    p.add_argument("--out-root", default=None, help="also write the root table alone")
    p.set_defaults(func=_cmd_root)

    p = sub.add_parser("verify", help="root + kernel -> residual report")
    p.add_argument("root")
    p.add_argument("kernel")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("pd-check", help="spec -> Gram minimum eigenvalue")
    p.add_argument("spec")
    p.add_argument("--points", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_pd_check)

    p = sub.add_parser("hs-compare", help="spec -> eigenvalues + root deviation")
    p.add_argument("spec")
    p.add_argument("--degree", type=int, default=DEFAULT_DEGREE)
    p.add_argument("--nrad", type=int, default=None)
    p.add_argument("--nang", type=int, default=None)
    p.add_argument("--csv", default=None, help="write eigenvalues CSV here")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_hs_compare)

    p = sub.add_parser("audit", help="orthogonality / Funk-Hecke identity suite")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_audit)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (NegativeCoefficientError, NegativeEigenvalueError, HermitianityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        ValidationError,
        DomainError,
        ResolutionError,
        DimensionMismatchError,
        ConvergenceError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
