"""Built-in kernel families and the kernel-spec schema.

Families double as analytic test fixtures: every family has a closed-form
coefficient table, so downstream identities (convolution, roots, Mercer)
can be checked against exact values instead of transform output.

Schema: {"q": int, "family": str, "params": {...}} or
{"q": int, "coefficients": "path/to/table.json"}. Families:

  poisson    q = 1, rho in (0, 1); K'(e^{it}) = (1-rho^2)/|1-rho e^{it}|^2,
             coefficients a_k = rho^{|k|}
  geometric  q >= 2, rho in (0, 1); a_{m,n} = rho^{m+n}, evaluated as the
             synthesized truncation at the working degree
  mode       single basis element: params {"k"} for q = 1, {"m","n"} else
  zero       the zero kernel
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .spectral import CoefficientTable, ZonalKernel, load_table, synthesize
from .special import canonical_indices, disc_poly

FAMILY_NAMES = ("poisson", "geometric", "mode", "zero")


def poisson_table(rho, degree):
    """Poisson kernel coefficients a_k = rho^{|k|} up to |k| <= degree."""
    entries = {k: complex(rho ** abs(k)) for k in canonical_indices(1, degree)}
    return CoefficientTable(1, degree, entries)


def poisson_kernel(rho):
    """Closed-form Poisson kernel (1 - rho^2) / |1 - rho z|^2 on the circle."""
    def fn(z):
        denom = (1.0 - rho * z) * (1.0 - rho * np.conj(z))
        return (1.0 - rho * rho) / denom

    return ZonalKernel(1, fn, None, f"poisson({rho})")


def geometric_table(q, rho, degree):
    """Geometric family a_{m,n} = rho^{m+n} up to m, n <= degree."""
    entries = {
        (m, n): complex(rho ** (m + n)) for m, n in canonical_indices(q, degree)
    }
    return CoefficientTable(q, degree, entries)


def geometric_kernel(q, rho, degree):
    table = geometric_table(q, rho, degree)
    return ZonalKernel(q, lambda z: synthesize(table, z), table, f"geometric({rho})")


def mode_table(q, index, degree=None):
    """Single basis element Z_k or Z_{m,n} as a one-entry table."""
    if q == 1:
        k = int(index)
        degree = abs(k) if degree is None else degree
        return CoefficientTable(1, degree, {k: 1.0 + 0.0j})
    m, n = index
    degree = max(m, n) if degree is None else degree
    return CoefficientTable(q, degree, {(int(m), int(n)): 1.0 + 0.0j})


def mode_kernel(q, index):
    """Single basis element evaluated in closed form (no truncation)."""
    if q == 1:
        k = int(index)
        return ZonalKernel(1, lambda z: np.asarray(z, complex) ** k, None, f"mode({k})")
    m, n = index

    def fn(z):
        return disc_poly(q, m, n, z)

    return ZonalKernel(q, fn, None, f"mode({m},{n})")


def zero_table(q, degree=0):
    return CoefficientTable(q, degree, {})


def zero_kernel(q):
    return ZonalKernel(q, lambda z: np.zeros_like(np.asarray(z, complex)), zero_table(q), "zero")


@dataclass(frozen=True)
class KernelSpec:
    """Validated kernel description: a family with parameters, or a file."""

    q: int
    family: str | None = None
    params: dict = field(default_factory=dict)
    coefficients: str | None = None

    def __post_init__(self):
        if self.q < 1:
            raise ValidationError(f"q must be a positive integer, got {self.q}")
        if (self.family is None) == (self.coefficients is None):
            raise ValidationError("spec needs exactly one of 'family' or 'coefficients'")
        if self.family is None:
            return
        if self.family not in FAMILY_NAMES:
            raise ValidationError(
                f"unknown family {self.family!r}; expected one of {FAMILY_NAMES}"
            )
        p = self.params
        if self.family == "poisson":
            if self.q != 1:
                raise ValidationError("poisson requires q=1")
            rho = _range_param(p, "rho")
        elif self.family == "geometric":
            if self.q < 2:
                raise ValidationError("geometric requires q>=2")
            rho = _range_param(p, "rho")
        elif self.family == "mode":
            if self.q == 1:
                if "k" not in p:
                    raise ValidationError("mode with q=1 needs params.k")
                int(p["k"])
            else:
                if "m" not in p or "n" not in p:
                    raise ValidationError("mode with q>=2 needs params.m and params.n")
                if int(p["m"]) < 0 or int(p["n"]) < 0:
                    raise ValidationError("mode indices must be nonnegative")


def _range_param(params, name):
    try:
        val = float(params[name])
    except (KeyError, TypeError, ValueError):
        raise ValidationError(f"family parameter {name!r} missing or not a number")
    if not 0.0 < val < 1.0:
        raise ValidationError(f"parameter {name}={val} outside (0, 1)")
    return val


def spec_from_dict(doc):
    """Build a KernelSpec from a decoded JSON object."""
    if not isinstance(doc, dict):
        raise ValidationError("kernel spec must be a JSON object")
    try:
        q = int(doc["q"])
    except (KeyError, TypeError, ValueError):
        raise ValidationError("kernel spec needs an integer field 'q'")
    if "coefficients" in doc and "family" in doc:
        raise ValidationError("spec needs exactly one of 'family' or 'coefficients'")
    if "coefficients" in doc:
        return KernelSpec(q=q, coefficients=str(doc["coefficients"]))
    if "family" not in doc:
        raise ValidationError("kernel spec needs 'family' or 'coefficients'")
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise ValidationError("'params' must be a JSON object")
    return KernelSpec(q=q, family=str(doc["family"]), params=params)


def spec_to_table(spec, degree):
    """Coefficient table of the spec'd kernel at the working degree."""
    if spec.coefficients is not None:
        table = load_table(spec.coefficients)
        if table.q != spec.q:
            raise ValidationError(
                f"coefficient file has q={table.q}, spec says q={spec.q}"
            )
        return table
    p = spec.params
    if spec.family == "poisson":
        return poisson_table(float(p["rho"]), degree)
    if spec.family == "geometric":
        return geometric_table(spec.q, float(p["rho"]), degree)
    if spec.family == "mode":
        index = int(p["k"]) if spec.q == 1 else (int(p["m"]), int(p["n"]))
        try:
            return mode_table(spec.q, index, degree)
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc
    return zero_table(spec.q, degree)


def spec_to_kernel(spec, degree):
    """Evaluable kernel for the spec (closed form where one exists)."""
    if spec.coefficients is not None:
        return ZonalKernel.from_table(spec_to_table(spec, degree))
    p = spec.params
    if spec.family == "poisson":
        return poisson_kernel(float(p["rho"]))
    if spec.family == "geometric":
        return geometric_kernel(spec.q, float(p["rho"]), degree)
    if spec.family == "mode":
        index = int(p["k"]) if spec.q == 1 else (int(p["m"]), int(p["n"]))
        return mode_kernel(spec.q, index)
    return zero_kernel(spec.q)
