"""Exception types shared across the package.

The CLI maps these onto exit codes: ValidationError -> 1 (bad input files,
unknown families, out-of-range parameters), the mathematical precondition
errors -> 2, tolerance failures are handled without exceptions -> 3.
"""

from __future__ import annotations


class ValidationError(ValueError):
    """Malformed input: bad JSON, unknown family, parameter out of range."""


class DomainError(ValueError):
    """Argument outside the mathematical domain (off-disc, off-sphere point)."""


class ResolutionError(ValueError):
    """Quadrature rule too coarse to resolve the requested degree."""


class DimensionMismatchError(ValueError):
    """Operands carry different dimensions q."""


class HermitianityError(ValueError):
    """A kernel or matrix required to be hermitian is not, beyond tolerance."""


class ConvergenceError(RuntimeError):
    """An iteration failed to converge within its bounded budget."""


class NegativeCoefficientError(ValueError):
    """A coefficient required to be nonnegative is below -tol.

    Signals that the kernel is not positive definite in the L2 sense, so no
    convolution square root exists.
    """

    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"negative coefficient at index {index}: {value}")


class NegativeEigenvalueError(ValueError):
    """An operator eigenvalue is below -clamp_tol; the input is not PSD."""

    def __init__(self, position, value):
        self.position = position
        self.value = value
        super().__init__(f"negative eigenvalue #{position}: {value}")
