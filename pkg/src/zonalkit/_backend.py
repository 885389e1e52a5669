"""Backend selection for the evaluation kernels.

Imports the compiled extension when available, otherwise the numpy
fallback. Set ZONALKIT_PURE=1 to force the fallback (useful for
benchmarking and debugging); both backends produce the same results,
so the choice affects performance only.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("ZONALKIT_PURE", "").strip() not in ("", "0"):
    impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as impl

        BACKEND = "compiled"
    except ImportError:
        impl = _pykernels
        BACKEND = "python"

basis_rows = impl.basis_rows
synth_q2 = impl.synth_q2
synth_q1 = impl.synth_q1


def backend_name() -> str:
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return BACKEND
