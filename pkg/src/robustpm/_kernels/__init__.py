"""Certification kernels: compiled when available, pure Python otherwise.

Set ``ROBUSTPM_KERNEL=python`` to force the fallback.
"""

import os

from . import _pykernel as python_kernel

compiled_kernel = None
if os.environ.get("ROBUSTPM_KERNEL", "").lower() != "python":
    try:
        from . import _ckernel as compiled_kernel
    except ImportError:  # extension not built
        compiled_kernel = None

kernel = compiled_kernel if compiled_kernel is not None else python_kernel
BACKEND = kernel.BACKEND

STABLE, UNSTABLE, INCONCLUSIVE, PENDING = 0, 1, 2, -1
REASONS = {
    0: None,
    1: "negative_pivot",
    2: "zero_pivot",
    3: "zero_leading",
    4: "degree_drop",
    5: "zero_crossing",
    6: "resolution_floor",
    7: "task_budget",
}

__all__ = ["kernel", "python_kernel", "compiled_kernel", "BACKEND", "REASONS"]
