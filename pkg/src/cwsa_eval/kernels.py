"""Backend selection for the accumulation kernels.

Prefers the compiled extension; falls back to NumPy when it is missing.
Set ``CWSA_EVAL_KERNEL=python`` (or ``c``) to force a backend, e.g. for
benchmarking or debugging.
"""

from __future__ import annotations

import os

_forced = os.environ.get("CWSA_EVAL_KERNEL", "").strip().lower()

if _forced == "python":
    from . import _kernels_py as _impl

    BACKEND = "python"
elif _forced == "c":
    from . import _kernels_c as _impl  # type: ignore[no-redef]

    BACKEND = "c"
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

        BACKEND = "python"

point_accumulate = _impl.point_accumulate
credit_accumulate = _impl.credit_accumulate
