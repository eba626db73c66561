"""Select the folding/expansion kernel at import time.

The compiled extension is used when it was built; ``SCHUTZ_PURE_PYTHON=1``
forces the pure-Python fallback. Both expose the same ``Workspace``.
"""

from __future__ import annotations

import os

from . import _pykernel

NO_VERTEX = _pykernel.NO_VERTEX

if os.environ.get("SCHUTZ_PURE_PYTHON", "") not in ("", "0"):
    Workspace = _pykernel.Workspace
    BACKEND = "python"
else:
    try:
        from ._ckernel import Workspace  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        Workspace = _pykernel.Workspace
        BACKEND = "python"

PyWorkspace = _pykernel.Workspace

__all__ = ["BACKEND", "NO_VERTEX", "PyWorkspace", "Workspace"]
