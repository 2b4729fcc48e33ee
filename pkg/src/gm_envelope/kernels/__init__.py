"""Hot kernels for the sampling oracle.

The compiled extension is used when it was built; otherwise the numpy
implementation is loaded.  Set ``GM_ENVELOPE_PURE_PYTHON=1`` to force the
fallback.  ``BACKEND`` names the active implementation.
"""

from __future__ import annotations

import os

from . import _shell_py as python_backend

compiled_backend = None
if os.environ.get("GM_ENVELOPE_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _shell as compiled_backend
    except ImportError:
        compiled_backend = None

if compiled_backend is not None:
    shell_project = compiled_backend.shell_project
    shell_extrema = compiled_backend.shell_extrema
    BACKEND = "cython"
else:
    shell_project = python_backend.shell_project
    shell_extrema = python_backend.shell_extrema
    BACKEND = "python"

__all__ = ["BACKEND", "shell_project", "shell_extrema", "python_backend", "compiled_backend"]
