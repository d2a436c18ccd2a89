"""Backend selection: compiled kernels when built, pure Python otherwise.

The compiled extension is optional; set ``TRIHAHN_BACKEND=pure`` to force the
fallback, ``TRIHAHN_BACKEND=compiled`` to fail loudly if the extension is
missing.  Selection happens once at import.
"""

from __future__ import annotations

import os


def load(which: str = "auto"):
    if which == "pure":
        from . import _kernels_py

        return _kernels_py
    if which == "compiled":
        from . import _kernels_c  # type: ignore[attr-defined]

        return _kernels_c
    try:
        from . import _kernels_c  # type: ignore[attr-defined]

        return _kernels_c
    except ImportError:
        from . import _kernels_py

        return _kernels_py


backend = load(os.environ.get("TRIHAHN_BACKEND", "auto"))


def backend_name() -> str:
    return backend.name
