"""Kernel backend selection.

The hot matrix kernels exist twice: as a compiled extension
(``nmteleport._kernels``) and as a pure-Python module
(``nmteleport._kernels_py``).  The compiled one is preferred when importable;
set ``NMTELEPORT_BACKEND=python`` or ``=compiled`` to force a choice.

``set_backend``/``use_backend`` allow switching at runtime, which the parity
tests and the backend benchmark rely on.
"""

from __future__ import annotations

import contextlib
import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None


def _resolve(name: str):
    name = name.strip().lower()
    if name in ("", "auto"):
        return _compiled if _compiled is not None else _kernels_py
    if name in ("python", "py", "pure"):
        return _kernels_py
    if name in ("compiled", "cython", "c"):
        if _compiled is None:
            raise ImportError(
                "NMTELEPORT_BACKEND=compiled requested, but the "
                "nmteleport._kernels extension is not built"
            )
        return _compiled
    raise ValueError(f"unrecognized backend name: {name!r}")


kernels = _resolve(os.environ.get("NMTELEPORT_BACKEND", "auto"))


def active_backend() -> str:
    """Name of the kernel backend in use ('compiled' or 'python')."""
    return kernels.BACKEND_NAME


def compiled_available() -> bool:
    return _compiled is not None


def set_backend(name: str) -> None:
    global kernels
    kernels = _resolve(name)


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily switch the kernel backend (for tests and benchmarks)."""
    previous = kernels.BACKEND_NAME
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)
