"""Kernel backend selection.

The per-pixel kernels exist twice: a compiled extension (vevid._kernels)
and a NumPy fallback (vevid._kernels_np) with identical semantics.  The
compiled one is preferred when importable.  Set VEVID_FORCE_NUMPY=1 to
force the fallback, e.g. to compare the two or to rule the extension out
when debugging.
"""

import os

from . import _kernels_np

_ENV_FLAG = "VEVID_FORCE_NUMPY"


def _compiled():
    from . import _kernels

    return _kernels


def load_backend(name: str | None = None):
    """Return the kernel module for ``name`` ("compiled" or "numpy").

    With ``name=None`` the compiled extension is used when available and
    not disabled through the environment flag.
    """
    if name == "numpy":
        return _kernels_np
    if name == "compiled":
        return _compiled()
    if name is not None:
        raise ValueError(f"unknown backend {name!r}")
    forced = os.environ.get(_ENV_FLAG, "")
    if forced and forced != "0":
        return _kernels_np
    try:
        return _compiled()
    except ImportError:
        return _kernels_np


kernels = load_backend()


def active_backend() -> str:
    return kernels.NAME


def available_backends() -> tuple[str, ...]:
    try:
        _compiled()
    except ImportError:
        return ("numpy",)
    return ("compiled", "numpy")
