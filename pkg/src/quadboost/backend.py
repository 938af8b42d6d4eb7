"""Kernel backend selection.

The compiled Cython kernels are used when the extension built; otherwise the
numpy fallback takes over. QUADBOOST_BACKEND=python|compiled forces a choice
at import time (compiled errors out if the extension is missing). Both
backends implement the same interface, so pools and engines can also be
pinned to a backend explicitly, which is how the benchmark compares them.
"""

import os

from . import _kernels_py

try:
    from . import _kernels
except ImportError:
    _kernels = None

_BACKENDS = {"python": _kernels_py}
if _kernels is not None:
    _BACKENDS["compiled"] = _kernels

_forced = os.environ.get("QUADBOOST_BACKEND", "").strip().lower()
if _forced and _forced not in ("python", "compiled"):
    raise ImportError(f"QUADBOOST_BACKEND must be 'python' or 'compiled', got {_forced!r}")
if _forced == "compiled" and _kernels is None:
    raise ImportError("QUADBOOST_BACKEND=compiled but the quadboost._kernels extension is not built")

if _forced:
    ACTIVE = _forced
else:
    ACTIVE = "compiled" if _kernels is not None else "python"


def get(name=None):
    """Return the kernel module for `name` (default: the active backend)."""
    if name is None:
        name = ACTIVE
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; built: {sorted(_BACKENDS)}") from None


def available():
    return sorted(_BACKENDS)
