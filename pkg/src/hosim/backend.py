"""Kernel backend selection.

The compiled Cython kernel is preferred when importable; the pure-Python
kernel is the fallback.  Both expose the same functions and produce
bit-identical results.  Set ``HOSIM_PURE=1`` to force the Python kernel,
e.g. to compare the two with ``benchmarks/bench_backends.py``.
"""

import os

from . import _pykernel

_backend = _pykernel
if os.environ.get("HOSIM_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel as _ckernel

        _backend = _ckernel
    except ImportError:
        _backend = _pykernel


def get_kernel():
    """Return the active kernel module."""
    return _backend


def set_kernel(module) -> None:
    """Override the active kernel (used by tests and benchmarks)."""
    global _backend
    _backend = module


def backend_name() -> str:
    return _backend.BACKEND_NAME
