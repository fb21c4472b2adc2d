"""Kernel selection: compiled extension when importable, else pure Python.

Set ``PUCODES_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py as python_kernels

compiled_kernels = None
if not os.environ.get("PUCODES_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_kernels
    except ImportError:  # extension not built
        compiled_kernels = None

BACKEND = "cython" if compiled_kernels is not None else "python"


def get(name=None):
    """Kernel module by name ('cython', 'python'); ``None`` picks the default."""
    if name is None:
        return compiled_kernels or python_kernels
    if name == "python":
        return python_kernels
    if name == "cython":
        if compiled_kernels is None:
            raise RuntimeError("compiled kernels are not available")
        return compiled_kernels
    raise ValueError(f"unknown backend {name!r}")
