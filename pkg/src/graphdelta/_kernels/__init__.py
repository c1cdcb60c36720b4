"""Hot kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it was built; set ``GRAPHDELTA_PURE=1``
to force the pure-Python implementation.  :func:`load` returns either module
so tests and benchmarks can exercise both explicitly.
"""

import importlib
import os

from . import _pykernel

BACKENDS = ("cython", "python")


def _try_compiled():
    try:
        return importlib.import_module("graphdelta._kernels._ckernel")
    except ImportError:
        return None


_compiled = None if os.environ.get("GRAPHDELTA_PURE") else _try_compiled()

backend = _compiled if _compiled is not None else _pykernel
BACKEND = "cython" if _compiled is not None else "python"


def load(name):
    """Return the kernel module for ``name`` ('cython' or 'python')."""
    if name == "python":
        return _pykernel
    if name == "cython":
        mod = _try_compiled()
        if mod is None:
            raise ImportError("compiled kernel is not built")
        return mod
    raise ValueError(f"unknown backend {name!r}")
