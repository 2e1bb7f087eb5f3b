"""Select the search kernel: compiled extension when importable, pure Python otherwise.

``TEAMOPT_BACKEND=python`` forces the fallback.
"""

import os

from . import _kernel_py

try:
    from . import _kernel as _kernel_c
except ImportError:  # extension not built
    _kernel_c = None

if _kernel_c is not None and os.environ.get("TEAMOPT_BACKEND", "").lower() != "python":
    BACKEND = "cython"
else:
    BACKEND = "python"


def available() -> list[str]:
    return ["cython", "python"] if _kernel_c is not None else ["python"]


def get_kernel(name=None):
    name = name or BACKEND
    if name == "python":
        return _kernel_py
    if name == "cython":
        if _kernel_c is None:
            raise ImportError("compiled kernel teamopt.solver._kernel is not built")
        return _kernel_c
    raise ValueError(f"unknown backend {name!r}")
