"""Select the finite-model kernel backend.

The compiled ``_kernels`` extension is used when it imports; otherwise, or
when ``EQTOP_PURE_PYTHON=1`` is set, the pure-Python ``_pykernels`` module.
"""
import os

from . import _pykernels

python = _pykernels

compiled = None
if os.environ.get("EQTOP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

active = compiled or python
BACKEND = "cython" if compiled is not None else "python"


def backends():
    """Available backends by name, compiled first."""
    out = {}
    if compiled is not None:
        out["cython"] = compiled
    out["python"] = python
    return out
