"""Backend selection for the letter kernels.

The compiled module is used when it was built; ``FREEGOG_PURE_PYTHON=1``
forces the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("FREEGOG_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

free_reduce = _impl.free_reduce
multiply = _impl.multiply
inverse = _impl.inverse
power = _impl.power
substitute = _impl.substitute
peel_count = _impl.peel_count

__all__ = ["BACKEND", "free_reduce", "multiply", "inverse", "power",
           "substitute", "peel_count"]
