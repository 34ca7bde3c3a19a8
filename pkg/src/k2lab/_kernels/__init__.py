"""Hot kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it imports; set ``K2LAB_PURE=1`` to force
the fallback.  ``BACKEND`` names the active implementation.
"""
import os

from k2lab._kernels import machine_py

if os.environ.get("K2LAB_PURE"):
    _impl = machine_py
    BACKEND = "python"
else:
    try:
        from k2lab._kernels import _machine as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = machine_py
        BACKEND = "python"

apply_values = _impl.apply_values
OK, STUCK, OUT_OF_FUEL = machine_py.OK, machine_py.STUCK, machine_py.OUT_OF_FUEL

__all__ = ["apply_values", "BACKEND", "OK", "STUCK", "OUT_OF_FUEL", "machine_py"]
