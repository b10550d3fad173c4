"""Selects the lattice-kernel backend at import time.

The compiled ``_kernels`` extension is used when it imports; otherwise, or
when ``BIQUAD_PURE_PYTHON`` is set to a non-empty value, the pure-Python
twin is used.  Both return identical results.
"""

import os

from . import _kernels_py

BACKENDS = {"python": _kernels_py}
try:
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None
else:
    BACKENDS["cython"] = _compiled

if _compiled is not None and not os.environ.get("BIQUAD_PURE_PYTHON"):
    _impl = _compiled
    BACKEND = "cython"
else:
    _impl = _kernels_py
    BACKEND = "python"


def get_backend(name=None):
    return _impl if name is None else BACKENDS[name]


def _dispatch(fname):
    fast = getattr(_impl, fname)
    slow = getattr(_kernels_py, fname)

    def call(*args, **kwargs):
        try:
            return fast(*args, **kwargs)
        except OverflowError:
            return slow(*args, **kwargs)

    call.__name__ = fname
    call.__doc__ = slow.__doc__
    return call


sign = _dispatch("sign")
is_tp = _dispatch("is_tp")
mul = _kernels_py.mul
decompose_witness = _dispatch("decompose_witness")
ellipsoid_points = _dispatch("ellipsoid_points")
offdiag_points = _dispatch("offdiag_points")
tp_points = _dispatch("tp_points")
