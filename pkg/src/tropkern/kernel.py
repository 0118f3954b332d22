"""Selects the computational kernel at import time.

The compiled extension tropkern._speedups is preferred when present; the
pure-Python twin tropkern._kernel_py is always available.  Setting the
environment variable TROPKERN_PURE to a non-empty value forces the pure
backend, which the test suite uses to compare the two.
"""

import os

if os.environ.get("TROPKERN_PURE"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

mat_hnf = _impl.mat_hnf
mat_rank = _impl.mat_rank
mat_snf = _impl.mat_snf
mat_kernel = _impl.mat_kernel
det_bareiss = _impl.det_bareiss
vec_gcd_reduce = _impl.vec_gcd_reduce
cone_rays = _impl.cone_rays


def backend_name():
    return _impl.BACKEND
