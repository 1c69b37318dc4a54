"""Rank kernels: the compiled extension when present, else pure Python.

Set RSSS_PURE_PYTHON=1 to force the fallback.
"""
import os

from . import _pykernels

_compiled = None
if os.environ.get("RSSS_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def _impl(backend):
    if backend is None:
        backend = BACKEND
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    return _pykernels


def rank_mod_p(indptr, indices, data, ncols, p, backend=None):
    if len(indptr) <= 1 or ncols == 0:
        return 0
    return _impl(backend).rank_mod_p(indptr, indices, data, ncols, p)


def rank_rational(indptr, indices, data, ncols, backend=None):
    if len(indptr) <= 1 or ncols == 0:
        return 0
    impl = _impl(backend)
    if impl is _compiled:
        try:
            return impl.rank_rational(indptr, indices, data, ncols)
        except OverflowError:
            pass
    return _pykernels.rank_rational(indptr, indices, data, ncols)
