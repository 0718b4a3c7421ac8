"""Kernel selection: compiled extension when available, pure Python otherwise.

Set LCPINFER_PURE=1 to force the pure kernels (used by the benchmark and the
kernel agreement tests).
"""
import os

from . import _kernels_py

if os.environ.get("LCPINFER_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

KERNEL_BACKEND = "compiled" if _impl is not _kernels_py else "pure"

standard_permutation = _impl.standard_permutation
lcp_from_bwt = _impl.lcp_from_bwt
