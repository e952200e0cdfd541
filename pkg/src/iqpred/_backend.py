"""Kernel backend selection: compiled extension if available, else pure Python.

Set ``IQPRED_FORCE_PYTHON=1`` in the environment to skip the compiled
extension (useful for benchmarking and debugging).  Frontend modules call
through this module's attributes so tests can swap backends at runtime.
"""

import os

if os.environ.get("IQPRED_FORCE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

HAVE_COMPILED = _impl.COMPILED

rap_encode = _impl.rap_encode
rap_decode = _impl.rap_decode
tc_encode_adaptive = _impl.tc_encode_adaptive
tc_decode_adaptive = _impl.tc_decode_adaptive
tc_decode_const = _impl.tc_decode_const
fix_residual = _impl.fix_residual


def backend_name() -> str:
    return "compiled" if HAVE_COMPILED else "python"
