"""Array kernel backend, chosen once at import.

The compiled Cython module is used when it was built; otherwise the numpy
implementation.  Setting ``CHESSBOARD_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("CHESSBOARD_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:
        compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "compiled" if compiled_backend is not None else "python"

j0_sq = _impl.j0_sq
j1oz_sq = _impl.j1oz_sq
bessel_pair_sq = _impl.bessel_pair_sq
