"""Kernel backend selection.

Imports the compiled gate kernels when the extension was built, otherwise the
numpy fallback. ``QFORGE_PURE_PYTHON=1`` forces the fallback (used by the
benchmark and the backend-equivalence tests).
"""
import os

if os.environ.get("QFORGE_PURE_PYTHON") == "1":
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

apply_2x2 = _impl.apply_2x2
apply_diag1 = _impl.apply_diag1
apply_cnot = _impl.apply_cnot
apply_parity_phase = _impl.apply_parity_phase
apply_masked_phase = _impl.apply_masked_phase
apply_rx_all = _impl.apply_rx_all
