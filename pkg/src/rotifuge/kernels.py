"""Kernel backend selection.

Imports the compiled extension when it is available and not disabled via
the ROTIFUGE_PURE environment variable; otherwise falls back to the NumPy
implementation.  Both expose the same functions with identical semantics;
``backend_name`` records which one is active.
"""

import os

if os.environ.get("ROTIFUGE_PURE"):
    from . import _kernels_np as _impl

    backend_name = "numpy"
else:
    try:
        from . import _kernels as _impl

        backend_name = "compiled"
    except ImportError:
        from . import _kernels_np as _impl

        backend_name = "numpy"

stretched_state_values = _impl.stretched_state_values
