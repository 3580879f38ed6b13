"""Backend selection for the discrete-profile kernels.

The compiled extension is used when it imports; ``SASAKI_ANNULUS_PURE=1``
forces the numpy implementation.
"""

import os

from . import _kernels_py

BACKENDS = {"python": _kernels_py}

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None
else:
    BACKENDS["compiled"] = _compiled

if _compiled is not None and os.environ.get("SASAKI_ANNULUS_PURE", "") not in ("1", "true", "yes"):
    backend = _compiled
    BACKEND = "compiled"
else:
    backend = _kernels_py
    BACKEND = "python"

CONVERGED = _kernels_py.CONVERGED
MAX_ITERS = _kernels_py.MAX_ITERS
STALLED = _kernels_py.STALLED

discrete_area = backend.discrete_area
discrete_gradient = backend.discrete_gradient
first_integral = backend.first_integral
area_change = backend.area_change
descend = backend.descend
