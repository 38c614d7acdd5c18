"""Kernel backend selection.

The compiled Cython extension is preferred; the numpy fallback is used when
the extension was not built or when BEURLING_KERNEL=python is set.  Both
backends implement identical contracts (see ``fallback``), so everything
above this layer is backend-agnostic.
"""

import os

from . import fallback

BACKEND = "python"
_impl = fallback

if os.environ.get("BEURLING_KERNEL", "").lower() not in ("python", "fallback"):
    try:
        from . import _dirichlet as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        pass

power_sum = _impl.power_sum
power_sum_logw = _impl.power_sum_logw
power_sum_t_grid = _impl.power_sum_t_grid
power_sum_sigma_grid = _impl.power_sum_sigma_grid
