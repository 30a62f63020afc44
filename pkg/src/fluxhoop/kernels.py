"""Backend selection for the recurrence kernels.

The compiled extension is preferred when importable; set the environment
variable ``FLUXHOOP_PURE_PY=1`` to force the pure-Python backend (useful
for benchmarking and for debugging the recurrences).
"""

import os

if os.environ.get("FLUXHOOP_PURE_PY"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND

legendre_all = _impl.legendre_all
legendre_grid = _impl.legendre_grid
sph_jy_all = _impl.sph_jy_all
sph_ik_all = _impl.sph_ik_all
sph_jn_grid = _impl.sph_jn_grid
sph_yn_grid = _impl.sph_yn_grid
sph_in_grid = _impl.sph_in_grid
sph_kn_grid = _impl.sph_kn_grid

__all__ = [
    "BACKEND",
    "legendre_all",
    "legendre_grid",
    "sph_jy_all",
    "sph_ik_all",
    "sph_jn_grid",
    "sph_yn_grid",
    "sph_in_grid",
    "sph_kn_grid",
]
