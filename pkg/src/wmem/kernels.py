"""Backend selection for the Monte Carlo kernels.

The compiled extension is used when it imports; set ``WMEM_PURE_PYTHON=1`` to
force the numpy implementation.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels


def _load() -> tuple[ModuleType, str]:
    if os.environ.get("WMEM_PURE_PYTHON") == "1":
        return _pykernels, "python"
    try:
        from . import _ckernels
    except ImportError:
        return _pykernels, "python"
    return _ckernels, "cython"


backend, BACKEND = _load()

BACKENDS = {"python": _pykernels}
try:
    from . import _ckernels as _c

    BACKENDS["cython"] = _c
except ImportError:
    pass


def get(name: str | None = None) -> ModuleType:
    if name is None:
        return backend
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
