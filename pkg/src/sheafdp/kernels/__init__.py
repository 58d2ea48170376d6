"""Hot loops behind the lattice and alignment code.

The numba backend is used when numba imports and ``SHEAFDP_DISABLE_NUMBA``
is unset (or ``0``); otherwise the vectorised numpy backend is selected.
Both backends stay importable as ``numpy_backend`` / ``numba_backend`` for
cross-checking and benchmarking.
"""

import os

from . import _numpy as numpy_backend

try:
    from . import _numba as numba_backend
except ImportError:  # pragma: no cover - exercised only without numba
    numba_backend = None

_disabled = os.environ.get("SHEAFDP_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

USE_NUMBA = numba_backend is not None and not _disabled
backend = numba_backend if USE_NUMBA else numpy_backend

BACKENDS = {"numpy": numpy_backend}
if numba_backend is not None:
    BACKENDS["numba"] = numba_backend

union_closure = backend.union_closure
minimal_supersets = backend.minimal_supersets
subset_matrix = backend.subset_matrix
nw_fill = backend.nw_fill
nw_fill_scored = backend.nw_fill_scored

__all__ = [
    "BACKENDS",
    "USE_NUMBA",
    "backend",
    "minimal_supersets",
    "numba_backend",
    "numpy_backend",
    "nw_fill",
    "nw_fill_scored",
    "subset_matrix",
    "union_closure",
]
