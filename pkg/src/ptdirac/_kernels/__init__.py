"""Kernel backend selection.

The compiled extension (`_fast`, Cython) is used when it importable; the
numpy implementation (`reference`) is the fallback. Setting the environment
variable PTDIRAC_PURE_PYTHON=1 forces the fallback. Both backends implement
identical signatures and are cross-checked in the test suite.
"""

from __future__ import annotations

import os

import numpy as np

from . import reference

SCALE_THRESHOLD = reference.SCALE_THRESHOLD

if os.environ.get("PTDIRAC_PURE_PYTHON"):
    _impl = reference
    BACKEND = "reference"
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = reference
        BACKEND = "reference"


def matching_entries(energies, v0, v1, b, q, m):
    """Dispatch to the active backend; coerces input to contiguous float64."""
    e = np.ascontiguousarray(energies, dtype=np.float64)
    return _impl.matching_entries(e, float(v0), float(v1), float(b), float(q), float(m))


def bound_state_values(energies, v0, v1, b, q, m):
    e = np.ascontiguousarray(energies, dtype=np.float64)
    return _impl.bound_state_values(e, float(v0), float(v1), float(b), float(q), float(m))
