"""Kernel backend selection.

The compiled Cython extension is preferred when it imported cleanly;
otherwise the pure-numpy reference implementations are used.  Set
``QUDITPULSE_PURE_PYTHON=1`` to force the fallback (used by the
benchmark and the backend-parity tests).
"""

import importlib
import os

from . import reference

OPTIMAL = reference.OPTIMAL
UNBOUNDED = reference.UNBOUNDED
ITERATION_LIMIT = reference.ITERATION_LIMIT

_impl = None
if os.environ.get("QUDITPULSE_PURE_PYTHON", "") != "1":
    try:
        _impl = importlib.import_module(__name__ + "._native")
    except ImportError:
        _impl = None

if _impl is not None:
    BACKEND = "native"
    adjoint_rep_batch = _impl.adjoint_rep_batch
    simplex_iterate = _impl.simplex_iterate
else:
    BACKEND = "reference"
    adjoint_rep_batch = reference.adjoint_rep_batch
    simplex_iterate = reference.simplex_iterate

__all__ = ["BACKEND", "adjoint_rep_batch", "simplex_iterate", "reference",
           "OPTIMAL", "UNBOUNDED", "ITERATION_LIMIT"]
