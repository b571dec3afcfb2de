"""Matrix permanents by Ryser's formula.

The compiled kernel (``_ryser``) is used when it was built; otherwise the
pure-Python implementation is selected at import.  ``BACKEND`` records the
choice.
"""
from __future__ import annotations

from itertools import permutations

import numpy as np

from . import _ryser_py
from .errors import StructuralError

try:
    from ._ryser import ryser as _ryser_compiled
except ImportError:  # extension not built
    _ryser_compiled = None

BACKEND = "cython" if _ryser_compiled is not None else "python"
AVAILABLE_BACKENDS = ("cython", "python") if _ryser_compiled is not None else ("python",)


def _as_square(A) -> np.ndarray:
    a = np.ascontiguousarray(A, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise StructuralError(f"permanent needs a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise StructuralError("permanent needs n >= 1")
    return a


def permanent(A, backend: str | None = None) -> complex:
    """Permanent of a square matrix in O(2^n n) time.

    Parameters
    ----------
    A : array_like
        Square ``n x n`` matrix, real or complex.
    backend : {"cython", "python"}, optional
        Force an implementation.  Defaults to :data:`BACKEND`.
    """
    a = _as_square(A)
    backend = backend or BACKEND
    if backend == "cython":
        if _ryser_compiled is None:
            raise RuntimeError("compiled permanent kernel is not available")
        return complex(_ryser_compiled(a))
    if backend == "python":
        return complex(_ryser_py.ryser(a.tolist()))
    raise ValueError(f"unknown backend {backend!r}")


def permanent_bruteforce(A) -> complex:
    """Reference permanent by summing over all n! permutations."""
    a = _as_square(A)
    n = a.shape[0]
    rows = range(n)
    return complex(sum(np.prod(a[rows, list(p)]) for p in permutations(range(n))))
