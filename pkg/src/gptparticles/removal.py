"""Particle-removal maps between N- and (N-1)-particle distributions."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .basis import TransitionMatrix, enumerate_basis, index_of
from .errors import DomainError


@lru_cache(maxsize=None)
def removal_matrix(N: int, M: int) -> TransitionMatrix:
    """Matrix of removing one of the ``N`` particles uniformly at random.

    A particle leaves mode ``k`` of input state ``s`` with probability
    ``s[k] / N``, so entry ``(i, j)`` is ``s_j[k] / N`` when output state
    ``i`` is input state ``j`` with one particle taken from mode ``k``.

    >>> removal_matrix(2, 2).entries.tolist()
    [[1.0, 0.5, 0.0], [0.0, 0.5, 1.0]]
    """
    if N < 2:
        raise DomainError(f"removal needs N >= 2 (no target for N={N})")
    b_in = enumerate_basis(N, M)
    b_out = enumerate_basis(N - 1, M)
    R = np.zeros((b_out.dim, b_in.dim))
    for j, s in enumerate(b_in):
        for k, n_k in enumerate(s):
            if n_k:
                t = s[:k] + (n_k - 1,) + s[k + 1:]
                R[index_of(t, b_out), j] += n_k / N
    return TransitionMatrix(b_in, b_out, R)


@lru_cache(maxsize=None)
def removal_chain(N: int, K: int, M: int) -> TransitionMatrix:
    """Composite removal ``R^(K+1) ... R^(N-1) R^(N)`` from N down to K particles."""
    if not 1 <= K < N:
        raise DomainError(f"removal chain needs 1 <= K < N, got N={N}, K={K}")
    T = removal_matrix(N, M)
    for n in range(N - 1, K, -1):
        T = removal_matrix(n, M) @ T
    return T
