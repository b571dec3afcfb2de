# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled Ryser permanent with Gray-code subset iteration."""

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

from libc.stdlib cimport malloc, free


def ryser(double complex[:, ::1] a):
    """Permanent of the square complex matrix ``a``."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j
    cdef unsigned long long k, gray, limit
    cdef double complex total = 0.0
    cdef double complex prod
    cdef double complex *rowsum

    if a.shape[1] != n:
        raise ValueError("matrix must be square")
    if n == 0:
        return 1.0 + 0.0j
    if n > 62:
        raise ValueError("matrix too large for 64-bit subset enumeration")

    rowsum = <double complex *> malloc(n * sizeof(double complex))
    if rowsum == NULL:
        raise MemoryError()
    limit = 1ULL << n
    with nogil:
        for i in range(n):
            rowsum[i] = 0.0
        for k in range(1, limit):
            j = __builtin_ctzll(k)
            gray = k ^ (k >> 1)
            if (gray >> j) & 1:
                for i in range(n):
                    rowsum[i] = rowsum[i] + a[i, j]
            else:
                for i in range(n):
                    rowsum[i] = rowsum[i] - a[i, j]
            prod = rowsum[0]
            for i in range(1, n):
                prod = prod * rowsum[i]
            # |gray(k)| has the parity of k
            if k & 1:
                total = total - prod
            else:
                total = total + prod
    free(rowsum)
    if n & 1:
        total = -total
    return total
