# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice scan kernel.

Identical semantics to :mod:`equimirror.geometry.scan_py.count_levels`,
restricted to inputs whose coefficients fit in 64-bit integers (the
caller guards this).  Rows for level ``j`` are flattened into a single
int64 array laid out as ``c_0 .. c_j rhs`` per row.
"""

from libc.stdlib cimport free, malloc


cdef struct Level:
    long long *data      # n_rows * (j + 2) entries
    Py_ssize_t n_rows


cdef long long _floor_div(long long a, long long b) noexcept nogil:
    # C division truncates toward zero; emulate Python's floor division.
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef long long _count(Level *levels, Py_ssize_t k, Py_ssize_t j, long long *x) noexcept nogil:
    cdef Py_ssize_t r, i, stride
    cdef long long s, c, b, lo, hi, total, val
    cdef bint have_lo = False, have_hi = False
    cdef long long *row
    stride = j + 2
    lo = 0
    hi = 0
    for r in range(levels[j].n_rows):
        row = levels[j].data + r * stride
        s = row[j + 1]
        for i in range(j):
            s -= row[i] * x[i]
        c = row[j]
        if c > 0:
            b = _floor_div(s, c)
            if (not have_hi) or b < hi:
                hi = b
                have_hi = True
        else:
            b = -_floor_div(s, -c)
            if (not have_lo) or b > lo:
                lo = b
                have_lo = True
    if not (have_lo and have_hi):
        return -1  # unbounded; caller raises
    if hi < lo:
        return 0
    if j == k - 1:
        return hi - lo + 1
    total = 0
    val = lo
    while val <= hi:
        x[j] = val
        b = _count(levels, k, j + 1, x)
        if b < 0:
            return -1
        total += b
        val += 1
    return total


def count_levels(list levels):
    """Count integer solutions of a prepared level system (see scan_py)."""
    cdef Py_ssize_t k = len(levels)
    if k == 0:
        return 1
    cdef Level *clevels = <Level *> malloc(k * sizeof(Level))
    cdef long long *x = <long long *> malloc(k * sizeof(long long))
    if clevels == NULL or x == NULL:
        free(clevels)
        free(x)
        raise MemoryError()
    cdef Py_ssize_t j, r, i, stride
    cdef long long result
    for j in range(k):
        clevels[j].data = NULL
    try:
        for j in range(k):
            rows = levels[j]
            stride = j + 2
            clevels[j].n_rows = len(rows)
            clevels[j].data = <long long *> malloc(len(rows) * stride * sizeof(long long))
            if clevels[j].data == NULL:
                raise MemoryError()
            for r in range(len(rows)):
                row = rows[r]
                for i in range(stride):
                    clevels[j].data[r * stride + i] = row[i]
        result = _count(clevels, k, 0, x)
    finally:
        for j in range(k):
            if clevels[j].data != NULL:
                free(clevels[j].data)
        free(clevels)
        free(x)
    if result < 0:
        raise ValueError("unbounded direction in lattice scan")
    return result
