# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular linear-algebra kernels.

Same contracts and pivoting rules as the numpy fallback in _kernels_py.py;
see there for documentation.  Primes must be < 2**31 so products of reduced
values fit in int64.
"""

import numpy as np


cdef inline long long _mod(long long x, long long p) nogil:
    cdef long long r = x % p
    if r < 0:
        r += p
    return r


cdef long long _powmod(long long b, long long e, long long p) nogil:
    cdef long long r = 1
    b = _mod(b, p)
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


def charpoly_mod(a_in, long long p):
    a_np = np.ascontiguousarray(np.asarray(a_in, dtype=np.int64) % p)
    cdef Py_ssize_t n = a_np.shape[0]
    if a_np.shape[0] != a_np.shape[1]:
        raise ValueError("matrix must be square")
    if n == 0:
        return np.ones(1, dtype=np.int64)

    cdef long long[:, ::1] a = a_np
    cdef Py_ssize_t i, j, k, m, r
    cdef long long inv, f, acc, t

    # Hessenberg reduction by similarity transforms.
    with nogil:
        for k in range(n - 2):
            r = -1
            for i in range(k + 1, n):
                if a[i, k] != 0:
                    r = i
                    break
            if r < 0:
                continue
            if r != k + 1:
                for j in range(n):
                    t = a[k + 1, j]; a[k + 1, j] = a[r, j]; a[r, j] = t
                for i in range(n):
                    t = a[i, k + 1]; a[i, k + 1] = a[i, r]; a[i, r] = t
            inv = _powmod(a[k + 1, k], p - 2, p)
            for i in range(k + 2, n):
                f = (a[i, k] * inv) % p
                if f == 0:
                    continue
                for j in range(k, n):
                    a[i, j] = _mod(a[i, j] - f * a[k + 1, j], p)
                # similarity: add f times column i back into column k+1
                for j in range(n):
                    a[j, k + 1] = _mod(a[j, k + 1] + f * a[j, i], p)

    # Characteristic polynomials of leading principal Hessenberg minors.
    polys_np = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef long long[:, ::1] polys = polys_np
    polys[0, 0] = 1
    cdef long long h, bp, c
    with nogil:
        for k in range(1, n + 1):
            h = a[k - 1, k - 1]
            for j in range(k, 0, -1):
                polys[k, j] = polys[k - 1, j - 1]
            for j in range(k):
                polys[k, j] = _mod(polys[k, j] - h * polys[k - 1, j], p)
            bp = 1
            for m in range(1, k):
                bp = (bp * a[k - m, k - m - 1]) % p
                if bp == 0:
                    break
                c = (a[k - 1 - m, k - 1] * bp) % p
                if c == 0:
                    continue
                for j in range(k - m):
                    polys[k, j] = _mod(polys[k, j] - c * polys[k - 1 - m, j], p)
    return polys_np[n][::-1].copy()


def nullspace_mod(a_in, long long p):
    a_np = np.ascontiguousarray(np.asarray(a_in, dtype=np.int64) % p)
    cdef Py_ssize_t nrows = a_np.shape[0]
    cdef Py_ssize_t ncols = a_np.shape[1]
    cdef long long[:, ::1] a = a_np
    cdef Py_ssize_t row = 0, col, i, j, r
    cdef long long inv, f, t

    pivots = []
    for col in range(ncols):
        if row == nrows:
            break
        r = -1
        for i in range(row, nrows):
            if a[i, col] != 0:
                r = i
                break
        if r < 0:
            continue
        with nogil:
            if r != row:
                for j in range(ncols):
                    t = a[row, j]; a[row, j] = a[r, j]; a[r, j] = t
            inv = _powmod(a[row, col], p - 2, p)
            for j in range(col, ncols):
                a[row, j] = (a[row, j] * inv) % p
            for i in range(nrows):
                if i == row:
                    continue
                f = a[i, col]
                if f == 0:
                    continue
                for j in range(col, ncols):
                    a[i, j] = _mod(a[i, j] - f * a[row, j], p)
        pivots.append(col)
        row += 1

    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis_np = np.zeros((len(free), ncols), dtype=np.int64)
    cdef long long[:, ::1] basis = basis_np
    cdef Py_ssize_t b, pc
    for b in range(len(free)):
        basis[b, free[b]] = 1
        for i in range(len(pivots)):
            pc = pivots[i]
            basis[b, pc] = _mod(-a[i, free[b]], p)
    return basis_np
