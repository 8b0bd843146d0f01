"""Pure numpy implementations of the modular linear-algebra kernels.

These are the import-time fallback for the compiled extension in
``_kernels.pyx``; both implement the same contracts and the same pivoting
rules, so results are bit-identical across backends.

All kernels work modulo a prime p < 2**31 so that products of two reduced
values fit comfortably in int64.
"""

from __future__ import annotations

import numpy as np


def charpoly_mod(a, p: int) -> np.ndarray:
    """Characteristic polynomial det(lambda*I - A) mod p.

    ``a`` is a square integer matrix (entries may be arbitrary; they are
    reduced mod p).  Returns the n+1 coefficients in descending order,
    leading coefficient 1.
    """
    a = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 0:
        return np.ones(1, dtype=np.int64)

    # Reduce to upper Hessenberg form by similarity transforms.
    for k in range(n - 2):
        col = a[k + 1 :, k]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        m = k + 1 + int(nz[0])
        if m != k + 1:
            a[[k + 1, m], :] = a[[m, k + 1], :]
            a[:, [k + 1, m]] = a[:, [m, k + 1]]
        inv = pow(int(a[k + 1, k]), p - 2, p)
        mult = (a[k + 2 :, k] * inv) % p
        if np.any(mult):
            a[k + 2 :, k:] = (a[k + 2 :, k:] - mult[:, None] * a[k + 1, k:]) % p
            a[:, k + 1] = (a[:, k + 1] + ((a[:, k + 2 :] * mult) % p).sum(axis=1)) % p

    # Recurrence for the characteristic polynomials of the leading principal
    # minors of a Hessenberg matrix; polys[k, j] = coeff of lambda^j.
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    beta = a.diagonal(-1).copy() if n > 1 else np.zeros(0, dtype=np.int64)
    for k in range(1, n + 1):
        h = int(a[k - 1, k - 1])
        prev = polys[k - 1]
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1 : k + 1] = prev[0:k]
        cur[:k] = (cur[:k] - h * prev[:k]) % p
        bp = 1
        idx, coef = [], []
        for m in range(1, k):
            bp = (bp * int(beta[k - 1 - m])) % p
            if bp == 0:
                break
            c = (int(a[k - 1 - m, k - 1]) * bp) % p
            if c:
                idx.append(k - 1 - m)
                coef.append(c)
        if idx:
            tails = (np.array(coef, dtype=np.int64)[:, None] * polys[idx, :k]) % p
            cur[:k] = (cur[:k] - tails.sum(axis=0)) % p
        polys[k] = cur
    return polys[n][::-1].copy()


def nullspace_mod(a, p: int) -> np.ndarray:
    """Basis of the right kernel of A mod p, via reduced row echelon form.

    Returns an array of shape (dim, ncols); rows are kernel vectors with the
    free coordinate set to 1, ordered by free column index.
    """
    a = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    nrows, ncols = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        sub = a[row:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        r = row + int(nz[0])
        if r != row:
            a[[row, r], :] = a[[r, row], :]
        inv = pow(int(a[row, col]), p - 2, p)
        a[row, col:] = (a[row, col:] * inv) % p
        factors = a[:, col].copy()
        factors[row] = 0
        mask = factors != 0
        if mask.any():
            a[mask, col:] = (a[mask, col:] - factors[mask, None] * a[row, col:]) % p
        pivots.append(col)
        row += 1
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for i, pc in enumerate(pivots):
            basis[b, pc] = (-int(a[i, f])) % p
    return basis
