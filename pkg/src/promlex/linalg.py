"""Exact rational linear algebra for the chain analyses.

Strategy: all results are exact.  Small objects use Fraction arithmetic
directly; characteristic polynomials and kernel vectors of larger matrices
are computed modulo a deterministic sequence of 31-bit primes and then
either (a) proved equal to a predicted integer polynomial by exceeding an
a-priori coefficient bound, or (b) lifted by CRT + rational reconstruction
and verified exactly against the defining equations.  Either way the output
carries a proof, not a heuristic.

Coefficient bound used throughout: the eigenvalues of an integer matrix A
are bounded in absolute value by the maximal column 1-norm R (Gershgorin on
the transpose), so the coefficient of lambda^(N-k) in det(lambda*I - A) is
at most binom(N, k) * R**k.  For column-stochastic chain matrices scaled by
their common denominator D this gives R = D, which keeps the prime count
low.  A Hadamard-style bound is taken when it is smaller.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ._backend import BACKEND, charpoly_mod, nullspace_mod
from .errors import DimensionMismatch, SolverSingular

__all__ = [
    "BACKEND",
    "RationalMatrix",
    "charpoly_exact",
    "charpoly_equals_product",
    "kernel_vector_exact",
    "rational_reconstruct",
]


# ----------------------------------------------------------------------
# Deterministic 31-bit prime supply

_PRIMES: list[int] = []
_NEXT_CANDIDATE = 2**31 - 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 7, 61):  # deterministic below 3.2e9
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def get_primes(count: int) -> list[int]:
    """First ``count`` primes below 2**31, largest first (deterministic)."""
    global _NEXT_CANDIDATE
    while len(_PRIMES) < count:
        if _is_prime(_NEXT_CANDIDATE):
            _PRIMES.append(_NEXT_CANDIDATE)
        _NEXT_CANDIDATE -= 2 if _NEXT_CANDIDATE % 2 else 1
    return _PRIMES[:count]


def prime_stream():
    i = 0
    while True:
        yield get_primes(i + 1)[i]
        i += 1


# ----------------------------------------------------------------------
# CRT and rational reconstruction


def crt_combine(r1: int, m1: int, r2: int, m2: int) -> int:
    """Residue mod m1*m2 matching r1 mod m1 and r2 mod m2 (coprime moduli)."""
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def rational_reconstruct(u: int, m: int) -> Fraction | None:
    """Unique fraction n/d with n*d' == u (mod m), |n|, d <= sqrt(m/2), if any."""
    u %= m
    bound = math.isqrt(m // 2)
    r0, r1 = m, u
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if r1 < -bound or t1 > bound or math.gcd(r1, t1) != 1 or math.gcd(t1, m) != 1:
        return None
    return Fraction(r1, t1)


# ----------------------------------------------------------------------
# Sparse exact matrices


class RationalMatrix:
    """Square matrix with exact rational entries, stored sparsely."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: dict[tuple[int, int], Fraction]):
        self.n = n
        self.entries = {k: v for k, v in entries.items() if v}

    @classmethod
    def from_rows(cls, rows) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square")
        entries = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                v = Fraction(v)
                if v:
                    entries[(i, j)] = v
        return cls(n, entries)

    @classmethod
    def coerce(cls, m) -> "RationalMatrix":
        return m if isinstance(m, RationalMatrix) else cls.from_rows(m)

    def __getitem__(self, key) -> Fraction:
        return self.entries.get(key, Fraction(0))

    def to_rows(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * self.n for _ in range(self.n)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def col_sums(self) -> list[Fraction]:
        sums = [Fraction(0)] * self.n
        for (_, j), v in self.entries.items():
            sums[j] += v
        return sums

    def matvec(self, v) -> list[Fraction]:
        if len(v) != self.n:
            raise DimensionMismatch(f"matrix is {self.n}x{self.n}, vector has {len(v)}")
        out = [Fraction(0)] * self.n
        for (i, j), a in self.entries.items():
            if v[j]:
                out[i] += a * v[j]
        return out

    def denominator_lcm(self) -> int:
        d = 1
        for v in self.entries.values():
            d = d * v.denominator // math.gcd(d, v.denominator)
        return d

    def scaled_integer(self, scale: int | None = None) -> tuple[int, dict[tuple[int, int], int]]:
        """(D, entries) with D a common denominator and entries exact integers D*M."""
        d = scale if scale is not None else self.denominator_lcm()
        out = {}
        for key, v in self.entries.items():
            num = v.numerator * d
            q, r = divmod(num, v.denominator)
            if r:
                raise ValueError("scale is not a common denominator")
            out[key] = q
        return d, out


def _dense_int64(n: int, entries: dict[tuple[int, int], int]) -> np.ndarray | None:
    """Dense int64 array, or None when entries do not fit."""
    if entries and max(abs(v) for v in entries.values()) >= 2**62:
        return None
    a = np.zeros((n, n), dtype=np.int64)
    for (i, j), v in entries.items():
        a[i, j] = v
    return a


def _reduce_mod(n, entries, dense, p):
    if dense is not None:
        return dense % p
    a = np.zeros((n, n), dtype=np.int64)
    for (i, j), v in entries.items():
        a[i, j] = v % p
    return a


# ----------------------------------------------------------------------
# Coefficient bounds


def _coeff_bound(n: int, entries: dict[tuple[int, int], int], extra_root: int = 0) -> int:
    """max_k of binom(n,k) * R**k bounding both det(lambda*I - A) coefficients
    and those of any product of linear factors with integer roots <= R."""
    col = [0] * n
    for (_, j), v in entries.items():
        col[j] += abs(v)
    r = max(max(col, default=0), abs(extra_root), 1)
    best = 1
    power = 1
    for k in range(1, n + 1):
        power *= r
        b = math.comb(n, k) * power
        if b > best:
            best = b
    return best


# ----------------------------------------------------------------------
# Exact characteristic polynomial


def charpoly_exact(m) -> list[Fraction]:
    """Monic characteristic polynomial det(lambda*I - M), coefficients in
    descending degree order (length n+1), exact rationals.

    Computed modulo enough primes to exceed twice an a-priori coefficient
    bound, then lifted by CRT; this certifies the integer result.
    """
    rm = RationalMatrix.coerce(m)
    n = rm.n
    if n == 0:
        return [Fraction(1)]
    d, ints = rm.scaled_integer()
    dense = _dense_int64(n, ints)
    need = 2 * _coeff_bound(n, ints)

    residues: list[np.ndarray] = []
    primes: list[int] = []
    prod = 1
    stream = prime_stream()
    while prod <= need:
        p = next(stream)
        primes.append(p)
        residues.append(charpoly_mod(_reduce_mod(n, ints, dense, p), p))
        prod *= p

    coeffs = [Fraction(1)]
    for k in range(1, n + 1):
        r, mmod = 0, 1
        for res, p in zip(residues, primes):
            r, mmod = crt_combine(r, mmod, int(res[k]), p), mmod * p
        if r > mmod // 2:
            r -= mmod
        coeffs.append(Fraction(r, d**k))
    return coeffs


def charpoly_equals_product(m, factors) -> bool:
    """Certified test of det(lambda*I - M) == prod (lambda - value)**mult.

    ``factors`` is an iterable of (value, multiplicity) with exact rational
    values.  Works factor-by-prime without materializing the big exact
    polynomial; equality modulo primes whose product exceeds twice the
    coefficient bound proves equality over the integers.
    """
    rm = RationalMatrix.coerce(m)
    n = rm.n
    factors = [(Fraction(v), int(mu)) for v, mu in factors]
    if sum(mu for _, mu in factors) != n:
        return False
    d = rm.denominator_lcm()
    for v, _ in factors:
        d = d * v.denominator // math.gcd(d, v.denominator)
    _, ints = rm.scaled_integer(d)
    dense = _dense_int64(n, ints)
    roots = []
    for v, mu in factors:
        q, rem = divmod(v.numerator * d, v.denominator)
        if rem:
            raise ValueError("scale is not a common denominator of the roots")
        roots.append((q, mu))
    max_root = max((abs(r) for r, _ in roots), default=0)
    need = 2 * _coeff_bound(n, ints, extra_root=max_root)

    prod = 1
    stream = prime_stream()
    while prod <= need:
        p = next(stream)
        lhs = charpoly_mod(_reduce_mod(n, ints, dense, p), p)
        rhs = _poly_from_roots_mod(n, roots, p)
        if not np.array_equal(lhs, rhs):
            return False
        prod *= p
    return True


def _poly_from_roots_mod(n: int, roots, p: int) -> np.ndarray:
    """prod (lambda - r)**mult mod p, descending coefficients, degree n."""
    c = np.zeros(n + 1, dtype=np.int64)
    c[0] = 1
    deg = 0
    for r, mult in roots:
        rp = r % p
        for _ in range(mult):
            deg += 1
            c[1 : deg + 1] = (c[1 : deg + 1] - rp * c[0:deg]) % p
    return c


# ----------------------------------------------------------------------
# Exact kernel vectors


def kernel_vector_exact(rows_int: list[list[int]], max_primes: int = 64) -> list[Fraction]:
    """The rational kernel vector of an integer matrix with one-dimensional
    kernel, normalized so its first supported coordinate is 1.

    Modular kernels are lifted by CRT and rational reconstruction; the
    candidate is accepted only after an exact integer verification, so the
    result is certified.  Raises SolverSingular when the kernel is trivial
    (full rank modulo some prime) or when several primes agree its dimension
    exceeds one.
    """
    n = len(rows_int)
    cols = len(rows_int[0]) if n else 0
    big = any(abs(v) >= 2**62 for row in rows_int for v in row)
    dense = None if big else np.array(rows_int, dtype=np.int64)

    def reduced(p):
        if dense is not None:
            return dense % p
        return np.array([[v % p for v in row] for row in rows_int], dtype=np.int64)

    stream = prime_stream()
    residue: list[int] | None = None
    modulus = 1
    pivot = None
    excess_dims = 0
    used = 0
    while used < max_primes:
        p = next(stream)
        used += 1
        basis = nullspace_mod(reduced(p), p)
        if len(basis) == 0:
            raise SolverSingular("matrix has full rank (trivial kernel)")
        if len(basis) > 1:
            excess_dims += 1
            if excess_dims >= 3:
                raise SolverSingular("kernel dimension exceeds one (matrix reducible)")
            continue
        v = [int(x) for x in basis[0]]
        if pivot is None:
            pivot = next(i for i, x in enumerate(v) if x)
        if v[pivot] % p == 0:
            continue  # unlucky prime for this normalization
        inv = pow(v[pivot], p - 2, p)
        v = [x * inv % p for x in v]
        if residue is None:
            residue, modulus = v, p
        else:
            residue = [crt_combine(r, modulus, x, p) for r, x in zip(residue, v)]
            modulus *= p
        candidate = [rational_reconstruct(r, modulus) for r in residue]
        if all(c is not None for c in candidate) and _kernel_verifies(rows_int, candidate):
            return candidate  # type: ignore[return-value]
    raise SolverSingular(f"kernel vector did not stabilize within {max_primes} primes")


def _kernel_verifies(rows_int, x: list[Fraction]) -> bool:
    den = 1
    for v in x:
        den = den * v.denominator // math.gcd(den, v.denominator)
    u = [int(v * den) for v in x]
    for row in rows_int:
        if sum(a * b for a, b in zip(row, u) if a) != 0:
            return False
    return True
