"""Distance to stationarity: exact k-step distributions, total variation,
the Chernoff-style convergence bound, and seeded Monte-Carlo walks.

Everything on the chain side is exact rational arithmetic.  The bound is a
real number exp(-(k*p - (n^2-1))^2 / (2*k*p)); for certified comparisons use
:func:`convergence_bound_upper`, which evaluates it in high precision and
pads by a documented margin so the returned rational is a true upper bound.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chains import evaluate, stationary_vector, transition_matrix
from .errors import DimensionMismatch, InvalidWeights, NonPositiveRate
from .linalg import RationalMatrix
from .posets import Poset, linear_extensions
from .promotion import _promote_fast


def power_distribution(mnum, init, k: int) -> list[Fraction]:
    """init evolved k steps: M^k * init, exact."""
    m = RationalMatrix.coerce(mnum)
    v = [Fraction(x) for x in init]
    if len(v) != m.n:
        raise DimensionMismatch(f"matrix is {m.n}x{m.n}, init has {len(v)}")
    for _ in range(k):
        v = m.matvec(v)
    return v


def total_variation(p, q) -> Fraction:
    """Half the l1 distance between two distributions on the same basis."""
    if len(p) != len(q):
        raise DimensionMismatch(f"distributions of size {len(p)} vs {len(q)}")
    return sum((abs(Fraction(a) - Fraction(b)) for a, b in zip(p, q)), Fraction(0)) / 2


def _bound_exponent(n: int, p_x, k: int) -> Fraction | None:
    p_x = Fraction(p_x)
    if p_x <= 0:
        raise NonPositiveRate(f"minimum weight must be positive, got {p_x}")
    thresh = Fraction(n * n - 1) / p_x
    if k < thresh:
        return None
    kp = k * p_x
    if kp == 0:  # only n = 1, k = 0: the bound degenerates to exp(0)
        return Fraction(0)
    return (kp - (n * n - 1)) ** 2 / (2 * kp)


def convergence_bound(n: int, p_x, k: int) -> float | None:
    """The distance bound exp(-(k*p_x-(n^2-1))^2/(2*k*p_x)) once the step
    count reaches (n^2-1)/p_x; None (not applicable) below that threshold."""
    t = _bound_exponent(n, p_x, k)
    if t is None:
        return None
    return math.exp(-float(t))


def convergence_bound_upper(n: int, p_x, k: int, margin: Fraction = Fraction(1, 10**30)) -> Fraction | None:
    """A certified rational upper bound on :func:`convergence_bound`.

    exp is evaluated with 50 significant digits and padded by ``margin``,
    which dwarfs the evaluation error; exact total-variation distances can
    then be compared against the result with the inequality intact."""
    t = _bound_exponent(n, p_x, k)
    if t is None:
        return None
    import mpmath

    with mpmath.workdps(50):
        val = mpmath.exp(-mpmath.mpf(t.numerator) / t.denominator)
        sign, man, exp, _ = val._mpf_
    frac = Fraction(man, 1) * Fraction(2) ** exp
    if sign:
        frac = -frac
    return frac + margin


def mixing_time_upper(n: int, p_x, c) -> Fraction:
    """Steps after which the distance bound drops below exp(-c):
    2*(n^2 + c - 1)/p_x."""
    p_x = Fraction(p_x)
    if p_x <= 0:
        raise NonPositiveRate(f"minimum weight must be positive, got {p_x}")
    c = Fraction(c)
    if c < 0:
        raise ValueError(f"target exponent must be nonnegative, got {c}")
    return 2 * (n * n + c - 1) / p_x


def worst_tv_by_step(P: Poset, w, kmax: int) -> list[tuple[int, Fraction]]:
    """Exact worst-case total variation to stationarity over all point-mass
    starts, for k = 0..kmax.

    Powers of the chain matrix are tracked as integer matrices (scaled by
    the weight denominator) so no gcd work happens inside the loop."""
    M = transition_matrix(P, "promotion")
    mnum = evaluate(M, w)
    size = mnum.n
    pi = stationary_vector(P, w)
    b = 1
    for v in pi:
        b = b * v.denominator // math.gcd(b, v.denominator)
    a = [int(v * b) for v in pi]

    d, ints = mnum.scaled_integer()
    step = np.zeros((size, size), dtype=object)
    for (i, j), v in ints.items():
        step[i, j] = int(v)
    power = np.identity(size, dtype=object)
    dk = 1
    out = []
    for k in range(kmax + 1):
        denom = 2 * b * dk
        worst = max(
            sum(abs(int(power[i, s]) * b - a[i] * dk) for i in range(size))
            for s in range(size)
        )
        out.append((k, Fraction(worst, denom)))
        power = step @ power
        dk *= d
    return out


@dataclass(frozen=True)
class WalkResult:
    basis: tuple[tuple[int, ...], ...]
    trajectory: list[int]  # state indices, length steps+1, starting at the identity
    empirical: list[Fraction]


def simulate_walk(P: Poset, w, steps: int, seed: int) -> WalkResult:
    """Seeded walk of the promotion chain: at each step draw a label with the
    given probabilities and act by its promotion operator.

    Label sampling compares an exact dyadic uniform draw (64 random bits from
    random.Random(seed)) against the cumulative weights, so trajectories are
    reproducible across platforms and unbiased for rational weights."""
    w = [Fraction(v) for v in w]
    if any(v <= 0 for v in w) or sum(w) != 1:
        raise InvalidWeights("weights must be positive and sum to one")
    if len(w) != P.n:
        raise DimensionMismatch(f"poset has {P.n} elements, got {len(w)} weights")
    words = linear_extensions(P)
    index = {word: i for i, word in enumerate(words)}
    cum = []
    acc = Fraction(0)
    for v in w:
        acc += v
        cum.append(acc)
    rng = random.Random(seed)
    cur = words[0]
    trajectory = [index[cur]]
    counts = [0] * len(words)
    counts[index[cur]] += 1
    for _ in range(steps):
        u = Fraction(rng.getrandbits(64), 2**64)
        label = next(i + 1 for i, c in enumerate(cum) if u < c)
        cur = _promote_fast(P, cur, cur.index(label) + 1)
        idx = index[cur]
        trajectory.append(idx)
        counts[idx] += 1
    total = steps + 1
    return WalkResult(tuple(words), trajectory, [Fraction(c, total) for c in counts])


def mixing_csv(P: Poset, w, kmax: int) -> str:
    """CSV rows k,tv_exact,bound for plotting."""
    n = P.n
    p_x = min(Fraction(v) for v in w)
    lines = ["k,tv_exact,bound"]
    for k, tv in worst_tv_by_step(P, w, kmax):
        bound = convergence_bound(n, p_x, k)
        lines.append(f"{k},{float(tv):.12g},{'' if bound is None else f'{bound:.12g}'}")
    return "\n".join(lines) + "\n"
