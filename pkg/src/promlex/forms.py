"""Exact linear forms sum(c_i * x_i) and weight vectors for the chain variables.

Transition-matrix entries are linear forms in the formal edge probabilities
x_1..x_n with nonnegative integer coefficients; eigenvalue expressions may
carry coefficient -1.  Coefficients are kept as exact rationals throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, InvalidWeights, MalformedInput


@dataclass(frozen=True)
class LinearForm:
    """A vector of exact rational coefficients, read as sum(coeffs[i] * x_{i+1})."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def zero(n: int) -> "LinearForm":
        return LinearForm((Fraction(0),) * n)

    @staticmethod
    def unit(n: int, i: int) -> "LinearForm":
        """The form x_i (1-based i)."""
        return LinearForm(tuple(Fraction(1 if k == i - 1 else 0) for k in range(n)))

    @staticmethod
    def indicator(n: int, indices) -> "LinearForm":
        """x_S = sum of x_i over i in indices (1-based)."""
        idx = set(indices)
        return LinearForm(tuple(Fraction(1 if k + 1 in idx else 0) for k in range(n)))

    @staticmethod
    def from_ints(coeffs) -> "LinearForm":
        return LinearForm(tuple(Fraction(c) for c in coeffs))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        if self.n != other.n:
            raise DimensionMismatch("cannot add forms of different length")
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        if self.n != other.n:
            raise DimensionMismatch("cannot subtract forms of different length")
        return LinearForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-a for a in self.coeffs))

    def scale(self, c) -> "LinearForm":
        c = Fraction(c)
        return LinearForm(tuple(c * a for a in self.coeffs))

    def __call__(self, w) -> Fraction:
        """Evaluate at a weight vector (anything indexable of length n)."""
        if len(w) != self.n:
            raise DimensionMismatch(f"form has {self.n} variables, got {len(w)} weights")
        return sum((c * w[i] for i, c in enumerate(self.coeffs) if c), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        pos, neg = [], []
        for i, c in enumerate(self.coeffs, 1):
            if c > 0:
                pos.append(f"x{i}" if c == 1 else f"{c}*x{i}")
            elif c < 0:
                neg.append(f"x{i}" if c == -1 else f"{-c}*x{i}")
        if not pos and not neg:
            return "0"
        out = "+".join(pos)
        for t in neg:
            out += f"-{t}"
        return out


class WeightVector:
    """Strictly positive exact weights for the chain variables x_1..x_n.

    ``normalized`` reports whether the entries sum to one; the chain-level
    stochastic claims require that, while the algebraic identities do not.
    """

    __slots__ = ("values",)

    def __init__(self, values):
        vals = tuple(Fraction(v) for v in values)
        if not vals:
            raise InvalidWeights("empty weight vector")
        if any(v <= 0 for v in vals):
            raise InvalidWeights(f"weights must be strictly positive, got {vals}")
        self.values = vals

    @staticmethod
    def uniform(n: int) -> "WeightVector":
        return WeightVector([Fraction(1, n)] * n)

    @staticmethod
    def parse(text: str, n: int | None = None) -> "WeightVector":
        """Parse "1/4,1/4,1/4,1/4" or "uniform" (the latter needs n)."""
        text = text.strip()
        if text == "uniform":
            if n is None:
                raise MalformedInput("'uniform' weights need the poset size")
            return WeightVector.uniform(n)
        parts = [p.strip() for p in text.split(",") if p.strip()]
        try:
            vals = [Fraction(p) for p in parts]
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad weight list {text!r}: {exc}") from None
        for p in parts:
            if "." in p or "e" in p.lower():
                raise MalformedInput(f"weights must be exact rationals, got {p!r}")
        wv = WeightVector(vals)
        if n is not None and len(wv) != n:
            raise DimensionMismatch(f"expected {n} weights, got {len(wv)}")
        return wv

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def normalized(self) -> bool:
        return sum(self.values) == 1

    def normalize(self) -> "WeightVector":
        total = sum(self.values)
        return WeightVector([v / total for v in self.values])

    def min_weight(self) -> Fraction:
        return min(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        return isinstance(other, WeightVector) and self.values == other.values

    def __repr__(self):
        return "WeightVector(%s)" % ",".join(str(v) for v in self.values)


def random_weight_vector(n: int, rng) -> WeightVector:
    """Seeded normalized weights with pairwise distinct entries and a small
    common denominator (distinct numerators from a small pool, so that both
    numerators and the denominator stay at most 97 for n <= 10)."""
    top = n + 6
    while top > n and sum(range(top - n + 1, top + 1)) > 97:
        top -= 1
    nums = rng.sample(range(1, max(top, n + 1) + 1), n)
    total = sum(nums)
    return WeightVector([Fraction(a, total) for a in nums])


def stable_rng(*parts):
    """A random.Random seeded from a session-independent hash of the parts."""
    import hashlib
    import random

    digest = hashlib.sha256("|".join(str(p) for p in parts).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))
