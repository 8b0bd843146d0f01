"""Transition matrices with symbolic entries, stationary laws, and the
partition function of the promotion chain.

Matrix convention: the (pi', pi) entry is the weight of the move pi -> pi',
so columns sum to x_1 + ... + x_n and the matrix is column-stochastic once
the weights are normalized.  The state space is the lex-ordered list of
linear extensions.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    NotRootedForest,
    NotStochastic,
    ZeroDenominator,
)
from .forms import LinearForm
from .linalg import RationalMatrix, kernel_vector_exact
from .posets import DEFAULT_EXTENSION_CAP, Poset, classify
from .promotion import build_promotion_graph


class TransitionMatrix:
    """Square array of linear forms over a fixed ordered basis of states."""

    __slots__ = ("basis", "n", "mode", "forms")

    def __init__(self, basis, n: int, mode: str, forms: dict[tuple[int, int], LinearForm]):
        self.basis = tuple(tuple(w) for w in basis)
        self.n = n
        self.mode = mode
        self.forms = forms

    @property
    def size(self) -> int:
        return len(self.basis)

    def entry(self, i: int, j: int) -> LinearForm:
        return self.forms.get((i, j), LinearForm.zero(self.n))

    def row(self, i: int) -> list[LinearForm]:
        return [self.entry(i, j) for j in range(self.size)]

    def column_sums(self) -> list[LinearForm]:
        sums = [LinearForm.zero(self.n)] * self.size
        for (_, j), f in self.forms.items():
            sums[j] = sums[j] + f
        return sums

    def row_sums(self) -> list[LinearForm]:
        sums = [LinearForm.zero(self.n)] * self.size
        for (i, _), f in self.forms.items():
            sums[i] = sums[i] + f
        return sums


def transition_matrix(P: Poset, mode: str, cap: int = DEFAULT_EXTENSION_CAP) -> TransitionMatrix:
    """Aggregate the promotion-graph edges of the given mode into linear forms."""
    G = build_promotion_graph(P, mode, cap)
    counts: dict[tuple[int, int], list[int]] = {}
    for src, dst, k in G.edges:
        key = (dst, src)
        if key not in counts:
            counts[key] = [0] * P.n
        counts[key][k - 1] += 1
    forms = {key: LinearForm.from_ints(c) for key, c in counts.items()}
    return TransitionMatrix(G.vertices, P.n, mode, forms)


def matrix_from_action(basis, n: int, mode: str, edges) -> TransitionMatrix:
    """Build a transition matrix over an arbitrary basis from labeled edges
    (src index, dst index, weight index); shared by the subset chains."""
    counts: dict[tuple[int, int], list[int]] = {}
    for src, dst, k in edges:
        key = (dst, src)
        if key not in counts:
            counts[key] = [0] * n
        counts[key][k - 1] += 1
    forms = {key: LinearForm.from_ints(c) for key, c in counts.items()}
    return TransitionMatrix(basis, n, mode, forms)


def evaluate(M: TransitionMatrix, w) -> RationalMatrix:
    """Substitute x_i = w_i in every entry; exact rational result."""
    if len(w) != M.n:
        raise DimensionMismatch(f"matrix has {M.n} variables, got {len(w)} weights")
    entries = {}
    for key, f in M.forms.items():
        v = f(w)
        if v:
            entries[key] = v
    return RationalMatrix(M.size, entries)


# ----------------------------------------------------------------------
# Stationary distribution: product formula


class StationaryWeight:
    """Unnormalized stationary weight of one state, as a reduced ratio of
    products of prefix-sum forms; callable at a weight vector."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator):
        num = list(numerator)
        den = list(denominator)
        for f in list(den):  # cancel common linear factors
            if f in num:
                num.remove(f)
                den.remove(f)
        self.numerator = tuple(num)
        self.denominator = tuple(den)

    def __call__(self, w) -> Fraction:
        val = Fraction(1)
        for f in self.numerator:
            val *= f(w)
        for f in self.denominator:
            fw = f(w)
            if fw == 0:
                raise ZeroDenominator(f"prefix sum {f} vanishes at {tuple(w)}")
            val /= fw
        return val

    def __str__(self) -> str:
        def prod(forms, grouped: bool) -> str:
            if not forms:
                return "1"
            body = "*".join(f"({f})" for f in forms)
            return f"({body})" if grouped and len(forms) > 1 else body

        if not self.denominator:
            return prod(self.numerator, False)
        return f"{prod(self.numerator, True)}/{prod(self.denominator, True)}"


def stationary_weight(P: Poset, word) -> StationaryWeight:
    """Product formula: the ratio over i of the identity's i-th prefix sum to
    the state's i-th prefix sum, normalized so the identity gets weight 1."""
    word = tuple(word)
    n = P.n
    num, den = [], []
    seen: set[int] = set()
    for i in range(n):
        seen.add(word[i])
        top = LinearForm.indicator(n, range(1, i + 2))
        bot = LinearForm.indicator(n, seen)
        if top != bot:
            num.append(top)
            den.append(bot)
    return StationaryWeight(num, den)


def stationary_vector(P: Poset, w, cap: int = DEFAULT_EXTENSION_CAP) -> list[Fraction]:
    """Normalized stationary law of the promotion chain over the lex basis."""
    from .posets import linear_extensions

    weights = [stationary_weight(P, word)(w) for word in linear_extensions(P, cap)]
    total = sum(weights)
    return [v / total for v in weights]


def partition_function(P: Poset, w, method: str = "auto", cap: int = DEFAULT_EXTENSION_CAP) -> Fraction:
    """Normalizing constant Z with probability(pi) = weight(pi) * Z.

    method "brute" sums the product-formula weights over all states and
    inverts; "formula" uses the closed product over elements (valid for
    rooted forests only, NotRootedForest otherwise); "auto" picks the
    formula when it applies.
    """
    if method not in ("auto", "formula", "brute"):
        raise ValueError(f"unknown method {method!r}")
    forest = classify(P).is_rooted_forest
    if method == "auto":
        method = "formula" if forest else "brute"
    if method == "formula":
        if not forest:
            raise NotRootedForest(f"{P!r} is not a rooted forest")
        z = Fraction(1)
        prefix = Fraction(0)
        for i in range(1, P.n + 1):
            prefix += w[i - 1]
            z *= P.weight_below(i, w) / prefix
        return z
    from .posets import linear_extensions

    total = sum(stationary_weight(P, word)(w) for word in linear_extensions(P, cap))
    return 1 / total


# ----------------------------------------------------------------------
# Stationary distribution: exact linear solve


def stationary_solve(mnum) -> list[Fraction]:
    """Unique stationary vector of a column-stochastic irreducible matrix,
    from the exact kernel of (M - I) plus normalization.

    The kernel is found modulo primes, lifted by rational reconstruction and
    then verified exactly, so the answer is certified.  NotStochastic when a
    column sum differs from one; SolverSingular signals reducibility.
    """
    m = RationalMatrix.coerce(mnum)
    for j, s in enumerate(m.col_sums()):
        if s != 1:
            raise NotStochastic(f"column {j} sums to {s}, not 1")
    d, ints = m.scaled_integer()
    rows = [[0] * m.n for _ in range(m.n)]
    for (i, j), v in ints.items():
        rows[i][j] = v
    for i in range(m.n):
        rows[i][i] -= d
    x = kernel_vector_exact(rows)
    total = sum(x)
    if total == 0:
        raise NotStochastic("kernel vector sums to zero; matrix is not a chain")
    return [v / total for v in x]


def verify_master_equation(M: TransitionMatrix, w_candidate, wt) -> bool:
    """Exact balance check at the weight vector wt: for every state, the
    inflow under w_candidate equals the outflow."""
    if len(w_candidate) != M.size:
        raise DimensionMismatch(f"candidate has {len(w_candidate)} entries for {M.size} states")
    mnum = evaluate(M, wt)
    w = [Fraction(v) for v in w_candidate]
    inflow = mnum.matvec(w)
    colsum = mnum.col_sums()
    return all(inflow[i] == w[i] * colsum[i] for i in range(M.size))


# ----------------------------------------------------------------------
# Rendering


def matrix_to_text(M: TransitionMatrix) -> str:
    cells = [[str(M.entry(i, j)) for j in range(M.size)] for i in range(M.size)]
    width = max((len(c) for row in cells for c in row), default=1)
    lines = ["  ".join(c.rjust(width) for c in row) for row in cells]
    sep = "" if M.n < 10 else ","
    header = "basis: " + " ".join(sep.join(map(str, w)) for w in M.basis)
    return header + "\n" + "\n".join(lines)


def matrix_to_json(M: TransitionMatrix) -> str:
    def coeff(c: Fraction):
        return c.numerator if c.denominator == 1 else str(c)

    payload = {
        "mode": M.mode,
        "basis": [list(w) for w in M.basis],
        "entries": [
            [[coeff(c) for c in M.entry(i, j).coeffs] for j in range(M.size)]
            for i in range(M.size)
        ],
    }
    return json.dumps(payload, indent=2)
