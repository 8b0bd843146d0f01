"""Promotion on an arbitrary nonempty set of permutations.

The adjacent swap sigma_i acts on a permutation in A when the swapped word
stays inside A and as the identity otherwise; promotion with seed j is again
the product sigma_j ... sigma_{n-1}.  When A is the set of linear extensions
of a poset this reduces exactly to the poset operators.  Unions of sorting
networks (maximal chains in right weak order from the identity) give sets
that are not extension sets yet still carry strongly connected promotion
graphs with the same product-formula stationary law.
"""

from __future__ import annotations

from fractions import Fraction

from .chains import TransitionMatrix, matrix_from_action
from .errors import (
    IndexOutOfRange,
    InvalidWeights,
    MalformedInput,
    NotAGeodesic,
    NotInSubset,
)
from .promotion import PromotionGraph


class PermSubset:
    """A deduplicated set of permutations of [n], lex-ordered."""

    __slots__ = ("n", "perms", "index", "is_sorting_network_union")

    def __init__(self, n: int, perms, is_sorting_network_union: bool = False):
        self.n = n
        self.perms = tuple(perms)
        self.index = {w: i for i, w in enumerate(self.perms)}
        self.is_sorting_network_union = is_sorting_network_union

    @property
    def contains_identity(self) -> bool:
        return tuple(range(1, self.n + 1)) in self.index

    def __len__(self):
        return len(self.perms)

    def __contains__(self, word):
        return tuple(word) in self.index

    def __eq__(self, other):
        return isinstance(other, PermSubset) and self.perms == other.perms

    def __hash__(self):
        return hash(self.perms)

    def __repr__(self):
        return f"PermSubset(n={self.n}, size={len(self.perms)})"


def perm_subset(perms, is_sorting_network_union: bool = False) -> PermSubset:
    words = sorted({tuple(w) for w in perms})
    if not words:
        raise MalformedInput("empty permutation set")
    n = len(words[0])
    for w in words:
        if sorted(w) != list(range(1, n + 1)):
            raise MalformedInput(f"{w} is not a permutation of 1..{n}")
    return PermSubset(n, tuple(words), is_sorting_network_union)


def parse_subset(text: str) -> PermSubset:
    """One permutation per line, either '24153' or '2 4 1 5 3'."""
    words = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1 and parts[0].isdigit():
            words.append(tuple(int(ch) for ch in parts[0]))
        else:
            try:
                words.append(tuple(int(p) for p in parts))
            except ValueError:
                raise MalformedInput(f"bad permutation line {line!r}") from None
    return perm_subset(words)


def sigma(A: PermSubset, word, i: int) -> tuple[int, ...]:
    """Swap positions i, i+1 when the swapped word is still in A."""
    word = tuple(word)
    if word not in A:
        raise NotInSubset(f"{word} is not in the subset")
    if not 1 <= i <= A.n - 1:
        raise IndexOutOfRange(f"sigma index {i} not in 1..{A.n - 1}")
    swapped = word[: i - 1] + (word[i], word[i - 1]) + word[i + 1 :]
    return swapped if swapped in A else word


def subset_promotion(A: PermSubset, word, j: int) -> tuple[int, ...]:
    """sigma_j sigma_{j+1} ... sigma_{n-1}; the seed-n operator is the identity."""
    word = tuple(word)
    if word not in A:
        raise NotInSubset(f"{word} is not in the subset")
    if not 1 <= j <= A.n:
        raise IndexOutOfRange(f"promotion seed {j} not in 1..{A.n}")
    index = A.index
    for i in range(j - 1, A.n - 1):
        swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2 :]
        if swapped in index:
            word = swapped
    return word


def subset_promotion_graph(A: PermSubset, mode: str) -> PromotionGraph:
    if mode not in ("uniform", "promotion"):
        raise ValueError(f"mode must be 'uniform' or 'promotion', got {mode!r}")
    index = A.index
    edges = []
    for s, word in enumerate(A.perms):
        for j in range(1, A.n + 1):
            target = subset_promotion(A, word, j)
            label = j if mode == "uniform" else word[j - 1]
            edges.append((s, index[target], label))
    return PromotionGraph(A.perms, tuple(edges), mode, A.n)


def subset_transition_matrix(A: PermSubset, mode: str) -> TransitionMatrix:
    G = subset_promotion_graph(A, mode)
    return matrix_from_action(A.perms, A.n, mode, G.edges)


# ----------------------------------------------------------------------
# Sorting networks


def inversions(word) -> int:
    word = tuple(word)
    return sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])


def _validate_chain(chain, target) -> list[tuple[int, ...]]:
    chain = [tuple(w) for w in chain]
    n = len(target)
    if chain[0] != tuple(range(1, n + 1)):
        raise NotAGeodesic(f"chain must start at the identity, got {chain[0]}")
    if chain[-1] != tuple(target):
        raise NotAGeodesic(f"chain ends at {chain[-1]}, not the target {tuple(target)}")
    for u, v in zip(chain, chain[1:]):
        diffs = [k for k in range(n) if u[k] != v[k]]
        if len(diffs) != 2 or diffs[1] != diffs[0] + 1 or u[diffs[0]] != v[diffs[1]] or u[diffs[1]] != v[diffs[0]]:
            raise NotAGeodesic(f"step {u} -> {v} is not an adjacent transposition")
        if inversions(v) != inversions(u) + 1:
            raise NotAGeodesic(f"step {u} -> {v} does not increase the inversion count")
    return chain


def _weak_order_interval(target) -> set[tuple[int, ...]]:
    """Everything lying on some geodesic from the identity to the target:
    the right-weak-order interval, built by walking descents downward."""
    target = tuple(target)
    seen = {target}
    frontier = [target]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(len(w) - 1):
                if w[i] > w[i + 1]:
                    u = w[:i] + (w[i + 1], w[i]) + w[i + 2 :]
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
        frontier = nxt
    return seen


def sorting_network_union(targets) -> PermSubset:
    """Union of sorting networks to the given targets.

    Each item is either a permutation (all geodesics to it are included) or
    a pair (permutation, explicit chain); explicit chains must be geodesics
    from the identity, otherwise NotAGeodesic is raised.
    """
    words: set[tuple[int, ...]] = set()
    for item in targets:
        if (
            isinstance(item, (tuple, list))
            and len(item) == 2
            and not isinstance(item[0], int)
        ):
            target, chain = item
            words.update(_validate_chain(chain, tuple(target)))
        else:
            words.update(_weak_order_interval(tuple(item)))
    return perm_subset(words, is_sorting_network_union=True)


# ----------------------------------------------------------------------
# Stationary laws


def subset_stationary(A: PermSubset, mode: str, w=None) -> list[Fraction]:
    """The closed-form stationary vector over the lex order of A, normalized.

    Uniform mode: constant 1/|A|.  Promotion mode: the prefix-ratio product
    formula; it always satisfies the balance equations, and is the unique
    stationary law when the promotion graph is strongly connected."""
    if mode == "uniform":
        return [Fraction(1, len(A)) for _ in A.perms]
    if mode != "promotion":
        raise ValueError(f"mode must be 'uniform' or 'promotion', got {mode!r}")
    if w is None:
        raise InvalidWeights("promotion mode needs a weight vector")
    w = [Fraction(v) for v in w]
    if len(w) != A.n or any(v <= 0 for v in w):
        raise InvalidWeights("need strictly positive weights, one per letter")
    prefix_identity = []
    acc = Fraction(0)
    for i in range(A.n):
        acc += w[i]
        prefix_identity.append(acc)
    weights = []
    for word in A.perms:
        val = Fraction(1)
        acc = Fraction(0)
        for i, letter in enumerate(word):
            acc += w[letter - 1]
            val *= prefix_identity[i] / acc
        weights.append(val)
    total = sum(weights)
    return [v / total for v in weights]
