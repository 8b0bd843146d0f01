"""Finite naturally labeled posets, their linear extensions, and upper-set lattices.

Elements are the integers 1..n.  A poset is given by its cover relations:
a pair (a, b) means b covers a.  Natural labeling means a < b as integers
whenever a precedes b in the order; every finite poset can be relabeled
this way (see :func:`relabel_naturally`).

A linear extension is a permutation pi of [n], written in one-line notation
as a tuple, such that i appears before j whenever i precedes j in the poset.
The identity is always a linear extension and is first in lex order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    CycleDetected,
    MalformedInput,
    NotInLattice,
    NotNaturallyLabeled,
    SizeLimitExceeded,
)

DEFAULT_EXTENSION_CAP = 10**6
DEFAULT_UPPER_SET_CAP = 2**20


class Poset:
    """Immutable poset on {1..n} with reduced cover relations.

    ``covers`` may contain transitively implied pairs; they are removed and
    remembered in ``redundant_covers``.  Covers violating natural labeling
    raise :class:`NotNaturallyLabeled`.

    >>> P = Poset(4, [(1, 3), (1, 4), (2, 3)])
    >>> P.leq(1, 3), P.leq(3, 1), P.leq(1, 2)
    (True, False, False)
    """

    __slots__ = ("n", "covers", "redundant_covers", "_up", "_down", "_covers_above", "_covers_below")

    def __init__(self, n: int, covers=()):
        if n < 1:
            raise MalformedInput(f"poset size must be positive, got {n}")
        seen = set()
        for pair in covers:
            try:
                a, b = pair
            except (TypeError, ValueError):
                raise MalformedInput(f"cover {pair!r} is not a pair") from None
            if not (isinstance(a, int) and isinstance(b, int)):
                raise MalformedInput(f"cover {pair!r} must contain integers")
            if not (1 <= a <= n and 1 <= b <= n):
                raise MalformedInput(f"cover {pair!r} out of range 1..{n}")
            if a >= b:
                raise NotNaturallyLabeled((a, b))
            seen.add((a, b))

        # Transitive closure as bitmasks; up[a] has bit (b-1) set iff a <= b.
        above = {a: set() for a in range(1, n + 1)}
        for a, b in seen:
            above[a].add(b)
        up = [0] * (n + 1)
        for a in range(n, 0, -1):  # successors of a are all > a
            mask = 1 << (a - 1)
            for b in above[a]:
                mask |= up[b]
            up[a] = mask

        # Reduce: (a,b) is a true cover iff no intermediate c with a < c < b.
        reduced, redundant = set(), set()
        for a, b in seen:
            if any(up[c] >> (b - 1) & 1 for c in above[a] if c != b):
                redundant.add((a, b))
            else:
                reduced.add((a, b))

        self.n = n
        self.covers = frozenset(reduced)
        self.redundant_covers = frozenset(redundant)
        self._up = tuple(up)
        down = [0] * (n + 1)
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                if up[b] >> (a - 1) & 1:
                    down[a] |= 1 << (b - 1)
        self._down = tuple(down)
        cov_above = [[] for _ in range(n + 1)]
        cov_below = [[] for _ in range(n + 1)]
        for a, b in sorted(self.covers):
            cov_above[a].append(b)
            cov_below[b].append(a)
        self._covers_above = tuple(tuple(sorted(v)) for v in cov_above)
        self._covers_below = tuple(tuple(sorted(v)) for v in cov_below)

    # -- order queries -------------------------------------------------

    def leq(self, a: int, b: int) -> bool:
        """a precedes-or-equals b."""
        return bool(self._up[a] >> (b - 1) & 1)

    def less(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def up_set(self, a: int) -> int:
        """Bitmask of {b : a <= b}; bit (b-1) stands for element b."""
        return self._up[a]

    def down_set(self, a: int) -> int:
        return self._down[a]

    def covers_above(self, a: int) -> tuple[int, ...]:
        """Immediate successors of a (elements covering a)."""
        return self._covers_above[a]

    def covers_below(self, a: int) -> tuple[int, ...]:
        return self._covers_below[a]

    def weight_below(self, i: int, w) -> Fraction:
        """Sum of w[j-1] over j <= i in the poset (j = i included)."""
        mask = self._down[i]
        return sum((w[j] for j in range(self.n) if mask >> j & 1), Fraction(0))

    # -- dunder --------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Poset) and self.n == other.n and self.covers == other.covers

    def __hash__(self):
        return hash((self.n, self.covers))

    def __repr__(self):
        return f"Poset({self.n}, {sorted(self.covers)})"


# ----------------------------------------------------------------------
# Parsing and relabeling


def parse_poset(text: str) -> Poset:
    """Parse the poset text format (or its JSON equivalent).

    Text format: first nonempty line is n, each further nonempty line is
    "a b" meaning b covers a; '#' starts a comment.  A JSON object
    {"n": int, "covers": [[a, b], ...]} is accepted as well.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        import json

        try:
            obj = json.loads(text)
            n, covers = obj["n"], [tuple(c) for c in obj["covers"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedInput(f"bad JSON poset: {exc}") from None
        if not isinstance(n, int):
            raise MalformedInput("JSON field 'n' must be an integer")
        return Poset(n, covers)

    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise MalformedInput("empty poset description")
    try:
        n = int(lines[0])
    except ValueError:
        raise MalformedInput(f"first line must be the size, got {lines[0]!r}") from None
    covers = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise MalformedInput(f"expected 'a b', got {line!r}")
        try:
            covers.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise MalformedInput(f"non-integer cover in {line!r}") from None
    return Poset(n, covers)


def poset_to_json(P: Poset) -> dict:
    return {"n": P.n, "covers": sorted(list(c) for c in P.covers)}


def relabel_naturally(n: int, pairs) -> tuple[Poset, dict[int, int]]:
    """Relabel an arbitrary cover list on 1..n so the result is naturally labeled.

    Returns (poset, mapping) where mapping[old] = new.  Raises CycleDetected
    if the input relation has a directed cycle.
    """
    pairs = list(pairs)
    adj = {a: [] for a in range(1, n + 1)}
    indeg = {a: 0 for a in range(1, n + 1)}
    for a, b in pairs:
        if not (1 <= a <= n and 1 <= b <= n):
            raise MalformedInput(f"cover ({a},{b}) out of range 1..{n}")
        adj[a].append(b)
        indeg[b] += 1
    # Kahn topological sort, smallest label first for determinism.
    import heapq

    heap = [a for a in range(1, n + 1) if indeg[a] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        a = heapq.heappop(heap)
        order.append(a)
        for b in adj[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, b)
    if len(order) != n:
        raise CycleDetected(f"relation on 1..{n} contains a directed cycle")
    mapping = {old: new for new, old in enumerate(order, start=1)}
    return Poset(n, [(mapping[a], mapping[b]) for a, b in pairs]), mapping


def restrict(P: Poset, keep) -> Poset:
    """Induced subposet on ``keep``, relabeled order-preservingly to 1..m."""
    keep = sorted(set(keep))
    relabel = {old: new for new, old in enumerate(keep, start=1)}
    covers = []
    for a in keep:
        for b in keep:
            if a != b and P.less(a, b):
                # true cover within the induced subposet?
                if not any(P.less(a, c) and P.less(c, b) for c in keep if c not in (a, b)):
                    covers.append((relabel[a], relabel[b]))
    return Poset(len(keep), covers)


# ----------------------------------------------------------------------
# Linear extensions


def linear_extensions(P: Poset, cap: int = DEFAULT_EXTENSION_CAP) -> list[tuple[int, ...]]:
    """All linear extensions of P in lexicographic order (identity first).

    >>> linear_extensions(Poset(4, [(1, 3), (1, 4), (2, 3)]))
    [(1, 2, 3, 4), (1, 2, 4, 3), (1, 4, 2, 3), (2, 1, 3, 4), (2, 1, 4, 3)]
    """
    n = P.n
    below = [0] + [P.down_set(a) & ~(1 << (a - 1)) for a in range(1, n + 1)]
    out: list[tuple[int, ...]] = []
    word: list[int] = []

    def extend(placed: int):
        if len(word) == n:
            if len(out) >= cap:
                raise SizeLimitExceeded(f"more than {cap} linear extensions")
            out.append(tuple(word))
            return
        for a in range(1, n + 1):
            bit = 1 << (a - 1)
            if placed & bit:
                continue
            if below[a] & ~placed:
                continue  # some element below a not yet placed
            word.append(a)
            extend(placed | bit)
            word.pop()

    extend(0)
    return out


def count_linear_extensions(P: Poset) -> int:
    """Number of linear extensions, by DP over down-closed subsets."""

    @lru_cache(maxsize=None)
    def count(placed: int) -> int:
        if placed == (1 << P.n) - 1:
            return 1
        total = 0
        for a in range(1, P.n + 1):
            bit = 1 << (a - 1)
            if placed & bit:
                continue
            if (P.down_set(a) & ~bit) & ~placed:
                continue
            total += count(placed | bit)
        return total

    result = count(0)
    count.cache_clear()
    return result


def is_linear_extension(P: Poset, word) -> bool:
    word = tuple(word)
    if sorted(word) != list(range(1, P.n + 1)):
        return False
    pos = {a: i for i, a in enumerate(word)}
    return all(pos[a] < pos[b] for a, b in P.covers)


def poset_derangement_count(P: Poset, cap: int = DEFAULT_EXTENSION_CAP) -> int:
    """Number of linear extensions without a fixed point (pi_i != i for all i)."""
    return sum(
        1
        for word in linear_extensions(P, cap)
        if all(word[i] != i + 1 for i in range(P.n))
    )


# ----------------------------------------------------------------------
# Upper-set lattice


class UpperSetLattice:
    """The lattice of upper sets of a poset, ordered by inclusion.

    ``sets`` is sorted by (size, elements); the bottom is the empty set and
    the top is {1..n}.  Inclusion covers are precomputed so that maximal
    chains can be counted by a linear-time DP.
    """

    __slots__ = ("n", "sets", "index", "covers_up", "_mobius_cache", "_chain_count")

    def __init__(self, n: int, sets: list[frozenset[int]]):
        self.n = n
        self.sets = sorted(sets, key=lambda s: (len(s), sorted(s)))
        self.index = {s: i for i, s in enumerate(self.sets)}
        # S is covered by T iff S < T and |T| = |S| + 1 does not suffice in a
        # general lattice, but upper sets are closed under adding one maximal
        # element of the complement, so covers differ by exactly one element.
        self.covers_up = [[] for _ in self.sets]
        for i, s in enumerate(self.sets):
            for j, t in enumerate(self.sets):
                if len(t) == len(s) + 1 and s < t:
                    self.covers_up[i].append(j)
        self._mobius_cache: dict[tuple[int, int], int] = {}
        self._chain_count: list[int] | None = None

    def __len__(self):
        return len(self.sets)

    def _idx(self, S) -> int:
        key = frozenset(S)
        try:
            return self.index[key]
        except KeyError:
            raise NotInLattice(f"{sorted(key)} is not an upper set of this poset") from None

    def mobius(self, S, T) -> int:
        """Mobius function of the interval [S, T], by the recursive sum."""
        i, j = self._idx(S), self._idx(T)
        if not self.sets[i] <= self.sets[j]:
            raise NotInLattice(f"{sorted(frozenset(S))} is not contained in {sorted(frozenset(T))}")
        return self._mobius_idx(i, j)

    def _mobius_idx(self, i: int, j: int) -> int:
        if i == j:
            return 1
        key = (i, j)
        cached = self._mobius_cache.get(key)
        if cached is not None:
            return cached
        s, t = self.sets[i], self.sets[j]
        total = 0
        for k, u in enumerate(self.sets):
            if s <= u and u < t:
                total += self._mobius_idx(i, k)
        self._mobius_cache[key] = -total
        return -total

    def maximal_chain_count(self, S) -> int:
        """Number of saturated chains from S to the top set {1..n}."""
        i = self._idx(S)
        if self._chain_count is None:
            counts = [0] * len(self.sets)
            counts[len(self.sets) - 1] = 1  # top is last in the sort order
            for k in range(len(self.sets) - 2, -1, -1):
                counts[k] = sum(counts[j] for j in self.covers_up[k])
            self._chain_count = counts
        return self._chain_count[i]

    def interval(self, S, T) -> list[frozenset[int]]:
        s, t = self.sets[self._idx(S)], self.sets[self._idx(T)]
        return [u for u in self.sets if s <= u <= t]


def upper_set_lattice(P: Poset, cap: int = DEFAULT_UPPER_SET_CAP) -> UpperSetLattice:
    """All upward-closed subsets of P, as an inclusion lattice."""
    n = P.n
    if 2**n > cap:
        raise SizeLimitExceeded(f"2^{n} candidate subsets exceeds cap {cap}")
    ups = [P.up_set(a) for a in range(1, n + 1)]
    sets = []
    for mask in range(1 << n):
        ok = True
        for a in range(n):
            if mask >> a & 1 and ups[a] & ~mask:
                ok = False
                break
        if ok:
            sets.append(frozenset(a + 1 for a in range(n) if mask >> a & 1))
    return UpperSetLattice(n, sets)


# ----------------------------------------------------------------------
# Structural classification


@dataclass(frozen=True)
class PosetClass:
    is_rooted_forest: bool
    is_union_of_chains: bool
    is_consecutively_labeled_chains: bool
    is_antichain: bool


def classify(P: Poset) -> PosetClass:
    """Structural flags: rooted forest (at most one cover above each element),
    union of chains, consecutive labeling within chains, antichain."""
    n = P.n
    forest = all(len(P.covers_above(a)) <= 1 for a in range(1, n + 1))
    chains = forest and all(len(P.covers_below(a)) <= 1 for a in range(1, n + 1))
    antichain = not P.covers

    consecutive = False
    if chains:
        consecutive = True
        seen = set()
        for a in range(1, n + 1):
            if a in seen or P.covers_below(a):
                continue
            # walk the chain starting at its minimum a
            chain = [a]
            while P.covers_above(chain[-1]):
                chain.append(P.covers_above(chain[-1])[0])
            seen.update(chain)
            if chain != list(range(a, a + len(chain))):
                consecutive = False
                break
    return PosetClass(forest, chains, consecutive, antichain)


# ----------------------------------------------------------------------
# Common small constructions


def chain_poset(n: int) -> Poset:
    return Poset(n, [(i, i + 1) for i in range(1, n)])


def antichain_poset(n: int) -> Poset:
    return Poset(n, [])


def union_of_chains(lengths) -> Poset:
    """Disjoint union of chains with the given lengths, labeled consecutively."""
    covers = []
    start = 1
    for length in lengths:
        covers.extend((i, i + 1) for i in range(start, start + length - 1))
        start += length
    return Poset(sum(lengths), covers)
