"""Exhaustive generation of small posets, one representative per isomorphism
class, for the verification sweeps.

Naturally labeled posets on [n] are built recursively: every such poset is a
poset on [n-1] together with a down-closed subset serving as the strict
down-set of the new (maximal) element n.  Isomorphism classes are identified
by the lexicographically least relabeling along a linear extension, which
ranges over exactly the natural labelings of the class.
"""

from __future__ import annotations

from functools import lru_cache

from .posets import Poset, classify, linear_extensions


def _lower_set_masks(P: Poset) -> list[int]:
    masks = []
    downs = [P.down_set(a) for a in range(1, P.n + 1)]
    for mask in range(1 << P.n):
        ok = True
        for a in range(P.n):
            if mask >> a & 1 and downs[a] & ~mask:
                ok = False
                break
        if ok:
            masks.append(mask)
    return masks


def _naturally_labeled(n: int):
    """Yield every naturally labeled poset on [n] exactly once."""
    if n == 1:
        yield Poset(1)
        return
    for Q in _naturally_labeled(n - 1):
        for mask in _lower_set_masks(Q):
            members = [a + 1 for a in range(Q.n) if mask >> a & 1]
            maximal = [a for a in members if not any(Q.less(a, b) for b in members)]
            covers = sorted(Q.covers) + [(a, n) for a in maximal]
            yield Poset(n, covers)


def canonical_covers(P: Poset) -> tuple[tuple[int, int], ...]:
    """Lexicographically least cover set over all natural relabelings."""
    best = None
    for word in linear_extensions(P):
        m = {a: i + 1 for i, a in enumerate(word)}
        key = tuple(sorted((m[a], m[b]) for a, b in P.covers))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def all_posets(n: int) -> tuple[Poset, ...]:
    """One naturally labeled representative per isomorphism class, sorted by
    canonical cover set.

    >>> [len(all_posets(k)) for k in range(1, 6)]
    [1, 2, 5, 16, 63]
    """
    reps: dict[tuple, Poset] = {}
    for P in _naturally_labeled(n):
        key = canonical_covers(P)
        if key not in reps:
            reps[key] = Poset(n, key)
    return tuple(reps[key] for key in sorted(reps))


def all_rooted_forests(n: int) -> tuple[Poset, ...]:
    return tuple(P for P in all_posets(n) if classify(P).is_rooted_forest)


def all_non_forests(n: int) -> tuple[Poset, ...]:
    return tuple(P for P in all_posets(n) if not classify(P).is_rooted_forest)


def all_chain_unions(n: int) -> tuple[Poset, ...]:
    """Consecutively labeled unions of chains, one per partition of n."""
    from .posets import union_of_chains

    out = []

    def parts(remaining: int, most: int, acc: list[int]):
        if remaining == 0:
            out.append(union_of_chains(acc))
            return
        for piece in range(min(remaining, most), 0, -1):
            parts(remaining - piece, piece, acc + [piece])

    parts(n, n, [])
    return tuple(out)


def poset_key(P: Poset) -> str:
    """Stable text encoding used for report ordering and seeding."""
    return f"n{P.n}:" + ",".join(f"{a}<{b}" for a, b in sorted(P.covers))
