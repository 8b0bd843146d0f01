"""Promotion operators on linear extensions and the weighted promotion graphs.

All operators act on the right: applying tau_i then tau_{i+1} is written
pi tau_i tau_{i+1} and computed left-to-right.  The operator tau_i swaps the
entries in positions i, i+1 when they are incomparable in the poset and does
nothing otherwise; promotion with seed j is the product
tau_j tau_{j+1} ... tau_{n-1}, and the seed-n operator is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRange, NotALinearExtension
from .posets import DEFAULT_EXTENSION_CAP, Poset, is_linear_extension, linear_extensions


def _check_extension(P: Poset, word) -> tuple[int, ...]:
    word = tuple(word)
    if not is_linear_extension(P, word):
        raise NotALinearExtension(f"{word} is not a linear extension of {P!r}")
    return word


def tau(P: Poset, word, i: int) -> tuple[int, ...]:
    """Swap positions i, i+1 (1-based) when their entries are incomparable.

    >>> P = Poset(4, [(1, 3), (1, 4), (2, 3)])
    >>> tau(P, (1, 2, 3, 4), 1)
    (2, 1, 3, 4)
    >>> tau(P, (1, 2, 3, 4), 2)   # 2 precedes 3, so nothing moves
    (1, 2, 3, 4)
    """
    word = _check_extension(P, word)
    if not 1 <= i <= P.n - 1:
        raise IndexOutOfRange(f"tau index {i} not in 1..{P.n - 1}")
    return _tau_fast(P, word, i)


def _tau_fast(P: Poset, word: tuple[int, ...], i: int) -> tuple[int, ...]:
    a, b = word[i - 1], word[i]
    if P.comparable(a, b):
        return word
    return word[: i - 1] + (b, a) + word[i + 1 :]


def extended_promotion(P: Poset, word, j: int) -> tuple[int, ...]:
    """Promotion with seed j: apply tau_j, tau_{j+1}, ..., tau_{n-1}."""
    word = _check_extension(P, word)
    if not 1 <= j <= P.n:
        raise IndexOutOfRange(f"promotion seed {j} not in 1..{P.n}")
    return _promote_fast(P, word, j)


def _promote_fast(P: Poset, word: tuple[int, ...], j: int) -> tuple[int, ...]:
    w = list(word)
    for i in range(j - 1, P.n - 1):  # 0-based position of tau_{i+1}
        a, b = w[i], w[i + 1]
        if not P.comparable(a, b):
            w[i], w[i + 1] = b, a
    return tuple(w)


def extended_promotion_jdt(P: Poset, word, j: int) -> tuple[int, ...]:
    """Promotion with seed j by the sliding procedure.

    Remove the label j (sitting at element word[j-1]), repeatedly pull down
    the minimum label among the covers of the vacated element, put a sentinel
    at the final local maximum, then shift every label above j down by one.
    Agrees with :func:`extended_promotion` on every input.
    """
    word = _check_extension(P, word)
    n = P.n
    if not 1 <= j <= n:
        raise IndexOutOfRange(f"promotion seed {j} not in 1..{n}")
    label = [0] * (n + 1)  # label[element] = its position in the word
    for pos, elt in enumerate(word, 1):
        label[elt] = pos
    hole = word[j - 1]
    while True:
        ups = P.covers_above(hole)
        if not ups:
            break
        nxt = min(ups, key=lambda c: label[c])
        label[hole] = label[nxt]
        hole = nxt
    label[hole] = n + 1  # sentinel standing in for the removed seed
    out = [0] * n
    for elt in range(1, n + 1):
        lab = label[elt]
        out[lab - 2 if lab > j else lab - 1] = elt
    return tuple(out)


def hat_promotion(P: Poset, word, i: int) -> tuple[int, ...]:
    """Label-indexed promotion: promote with seed at the position of letter i.

    For rooted forests this moves the letter i to the last position and
    reorders the letters above i, which is the move-to-end dynamics of the
    self-organizing library when the poset is an antichain.
    """
    word = _check_extension(P, word)
    if not 1 <= i <= P.n:
        raise IndexOutOfRange(f"label {i} not in 1..{P.n}")
    return _promote_fast(P, word, word.index(i) + 1)


def forest_move_to_end(P: Poset, word, i: int) -> tuple[int, ...]:
    """Move letter i to position n and reorder all letters above i.

    This is the alternative description of :func:`hat_promotion` valid for
    rooted forests, where the set of elements above i forms a chain.  Used
    as an independent cross-check.
    """
    word = _check_extension(P, word)
    if not 1 <= i <= P.n:
        raise IndexOutOfRange(f"label {i} not in 1..{P.n}")
    moved = [a for a in word if a != i] + [i]
    mask = P.up_set(i)
    slots = [k for k, a in enumerate(moved) if mask >> (a - 1) & 1]
    letters = sorted(moved[k] for k in slots)
    for k, a in zip(slots, letters):
        moved[k] = a
    return tuple(moved)


# ----------------------------------------------------------------------
# Promotion graphs


@dataclass(frozen=True)
class PromotionGraph:
    """Directed graph on lex-ordered states; parallel edges kept separate.

    Each edge (src, dst, k) records dst = src * promotion_j for some seed j,
    carrying the symbolic weight x_k: in uniform mode k = j, in promotion
    mode k is the j-th letter of the source word.
    """

    vertices: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, int], ...]
    mode: str
    n: int

    def out_edges(self, src: int):
        return [e for e in self.edges if e[0] == src]

    def __len__(self):
        return len(self.vertices)


def build_promotion_graph(P: Poset, mode: str, cap: int = DEFAULT_EXTENSION_CAP) -> PromotionGraph:
    """Graph of all seed promotions on L(P), weighted per ``mode``
    ("uniform": weight index j; "promotion": weight index word[j-1])."""
    if mode not in ("uniform", "promotion"):
        raise ValueError(f"mode must be 'uniform' or 'promotion', got {mode!r}")
    verts = linear_extensions(P, cap)
    index = {w: i for i, w in enumerate(verts)}
    edges = []
    for s, word in enumerate(verts):
        for j in range(1, P.n + 1):
            target = _promote_fast(P, word, j)
            label = j if mode == "uniform" else word[j - 1]
            edges.append((s, index[target], label))
    return PromotionGraph(tuple(verts), tuple(edges), mode, P.n)


def strongly_connected_components(n: int, adjacency) -> list[list[int]]:
    """Tarjan's algorithm, iterative; adjacency maps vertex -> iterable of
    successors.  Components are returned in discovery order."""
    index = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(adjacency(root)))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(adjacency(w))))
                    advanced = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
    return components


def is_strongly_connected(G: PromotionGraph) -> bool:
    """True iff every ordered vertex pair is joined by a directed path."""
    nverts = len(G.vertices)
    if nverts <= 1:
        return True
    adj = [[] for _ in range(nverts)]
    for s, d, _ in G.edges:
        if s != d:
            adj[s].append(d)
    return len(strongly_connected_components(nverts, lambda v: adj[v])) == 1


def graph_to_dot(G: PromotionGraph, include_loops: bool = True) -> str:
    """Graphviz rendering; vertices carry one-line words, edges x<k> labels."""
    lines = ["digraph promotion {"]
    for i, word in enumerate(G.vertices):
        label = "".join(str(a) for a in word) if G.n < 10 else ",".join(map(str, word))
        lines.append(f'  v{i} [label="{label}"];')
    for s, d, k in G.edges:
        if s == d and not include_loops:
            continue
        lines.append(f'  v{s} -> v{d} [label="x{k}"];')
    lines.append("}")
    return "\n".join(lines)
