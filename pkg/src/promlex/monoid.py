"""The transition monoid of the promotion chain and its Green's relations.

Each generator G_i is the 0/1 matrix obtained from the transition matrix by
setting x_i = 1 and every other weight to 0; as a map it sends a state pi to
pi acted on by the label-i promotion.  Elements are canonicalized by their
image table over the lex-ordered states.

Multiplication follows the matrix convention: (x*y) is the matrix product
x.y, i.e. the map that applies y first and then x.  With that convention the
right ideals x*M match matrix right-multiplication, Green's R-classes of the
transition monoid are computed directly, and the monoid of a rooted forest
is R-trivial.  The opposite (operator-composition) reading would swap the
roles of R and L; see ``green_classes`` for the transposed variant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceeded, NotClosed
from .posets import DEFAULT_EXTENSION_CAP, Poset, linear_extensions
from .promotion import _promote_fast, strongly_connected_components

DEFAULT_MONOID_CAP = 10**5


class MonoidContext:
    """Shared immutable data: the state words and the generator tables."""

    __slots__ = ("poset", "words", "index", "gen_tables")

    def __init__(self, poset, words, gen_tables):
        self.poset = poset
        self.words = tuple(words)
        self.index = {w: i for i, w in enumerate(self.words)}
        self.gen_tables = tuple(gen_tables)


class MonoidElement:
    """A total map on the state set, stored as its image table."""

    __slots__ = ("table", "ctx")

    def __init__(self, table, ctx: MonoidContext):
        self.table = tuple(table)
        self.ctx = ctx

    def __mul__(self, other: "MonoidElement") -> "MonoidElement":
        if self.ctx is not other.ctx:
            raise NotClosed("elements live over different bases")
        mine = self.table
        return MonoidElement(tuple(mine[t] for t in other.table), self.ctx)

    def __eq__(self, other):
        return isinstance(other, MonoidElement) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"MonoidElement({self.table})"

    def image(self) -> frozenset[int]:
        return frozenset(self.table)

    def is_idempotent(self) -> bool:
        t = self.table
        return all(t[x] == x for x in set(t))

    def is_constant(self) -> bool:
        return len(set(self.table)) == 1

    def as_matrix(self) -> list[list[int]]:
        """0/1 matrix view: column s carries a one in row table[s]."""
        size = len(self.table)
        m = [[0] * size for _ in range(size)]
        for s, t in enumerate(self.table):
            m[t][s] = 1
        return m


def generators(P: Poset, cap: int = DEFAULT_EXTENSION_CAP) -> list[MonoidElement]:
    """G_1..G_n: the transition matrix evaluated at each unit weight vector."""
    words = linear_extensions(P, cap)
    index = {w: i for i, w in enumerate(words)}
    tables = []
    for i in range(1, P.n + 1):
        tables.append(
            tuple(index[_promote_fast(P, w, w.index(i) + 1)] for w in words)
        )
    ctx = MonoidContext(P, words, tables)
    return [MonoidElement(t, ctx) for t in ctx.gen_tables]


class Monoid:
    """A finite transformation monoid, closed under product, identity first."""

    __slots__ = ("elements", "gens", "index", "ctx", "_right_edges", "_left_edges")

    def __init__(self, elements, gens):
        self.elements = tuple(elements)
        self.gens = tuple(gens)
        self.ctx = self.elements[0].ctx
        self.index = {e.table: i for i, e in enumerate(self.elements)}
        self._right_edges = None
        self._left_edges = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def element_index(self, x: MonoidElement) -> int:
        try:
            return self.index[x.table]
        except KeyError:
            raise NotClosed(f"{x!r} is not in the monoid") from None

    def right_edges(self) -> list[list[int]]:
        """right_edges[x][k] = index of elements[x] * gens[k]."""
        if self._right_edges is None:
            self._right_edges = [
                [self.element_index(x * g) for g in self.gens] for x in self.elements
            ]
        return self._right_edges

    def left_edges(self) -> list[list[int]]:
        if self._left_edges is None:
            self._left_edges = [
                [self.element_index(g * x) for g in self.gens] for x in self.elements
            ]
        return self._left_edges


def generate_monoid(gens, cap: int = DEFAULT_MONOID_CAP) -> Monoid:
    """Close the generators under product by breadth-first search.

    Discovery order is deterministic: the identity first, then products by
    generator word in radix order.  Raises CapExceeded past ``cap`` elements.
    """
    gens = list(gens)
    if not gens:
        raise NotClosed("need at least one generator")
    ctx = gens[0].ctx
    identity = MonoidElement(tuple(range(len(ctx.words))), ctx)
    elements = [identity]
    seen = {identity.table}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y.table not in seen:
                    if len(elements) >= cap:
                        raise CapExceeded(f"monoid closure exceeded cap {cap}")
                    seen.add(y.table)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    return Monoid(elements, gens)


def promotion_monoid(P: Poset, cap: int = DEFAULT_MONOID_CAP) -> Monoid:
    return generate_monoid(generators(P), cap)


def _as_monoid(m) -> Monoid:
    if isinstance(m, Monoid):
        return m
    elements = list(m)
    if not elements:
        raise NotClosed("empty element list")
    tables = {e.table for e in elements}
    for x in elements:
        for y in elements:
            if (x * y).table not in tables:
                raise NotClosed(f"product {x!r} * {y!r} falls outside the list")
    return Monoid(elements, elements)


# ----------------------------------------------------------------------
# Green's relations


@dataclass(frozen=True)
class GreenClasses:
    r_of: tuple[int, ...]
    l_of: tuple[int, ...]
    h_of: tuple[int, ...]
    d_of: tuple[int, ...]

    def classes(self, kind: str) -> list[list[int]]:
        of = {"R": self.r_of, "L": self.l_of, "H": self.h_of, "D": self.d_of}[kind]
        out: dict[int, list[int]] = {}
        for x, c in enumerate(of):
            out.setdefault(c, []).append(x)
        return [out[c] for c in sorted(out)]


def _partition_from_sccs(n: int, adjacency) -> tuple[int, ...]:
    comps = strongly_connected_components(n, adjacency)
    comps = sorted(comps, key=min)
    of = [0] * n
    for c, comp in enumerate(comps):
        for x in comp:
            of[x] = c
    return tuple(of)


def green_classes(m, transpose: bool = False) -> GreenClasses:
    """Partitions into R-, L-, H- and D-classes.

    R-classes are the strongly connected components of the right Cayley
    graph (x -> x*g), L-classes of the left one; H is their common
    refinement and D their join.  With ``transpose=True`` the roles of left
    and right multiplication are swapped, which presents the Green structure
    of the opposite (operator-composition) monoid.
    """
    M = _as_monoid(m)
    n = len(M)
    right = M.right_edges()
    left = M.left_edges()
    if transpose:
        right, left = left, right
    r_of = _partition_from_sccs(n, lambda x: right[x])
    l_of = _partition_from_sccs(n, lambda x: left[x])

    h_pairs: dict[tuple[int, int], int] = {}
    h_of = []
    for x in range(n):
        key = (r_of[x], l_of[x])
        h_pairs.setdefault(key, len(h_pairs))
        h_of.append(h_pairs[key])

    # D = join of R and L: union-find over elements
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    first_r: dict[int, int] = {}
    first_l: dict[int, int] = {}
    for x in range(n):
        if r_of[x] in first_r:
            union(first_r[r_of[x]], x)
        else:
            first_r[r_of[x]] = x
        if l_of[x] in first_l:
            union(first_l[l_of[x]], x)
        else:
            first_l[l_of[x]] = x
    roots = sorted({find(x) for x in range(n)})
    root_id = {r: i for i, r in enumerate(roots)}
    d_of = tuple(root_id[find(x)] for x in range(n))
    return GreenClasses(r_of, l_of, tuple(h_of), d_of)


def is_r_trivial(m) -> bool:
    """All R-classes singletons (equality of right ideals separates elements)."""
    M = _as_monoid(m)
    g = green_classes(M)
    return len(set(g.r_of)) == len(M)


def is_aperiodic(m) -> bool:
    """All H-classes singletons; equivalently no nontrivial subgroup."""
    M = _as_monoid(m)
    g = green_classes(M)
    return len(set(g.h_of)) == len(M)


# ----------------------------------------------------------------------
# Right-factor statistics


@dataclass(frozen=True)
class RfactorStats:
    rfactor: tuple[int, ...]  # maximal common suffix of the image words
    Rfactor: frozenset[int]  # its letter set
    des: frozenset[int]  # labels i with x * G_i = x
    u: tuple[int, int]  # (n - |Rfactor|, |des|), ordered lexicographically


def rfactor_stats(x: MonoidElement) -> RfactorStats:
    """Suffix statistics driving the convergence argument: products can only
    grow the common right factor, and a strict decrease of u is always
    available from a non-constant element."""
    ctx = x.ctx
    words = [ctx.words[s] for s in sorted(set(x.table))]
    n = len(words[0]) if words else 0
    k = 0
    while k < n and all(w[n - 1 - k] == words[0][n - 1 - k] for w in words):
        k += 1
    suffix = words[0][n - k :] if k else ()
    des = frozenset(
        i + 1
        for i, g in enumerate(ctx.gen_tables)
        if all(x.table[g[s]] == x.table[s] for s in range(len(g)))
    )
    return RfactorStats(suffix, frozenset(suffix), des, (n - k, len(des)))


# ----------------------------------------------------------------------
# Egg-box pictures


@dataclass(frozen=True)
class EggBoxGrid:
    cells: tuple[tuple[tuple[int, ...], ...], ...]  # rows x cols of H-classes
    stars: tuple[tuple[bool, ...], ...]

    @property
    def nrows(self) -> int:
        return len(self.cells)

    @property
    def ncols(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    def star_count(self) -> int:
        return sum(1 for row in self.stars for s in row if s)

    def shape(self) -> tuple[int, int, int]:
        return (self.nrows, self.ncols, self.star_count())


@dataclass(frozen=True)
class EggBox:
    grids: tuple[EggBoxGrid, ...]

    def shapes(self) -> list[tuple[int, int, int]]:
        return sorted(g.shape() for g in self.grids)


def eggbox(m) -> EggBox:
    """One grid per D-class, a star marking each H-class that contains an
    idempotent.  Rows are the maximal sets of elements generating the same
    two-sided orbit under left multiplication (the R-classes when elements
    are read as right-acting operators, i.e. the L-classes of the matrix
    product used here); with this orientation the constant maps line up in
    a single starred row.  Deterministic ordering: by class size, then by
    the smallest element index."""
    M = _as_monoid(m)
    g = green_classes(M)
    n = len(M)
    idem = [M[x].is_idempotent() for x in range(n)]

    d_members: dict[int, list[int]] = {}
    for x in range(n):
        d_members.setdefault(g.d_of[x], []).append(x)

    grids = []
    for d in sorted(d_members, key=lambda d: (len(d_members[d]), min(d_members[d]))):
        members = d_members[d]
        row_ids = sorted({g.l_of[x] for x in members}, key=lambda l: min(x for x in members if g.l_of[x] == l))
        col_ids = sorted({g.r_of[x] for x in members}, key=lambda r: min(x for x in members if g.r_of[x] == r))
        cells, stars = [], []
        for l in row_ids:
            row_cells, row_stars = [], []
            for r in col_ids:
                cell = tuple(x for x in members if g.l_of[x] == l and g.r_of[x] == r)
                row_cells.append(cell)
                row_stars.append(any(idem[x] for x in cell))
            cells.append(tuple(row_cells))
            stars.append(tuple(row_stars))
        grids.append(EggBoxGrid(tuple(cells), tuple(stars)))
    return EggBox(tuple(grids))


def eggbox_ascii(box: EggBox) -> str:
    lines = []
    for k, grid in enumerate(box.grids, 1):
        lines.append(f"D-class {k} ({grid.nrows}x{grid.ncols}):")
        for r in range(grid.nrows):
            row = "".join("|*" if grid.stars[r][c] else "| " for c in range(grid.ncols))
            lines.append("  " + row + "|")
    return "\n".join(lines)


def eggbox_to_dot(box: EggBox) -> str:
    lines = ["digraph eggbox {", "  node [shape=plaintext];"]
    for k, grid in enumerate(box.grids, 1):
        rows = []
        for r in range(grid.nrows):
            cells = "".join(
                f"<td>{'&#9733;' if grid.stars[r][c] else ' '}</td>" for c in range(grid.ncols)
            )
            rows.append(f"<tr>{cells}</tr>")
        table = f'<<table border="0" cellborder="1" cellspacing="0">{"".join(rows)}</table>>'
        lines.append(f"  d{k} [label={table}];")
    lines.append("}")
    return "\n".join(lines)
