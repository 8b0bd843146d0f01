import pytest

from promlex.errors import CapExceeded, NotClosed
from promlex.families import all_rooted_forests
from promlex.monoid import (
    MonoidElement,
    eggbox,
    eggbox_ascii,
    eggbox_to_dot,
    generate_monoid,
    generators,
    green_classes,
    is_aperiodic,
    is_r_trivial,
    promotion_monoid,
    rfactor_stats,
)
from promlex.posets import antichain_poset, chain_poset, linear_extensions

from conftest import nonlinear_spectrum_posets


# ----------------------------------------------------------------------
# generators


def test_generators_example_monoid(example_monoid_poset):
    # basis is [123, 132, 312]
    g1, g2, g3 = generators(example_monoid_poset)
    assert g1.table == (1, 2, 2)
    assert g2.table == (1, 1, 2)
    assert g3.table == (0, 0, 0)  # the constant map onto the identity


def test_generator_matrices_example(example_monoid_poset):
    g1, g2, g3 = generators(example_monoid_poset)
    assert g1.as_matrix() == [[0, 0, 0], [1, 0, 0], [0, 1, 1]]
    assert g2.as_matrix() == [[0, 0, 0], [1, 1, 0], [0, 0, 1]]
    assert g3.as_matrix() == [[1, 1, 1], [0, 0, 0], [0, 0, 0]]


def test_generators_antichain_move_to_end():
    A = antichain_poset(3)
    gens = generators(A)
    words = linear_extensions(A)
    for i, g in enumerate(gens, start=1):
        for s, word in enumerate(words):
            expected = tuple(a for a in word if a != i) + (i,)
            assert words[g.table[s]] == expected


def test_generators_chain_identity():
    gens = generators(chain_poset(4))
    assert all(g.table == (0,) for g in gens)


# ----------------------------------------------------------------------
# closure


def test_example_monoid_has_six_elements(example_monoid_poset):
    M = promotion_monoid(example_monoid_poset)
    assert len(M) == 6
    # the six maps: identity, two generators, three constants
    tables = {e.table for e in M}
    assert tables == {(0, 1, 2), (1, 2, 2), (1, 1, 2), (0, 0, 0), (1, 1, 1), (2, 2, 2)}


def test_generate_monoid_identity_only(example_monoid_poset):
    gens = generators(example_monoid_poset)
    ident = MonoidElement((0, 1, 2), gens[0].ctx)
    M = generate_monoid([ident])
    assert len(M) == 1 and M[0] == ident


def test_generate_monoid_cap():
    with pytest.raises(CapExceeded):
        promotion_monoid(antichain_poset(3), cap=3)


def test_discovery_order_deterministic(example_monoid_poset):
    a = promotion_monoid(example_monoid_poset)
    b = promotion_monoid(example_monoid_poset)
    assert [e.table for e in a] == [e.table for e in b]
    assert a[0].table == (0, 1, 2)  # identity first


# ----------------------------------------------------------------------
# Green's relations


def test_example_monoid_r_trivial(example_monoid_poset):
    M = promotion_monoid(example_monoid_poset)
    g = green_classes(M)
    assert len(set(g.r_of)) == len(M)  # all R-classes singletons
    assert is_r_trivial(M)


def test_running_example_not_r_trivial(running_example):
    M = promotion_monoid(running_example)
    assert not is_r_trivial(M)
    assert not is_aperiodic(M)
    g = green_classes(M)
    sizes = sorted(len(c) for c in g.classes("R"))
    assert sizes[-1] > 1


def test_trivial_monoid_single_class():
    M = promotion_monoid(chain_poset(3))
    assert len(M) == 1
    g = green_classes(M)
    assert g.classes("R") == [[0]] and g.classes("D") == [[0]]
    assert is_r_trivial(M) and is_aperiodic(M)


def test_forests_r_trivial_small():
    for n in range(1, 5):
        for P in all_rooted_forests(n):
            M = promotion_monoid(P)
            assert is_r_trivial(M)
            assert is_aperiodic(M)  # R-trivial implies aperiodic


def test_opposite_monoid_duality():
    # reading elements as right-acting operators swaps R and L: the monoid
    # is R-trivial iff the transposed-action L-classes are singletons
    for n in range(1, 5):
        for P in all_rooted_forests(n):
            M = promotion_monoid(P)
            g_t = green_classes(M, transpose=True)
            assert len(set(g_t.l_of)) == len(M)


def test_green_classes_reject_unclosed(example_monoid_poset):
    gens = generators(example_monoid_poset)
    with pytest.raises(NotClosed):
        green_classes(gens)  # generators alone are not closed


# ----------------------------------------------------------------------
# rfactor / u statistic


def test_rfactor_identity_and_constant(running_example):
    M = promotion_monoid(running_example)
    ident = M[0]
    st = rfactor_stats(ident)
    assert st.u == (4, 0) and st.rfactor == ()
    constants = [x for x in M if x.is_constant()]
    assert constants
    for c in constants:
        assert rfactor_stats(c).u == (0, 4)


def test_rfactor_g3_contains_3(example_monoid_poset):
    g3 = generators(example_monoid_poset)[2]
    st = rfactor_stats(g3)
    assert 3 in st.Rfactor


def test_rfactor_is_upper_set_on_forests():
    for n in range(1, 5):
        for P in all_rooted_forests(n):
            for x in promotion_monoid(P):
                R = rfactor_stats(x).Rfactor
                assert all(P.up_set(a) & ~_mask(R) == 0 for a in R)


def _mask(s):
    m = 0
    for a in s:
        m |= 1 << (a - 1)
    return m


def test_u_statistic_properties_small():
    # products never increase u; some generator strictly decreases it
    for n in range(1, 5):
        for P in all_rooted_forests(n):
            M = promotion_monoid(P)
            u = {x.table: rfactor_stats(x).u for x in M}
            for x in M:
                for y in M:
                    assert u[(x * y).table] <= u[x.table]
            for x in M:
                if not x.is_constant():
                    assert any(u[(x * g).table] < u[x.table] for g in M.gens)


def test_idempotent_rfactor_matches_left_stabilizer_on_forests():
    # observed property for rooted forests: for idempotents, the right
    # factor letter set coincides with the set of labels whose generator
    # fixes the element (the left stabilizer of the right action)
    for n in range(1, 5):
        for P in all_rooted_forests(n):
            M = promotion_monoid(P)
            for x in M:
                if x.is_idempotent():
                    st = rfactor_stats(x)
                    assert st.Rfactor == st.des


# ----------------------------------------------------------------------
# egg-box pictures


def test_eggbox_running_example(running_example):
    box = eggbox(promotion_monoid(running_example))
    assert box.shapes() == sorted(
        [
            (1, 1, 1),
            (1, 1, 1),
            (1, 1, 1),
            (1, 1, 0),
            (2, 1, 0),
            (1, 2, 2),
            (1, 2, 0),
            (1, 5, 5),
            (2, 2, 0),
        ]
    )


def test_eggbox_second_nonlinear_poset():
    box = eggbox(promotion_monoid(nonlinear_spectrum_posets()[1]))
    assert box.shapes() == [(1, 1, 1), (1, 3, 3), (3, 3, 6)]


def test_eggbox_example_monoid_cells(example_monoid_poset):
    box = eggbox(promotion_monoid(example_monoid_poset))
    cells = [cell for grid in box.grids for row in grid.cells for cell in row]
    assert len(cells) == 6 and all(len(c) == 1 for c in cells)


def test_eggbox_trivial_monoid():
    box = eggbox(promotion_monoid(chain_poset(2)))
    assert box.shapes() == [(1, 1, 1)]


def test_eggbox_renderings(running_example):
    box = eggbox(promotion_monoid(running_example))
    text = eggbox_ascii(box)
    assert "D-class" in text and "|*|" in text
    dot = eggbox_to_dot(box)
    assert dot.startswith("digraph") and "&#9733;" in dot


# ----------------------------------------------------------------------
# element algebra


def test_element_multiplication_is_matrix_composition(example_monoid_poset):
    g1, g2, _ = generators(example_monoid_poset)
    prod = g1 * g2  # apply g2 first, then g1
    assert prod.table == tuple(g1.table[t] for t in g2.table)


def test_element_requires_common_basis(example_monoid_poset, running_example):
    a = generators(example_monoid_poset)[0]
    b = generators(running_example)[0]
    with pytest.raises(NotClosed):
        a * b


def test_idempotent_and_constant_flags(example_monoid_poset):
    M = promotion_monoid(example_monoid_poset)
    for x in M:
        assert x.is_idempotent() == ((x * x).table == x.table)
    assert sum(1 for x in M if x.is_constant()) == 3
