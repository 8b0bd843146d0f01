import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from promlex.errors import IndexOutOfRange, NotALinearExtension
from promlex.families import all_posets, all_rooted_forests
from promlex.posets import Poset, antichain_poset, chain_poset, linear_extensions
from promlex.promotion import (
    build_promotion_graph,
    extended_promotion,
    extended_promotion_jdt,
    forest_move_to_end,
    graph_to_dot,
    hat_promotion,
    is_strongly_connected,
    strongly_connected_components,
    tau,
)


# ----------------------------------------------------------------------
# tau


def test_tau_running_example(running_example):
    assert tau(running_example, (1, 2, 3, 4), 1) == (2, 1, 3, 4)
    assert tau(running_example, (1, 2, 3, 4), 2) == (1, 2, 3, 4)  # 2 and 3 comparable


def test_tau_errors(running_example):
    with pytest.raises(IndexOutOfRange):
        tau(running_example, (1, 2, 3, 4), 4)
    with pytest.raises(IndexOutOfRange):
        tau(running_example, (1, 2, 3, 4), 0)
    with pytest.raises(NotALinearExtension):
        tau(running_example, (3, 1, 2, 4), 1)


def test_tau_involution_everywhere():
    for n in range(2, 5):
        for P in all_posets(n):
            for word in linear_extensions(P):
                for i in range(1, n):
                    once = tau(P, word, i)
                    assert tau(P, once, i) == word
                    # locality: only positions i, i+1 can move
                    assert all(once[k] == word[k] for k in range(n) if k not in (i - 1, i))


# ----------------------------------------------------------------------
# extended promotion


def test_promotion_nine_element_slide(nine_element_poset):
    assert extended_promotion(nine_element_poset, tuple(range(1, 10)), 1) == (2, 1, 4, 5, 3, 7, 8, 6, 9)


def test_promotion_running_example(running_example):
    assert extended_promotion(running_example, (1, 2, 3, 4), 1) == (2, 1, 4, 3)


def test_promotion_seed_n_is_identity():
    for P in all_posets(4):
        for word in linear_extensions(P):
            assert extended_promotion(P, word, P.n) == word


def test_jdt_nine_element_slide(nine_element_poset):
    assert extended_promotion_jdt(nine_element_poset, tuple(range(1, 10)), 1) == (2, 1, 4, 5, 3, 7, 8, 6, 9)
    assert extended_promotion_jdt(running := Poset(4, [(1, 3), (1, 4), (2, 3)]), (1, 2, 3, 4), 4) == (1, 2, 3, 4)


def test_jdt_agrees_with_tau_product_exhaustively():
    # every poset up to size 5, every extension, every seed
    for n in range(1, 6):
        for P in all_posets(n):
            for word in linear_extensions(P):
                for j in range(1, n + 1):
                    assert extended_promotion_jdt(P, word, j) == extended_promotion(P, word, j)


def test_promotion_bijective_on_extensions():
    # each seed operator permutes the extension set (size up to 6)
    for n in range(1, 7):
        for P in all_posets(n):
            exts = linear_extensions(P)
            ext_set = set(exts)
            for j in range(1, n + 1):
                images = {extended_promotion(P, w, j) for w in exts}
                assert images == ext_set


# ----------------------------------------------------------------------
# hat promotion


def test_hat_promotion_two_chain_example():
    P = Poset(5, [(1, 2), (2, 3), (4, 5)])
    assert hat_promotion(P, (4, 1, 2, 3, 5), 1) == (4, 1, 2, 5, 3)


def test_hat_promotion_move_to_end_on_antichain():
    A = antichain_poset(3)
    assert hat_promotion(A, (2, 1, 3), 2) == (1, 3, 2)


def test_hat_promotion_label_out_of_range(running_example):
    with pytest.raises(IndexOutOfRange):
        hat_promotion(running_example, (1, 2, 3, 4), 5)
    with pytest.raises(IndexOutOfRange):
        hat_promotion(running_example, (1, 2, 3, 4), 0)


def test_hat_promotion_fixed_when_last():
    for P in all_posets(4):
        for word in linear_extensions(P):
            assert hat_promotion(P, word, word[-1]) == word


def test_hat_promotion_matches_forest_description():
    # rooted forests up to size 6: label promotion = move-to-end-and-reorder
    for n in range(1, 7):
        for P in all_rooted_forests(n):
            for word in linear_extensions(P):
                for i in range(1, n + 1):
                    assert hat_promotion(P, word, i) == forest_move_to_end(P, word, i)


# ----------------------------------------------------------------------
# graphs


def test_uniform_graph_running_example(running_example):
    G = build_promotion_graph(running_example, "uniform")
    words = G.vertices
    idx = {w: i for i, w in enumerate(words)}
    edges = set(G.edges)
    assert (idx[(1, 2, 3, 4)], idx[(2, 1, 4, 3)], 1) in edges
    # the seed-n operator loops at every vertex with weight x_4
    for i in range(len(words)):
        assert (i, i, 4) in edges
    # out-degree n everywhere, counting parallel edges
    for i in range(len(words)):
        assert len(G.out_edges(i)) == 4
        assert sum(1 for e in G.edges if e[1] == i) == 4


def test_promotion_graph_parallel_edges(running_example):
    G = build_promotion_graph(running_example, "promotion")
    idx = {w: i for i, w in enumerate(G.vertices)}
    s, d = idx[(1, 4, 2, 3)], idx[(1, 2, 3, 4)]
    labels = sorted(k for (a, b, k) in G.edges if (a, b) == (s, d))
    assert labels == [1, 4]  # two distinct weights on parallel edges


def test_strongly_connected_sweep():
    for n in range(1, 6):
        for P in all_posets(n):
            G = build_promotion_graph(P, "promotion")
            assert is_strongly_connected(G)


def test_single_vertex_graph_connected():
    G = build_promotion_graph(chain_poset(3), "uniform")
    assert len(G.vertices) == 1
    assert is_strongly_connected(G)


def test_scc_helper_on_disconnected_graph():
    comps = strongly_connected_components(4, lambda v: {0: [1], 1: [0], 2: [3], 3: []}[v])
    assert sorted(sorted(c) for c in comps) == [[0, 1], [2], [3]]


def test_dot_export(running_example):
    G = build_promotion_graph(running_example, "uniform")
    dot = graph_to_dot(G)
    assert 'label="1234"' in dot and '[label="x1"]' in dot
    stripped = graph_to_dot(G, include_loops=False)
    for i in range(len(G.vertices)):
        assert f"v{i} -> v{i} " not in stripped


# ----------------------------------------------------------------------
# properties


posets3to5 = st.sampled_from([P for n in range(3, 6) for P in all_posets(n)])


@given(posets3to5, st.data())
@settings(max_examples=60, deadline=None)
def test_promotion_preserves_extension_set(P, data):
    exts = linear_extensions(P)
    word = data.draw(st.sampled_from(exts))
    j = data.draw(st.integers(1, P.n))
    assert extended_promotion(P, word, j) in set(exts)
