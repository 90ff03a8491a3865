import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satlab import (
    Graph,
    GraphFormatError,
    RngHandle,
    common_neighbors,
    complete_graph,
    disjoint_clique_extensions,
    find_clique,
    gnp_generate,
    greedy_coloring,
    parse_graph,
    serialize_graph,
)


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def small_graphs():
    """Hypothesis strategy: graphs on up to 8 vertices."""

    def build(n, picks):
        pairs = list(combinations(range(n), 2))
        edges = [e for e, keep in zip(pairs, picks) if keep]
        return Graph.from_edges(n, edges)

    return st.integers(min_value=0, max_value=8).flatmap(
        lambda n: st.builds(
            build,
            st.just(n),
            st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2),
        )
    )


# -- generation ---------------------------------------------------------


def test_gnp_p_zero_is_empty():
    assert gnp_generate(10, 0.0, RngHandle(4)).m == 0


def test_gnp_p_one_is_complete():
    G = gnp_generate(10, 1.0, RngHandle(4))
    assert G.m == 45
    assert G == complete_graph(10)


def test_gnp_edge_count_concentrates():
    # Binomial(C(1000,2), 1/2): stay within 5 sigma of the mean.
    G = gnp_generate(1000, 0.5, RngHandle(1))
    mean = 499500 * 0.5
    sigma = math.sqrt(499500 * 0.25)
    assert abs(G.m - mean) <= 5 * sigma


def test_gnp_reproducible_and_seed_sensitive():
    a = gnp_generate(300, 0.3, RngHandle(9).child(2))
    b = gnp_generate(300, 0.3, RngHandle(9).child(2))
    c = gnp_generate(300, 0.3, RngHandle(10).child(2))
    assert a == b
    assert a != c


@pytest.mark.parametrize("n,p", [(50, 0.2), (200, 0.5)])
def test_gnp_symmetric_no_self_loops(n, p):
    G = gnp_generate(n, p, RngHandle(2))
    M = G.matrix()
    assert not M.diagonal().any()
    assert np.array_equal(M, M.T)
    for v in range(n):
        assert not G.has_edge(v, v)


def test_gnp_rejects_bad_p():
    with pytest.raises(ValueError):
        gnp_generate(5, -0.1, RngHandle(0))
    with pytest.raises(ValueError):
        gnp_generate(5, 1.1, RngHandle(0))


def test_complete_graph_sizes():
    assert complete_graph(0).m == 0
    assert complete_graph(3).m == 3
    assert complete_graph(7).m == 21


# -- basic accessors ----------------------------------------------------


def test_edges_are_sorted_lexicographically():
    G = Graph.from_edges(4, [(2, 3), (0, 3), (0, 1)])
    assert list(G.edges()) == [(0, 1), (0, 3), (2, 3)]
    assert [tuple(e) for e in G.edge_array()] == [(0, 1), (0, 3), (2, 3)]


def test_induced_subgraph():
    G = complete_graph(5)
    sub = G.induced([1, 3, 4])
    assert sub == complete_graph(3)
    P3 = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert P3.induced([0, 2]).m == 0


def test_common_neighbors():
    star = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    assert common_neighbors(star, 1, 2) == {0}
    K4 = complete_graph(4)
    assert common_neighbors(K4, 0, 1) == {2, 3}
    assert common_neighbors(Graph.empty(6), 2, 5) == set()
    with pytest.raises(ValueError):
        common_neighbors(K4, 1, 1)


# -- find_clique --------------------------------------------------------


def test_find_clique_trivial_sizes():
    G = gnp_generate(6, 0.4, RngHandle(3))
    assert find_clique(G, None, 0) == set()
    assert find_clique(complete_graph(5), None, 5) == {0, 1, 2, 3, 4}


def test_find_clique_none_on_cycle():
    assert find_clique(cycle(5), None, 3) is None


def test_find_clique_respects_candidate_set():
    K5 = complete_graph(5)
    got = find_clique(K5, {0, 2, 4}, 3)
    assert got == {0, 2, 4}
    assert find_clique(K5, {0, 2}, 3) is None


def _naive_has_clique(G, S, r):
    return any(
        all(G.has_edge(u, v) for u, v in combinations(sub, 2))
        for sub in combinations(sorted(S), r)
    )


def test_find_clique_matches_exhaustive_enumeration():
    for seed in range(30):
        G = gnp_generate(11, 0.45, RngHandle(seed).stream(1))
        S = set(range(seed % 6, 11))
        for r in (2, 3, 4):
            got = find_clique(G, S, r)
            assert (got is not None) == _naive_has_clique(G, S, r)
            if got is not None:
                assert len(got) == r and got <= S
                assert all(G.has_edge(u, v) for u, v in combinations(sorted(got), 2))


# -- disjoint clique extensions -----------------------------------------


def test_extensions_complete_graph():
    got = disjoint_clique_extensions(complete_graph(6), {0, 1}, 2, 10)
    assert len(got) == 2
    union = set()
    for ext in got:
        assert len(ext) == 2
        union |= ext
    assert union <= {2, 3, 4, 5} and len(union) == 4


def test_extensions_empty_graph():
    assert disjoint_clique_extensions(Graph.empty(5), {0}, 1, 10) == []


def test_extensions_are_valid_and_disjoint():
    for seed in range(10):
        G = gnp_generate(40, 0.5, RngHandle(seed).stream(2))
        got = disjoint_clique_extensions(G, {0, 1, 2}, 2, 50)
        seen = set()
        for ext in got:
            assert len(ext) == 2
            assert not ext & {0, 1, 2}
            assert not ext & seen
            seen |= ext
            for y in ext:
                for x in (0, 1, 2):
                    assert G.has_edge(x, y)
            u, v = sorted(ext)
            assert G.has_edge(u, v)


def test_singleton_extension_count_is_binomial():
    # For |X|=2, y=1 the count equals |N(u) cap N(v)| ~ Binomial(198, p^2);
    # per-group probability p^(C(3,2)-C(2,2)) = p^2 = 1/4. Stay within
    # 5 sigma of the mean.
    mean = 198 * 0.25
    sigma = math.sqrt(198 * 0.25 * 0.75)
    for seed in range(5):
        G = gnp_generate(200, 0.5, RngHandle(seed).stream(3))
        got = disjoint_clique_extensions(G, {0, 1}, 1, 200)
        assert abs(len(got) - mean) <= 5 * sigma
        assert len(got) == len(common_neighbors(G, 0, 1))


# -- greedy coloring ----------------------------------------------------


def test_coloring_edgeless_single_class():
    G = Graph.empty(7)
    assert greedy_coloring(G, list(range(7))) == [set(range(7))]


def test_coloring_complete_graph_needs_n_classes():
    assert len(greedy_coloring(complete_graph(6), list(range(6)))) == 6


def test_coloring_classes_are_independent_and_cover():
    for seed in range(5):
        G = gnp_generate(60, 0.4, RngHandle(seed).stream(4))
        order = RngHandle(seed).stream(5).generator().permutation(60).tolist()
        classes = greedy_coloring(G, order)
        covered = set()
        for cls in classes:
            for u, v in combinations(sorted(cls), 2):
                assert not G.has_edge(u, v)
            assert not cls & covered
            covered |= cls
        assert covered == set(range(60))


def test_coloring_deterministic_given_order():
    G = gnp_generate(40, 0.5, RngHandle(8))
    order = list(range(39, -1, -1))
    assert greedy_coloring(G, order) == greedy_coloring(G, order)


def test_coloring_rejects_non_permutation():
    with pytest.raises(ValueError):
        greedy_coloring(Graph.empty(3), [0, 0, 2])


def test_coloring_class_count_on_dense_random_graphs():
    # Greedy stays within 1.5 n / log2 n on G(2000, 1/2) for every seed.
    bound = 1.5 * 2000 / math.log2(2000)
    for seed in range(10):
        G = gnp_generate(2000, 0.5, RngHandle(seed).stream(6))
        order = RngHandle(seed).stream(7).generator().permutation(2000).tolist()
        assert len(greedy_coloring(G, order)) <= bound


# -- edge-list format ---------------------------------------------------


def test_parse_path_graph():
    G = parse_graph("3 2\n0 1\n1 2\n")
    assert G == Graph.from_edges(3, [(0, 1), (1, 2)])


def test_serialize_triangle():
    assert serialize_graph(complete_graph(3)) == "3 3\n0 1\n0 2\n1 2\n"


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("", "header"),
        ("3\n", "header"),
        ("a b\n", "header"),
        ("2 1\n0 0\n", "self-loop"),
        ("2 1\n0 5\n", "out of range"),
        ("3 2\n0 1\n0 1\n", "duplicate"),
        ("3 1\n1 0\n", "out of order"),
        ("3 2\n0 1\n", "expected 2 edge lines"),
        ("2 1\nx y\n", "malformed edge"),
    ],
)
def test_parse_errors_are_distinct(text, fragment):
    with pytest.raises(GraphFormatError) as err:
        parse_graph(text)
    assert fragment in str(err.value)


def test_roundtrip_on_generated_graphs():
    for seed in range(5):
        G = gnp_generate(n=57, p=0.3, rng=RngHandle(seed).stream(8))
        assert parse_graph(serialize_graph(G)) == G


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_roundtrip_identity(G):
    assert parse_graph(serialize_graph(G)) == G


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_edge_count_matches_edges(G):
    assert G.m == len(list(G.edges()))
