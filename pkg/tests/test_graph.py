import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unirigid.errors import GraphError, GraphParseError
from unirigid.graph import (
    Graph,
    brute_force_connectivity,
    components,
    generate,
    min_separator,
    parse_graph,
    random_graph,
    vertex_connectivity,
)


def test_parse_c4():
    g = parse_graph("4 4\n1 2\n2 3\n3 4\n4 1")
    assert g.n == 4
    assert g.sorted_edges() == [(1, 2), (1, 4), (2, 3), (3, 4)]


def test_parse_comments_and_crlf():
    g = parse_graph("# a square\r\n4 4\r\n1 2\r\n# middle\r\n2 3\r\n3 4\r\n4 1\r\n")
    assert g == generate("cycle", [4])


@pytest.mark.parametrize(
    "text, kind, line",
    [
        ("3 1\n1 1", "self_loop", 2),
        ("3 1\n1 4", "out_of_range", 2),
        ("3 2\n1 2\n2 1", "duplicate_edge", 3),
        ("3 1\n1 x", "malformed", 2),
        ("3 1\n1 2 3", "malformed", 2),
        ("3 2\n1 2", "edge_count", 1),
        ("", "malformed", 0),
    ],
)
def test_parse_errors(text, kind, line):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert info.value.kind == kind
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_text_round_trip():
    g = generate("circulant", [9, 2])
    assert parse_graph(g.to_text()) == g


def test_non_edges_complement():
    g = generate("cycle", [5])
    all_pairs = set(itertools.combinations(range(1, 6), 2))
    assert set(g.non_edges()) == all_pairs - g.edges


def test_graph_rejects_bad_edges():
    with pytest.raises(GraphError):
        Graph(3, frozenset({(1, 1)}))
    with pytest.raises(GraphError):
        Graph(3, frozenset({(1, 4)}))
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 2), (2, 1)])


def test_families():
    k33 = generate("complete_bipartite", [3, 3])
    assert len(k33.edges) == 9
    assert generate("cycle", [4]).sorted_edges() == [(1, 2), (1, 4), (2, 3), (3, 4)]


def test_circulant_8_2_by_enumeration():
    g = generate("circulant", [8, 2])
    expected = set()
    for i in range(8):
        for j in range(8):
            if i != j and min((i - j) % 8, (j - i) % 8) <= 2:
                expected.add((min(i, j) + 1, max(i, j) + 1))
    assert g.edges == expected
    assert len(g.edges) == 16
    assert all(g.degree(v) == 4 for v in g.nodes)


@pytest.mark.parametrize(
    "kind, params",
    [("cycle", [2]), ("path", [1]), ("circulant", [8, 4]), ("circulant", [8, 0]), ("complete_bipartite", [0, 3]), ("star", [3]), ("cycle", [4, 1])],
)
def test_generate_invalid(kind, params):
    with pytest.raises(GraphError):
        generate(kind, params)


@pytest.mark.parametrize(
    "kind, params, kappa",
    [
        ("complete_bipartite", [3, 3], 3),
        ("complete", [5], 4),
        ("path", [4], 1),
        ("cycle", [4], 2),
    ],
)
def test_connectivity_examples(kind, params, kappa):
    g = generate(kind, params)
    assert vertex_connectivity(g) == kappa
    assert brute_force_connectivity(g) == kappa


def test_disconnected_is_zero():
    g = Graph(5, frozenset({(1, 2), (3, 4), (4, 5)}))
    assert vertex_connectivity(g) == 0
    assert brute_force_connectivity(g) == 0


def test_connectivity_small_n():
    assert vertex_connectivity(generate("complete", [2])) == 1
    assert vertex_connectivity(Graph(2, frozenset())) == 0
    with pytest.raises(GraphError):
        vertex_connectivity(Graph(1, frozenset()))
    with pytest.raises(GraphError):
        brute_force_connectivity(generate("cycle", [13]))


def _analytic_cases():
    for n in range(3, 12):
        yield ("cycle", [n]), 2
        yield ("path", [n]), 1
        yield ("complete", [n]), n - 1
    for a in range(1, 5):
        for b in range(1, 5):
            if a + b >= 3:
                yield ("complete_bipartite", [a, b]), min(a, b)
    for n in range(5, 16):
        for k in range(1, (n - 1) // 2 + 1):
            if n >= 2 * k + 2:
                yield ("circulant", [n, k]), 2 * k


@pytest.mark.parametrize("family, kappa", list(_analytic_cases()))
def test_family_connectivity_matches_analytic(family, kappa):
    assert vertex_connectivity(generate(*family)) == kappa


def test_maxflow_matches_brute_force_on_200_random_graphs():
    for seed in range(200):
        n = 2 + seed % 7
        p = [0.3, 0.5, 0.7, 0.9][seed % 4]
        g = random_graph(n, p, seed)
        assert vertex_connectivity(g) == brute_force_connectivity(g), (seed, g)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 9), st.floats(0.2, 0.95), st.integers(0, 10**6))
def test_min_separator_disconnects(n, p, seed):
    g = random_graph(n, p, seed)
    if g.is_complete():
        return
    sep = min_separator(g)
    assert len(sep.nodes) == vertex_connectivity(g)
    assert len(components(g, sep.nodes)) >= 2
    assert sep.part1 and sep.part2
    assert set(sep.part1) | set(sep.part2) | set(sep.nodes) == set(g.nodes)
    for a in sep.part1:
        for b in sep.part2:
            assert not g.has_edge(a, b)


def test_min_separator_examples():
    sep = min_separator(generate("path", [3]))
    assert (sep.nodes, sep.part1, sep.part2) == ((2,), (1,), (3,))

    sep = min_separator(generate("cycle", [4]))
    assert set(sep.nodes) in ({1, 3}, {2, 4})
    assert len(sep.part1) == len(sep.part2) == 1

    g = generate("circulant", [8, 2])
    assert brute_force_connectivity(g) == 4
    sep = min_separator(g)
    assert len(sep.nodes) == 4
    assert len(components(g, sep.nodes)) >= 2


def test_min_separator_rejects_complete():
    with pytest.raises(GraphError):
        min_separator(generate("complete", [4]))
