import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcopt.errors import GraphFormatError
from pcopt.graph import (
    EdgeColoring,
    Graph,
    complete,
    complete_bipartite,
    components,
    cycle,
    generate,
    induced_subgraph,
    parse_family,
    parse_graph,
    path,
    random_connected,
    random_tree,
    star,
    write_graph,
)

from .conftest import connected_graphs, to_nx


def test_parse_path():
    g = parse_graph("3 2\n0 1\n1 2")
    assert g.n == 3 and g.m == 2
    assert g.edges == ((0, 1), (1, 2))


def test_parse_single_vertex():
    g = parse_graph("1 0\n")
    assert g.n == 1 and g.m == 0


def test_parse_star():
    assert parse_graph("4 3\n0 1\n0 2\n0 3\n") == star(3)


def test_parse_order_insensitive():
    assert parse_graph("4 3\n2 3\n0 1\n1 2\n") == parse_graph("4 3\n0 1\n1 2\n2 3\n")


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("3 2\n0 1\n1 x\n", 3, "two nonnegative integers"),
        ("3 1\n0 3\n", 2, "out of range"),
        ("3 2\n0 1\n1 0\n", 3, "duplicate"),
        ("3 1\n2 2\n", 2, "self-loop"),
        ("3  1\n0 1\n", 1, "two nonnegative integers"),
    ],
)
def test_parse_errors_name_line(text, line, fragment):
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)
    assert f"line {line}" in str(exc.value)


def test_parse_edge_count_mismatch():
    with pytest.raises(GraphFormatError):
        parse_graph("3 2\n0 1\n")


@given(connected_graphs(max_n=9))
def test_write_parse_round_trip(g):
    text = write_graph(g)
    assert parse_graph(text) == g
    assert write_graph(parse_graph(text)) == text


def test_writer_sorts_edges():
    assert write_graph(parse_graph("3 2\n1 2\n0 1")) == "3 2\n0 1\n1 2\n"


@given(connected_graphs(max_n=9))
def test_adjacency_symmetric(g):
    for u in range(g.n):
        for v in range(g.n):
            assert g.has_edge(u, v) == g.has_edge(v, u)
    assert g.m == len(set(g.edges))


def test_graph_rejects_loops_and_duplicates():
    with pytest.raises(ValueError):
        Graph(2, ((0, 0),))
    with pytest.raises(ValueError):
        Graph(2, ((0, 1), (1, 0)))


def test_families():
    assert complete(4).m == 6
    assert complete_bipartite(7, 2).m == 14
    assert cycle(5).m == 5 and all(cycle(5).degree(v) == 2 for v in range(5))
    assert star(5).degree(0) == 5
    assert generate("path", 4) == path(4)


def test_random_tree_8_seed_1():
    t = random_tree(8, seed=1)
    assert t.m == 7 and t.is_connected()
    assert nx.is_tree(to_nx(t))


@given(st.integers(1, 15), st.integers(0, 10_000))
def test_random_tree_is_tree(n, seed):
    t = random_tree(n, seed)
    assert t.m == n - 1 and t.is_connected()


@settings(max_examples=40)
@given(st.integers(1, 12), st.floats(0.2, 1.0), st.integers(0, 10_000))
def test_random_connected(n, p, seed):
    g = random_connected(n, p, seed)
    assert g.is_connected()
    assert g == random_connected(n, p, seed)


def test_generator_errors():
    with pytest.raises(ValueError):
        path(0)
    with pytest.raises(ValueError):
        random_connected(5, 1.5, seed=0)
    with pytest.raises(ValueError):
        generate("petersen")
    with pytest.raises(ValueError):
        parse_family("random_tree:5")


def test_parse_family():
    assert parse_family("complete_bipartite:7,2") == complete_bipartite(7, 2)
    assert parse_family("random_tree:6", seed=3) == random_tree(6, 3)


def test_components():
    assert components(path(3)) == [(0, 1, 2)]
    assert components(parse_graph("4 2\n0 1\n2 3\n")) == [(0, 1), (2, 3)]
    g, _ = star(5).remove_vertex(0)
    assert components(g) == [(0,), (1,), (2,), (3,), (4,)]


@given(connected_graphs(max_n=9).map(lambda g: g), st.integers(0, 2**16))
def test_components_partition(g, salt):
    keep = [v for v in range(g.n) if (salt >> (v % 16)) & 1]
    h, _ = induced_subgraph(g, keep)
    parts = components(h)
    assert sorted(v for p in parts for v in p) == list(range(h.n))
    assert sorted(map(sorted, parts)) == sorted(map(sorted, nx.connected_components(to_nx(h))))


def test_induced_subgraph_examples():
    k3, back = induced_subgraph(complete(5), [1, 3, 4])
    assert k3 == complete(3) and back == (1, 3, 4)
    empty, _ = induced_subgraph(cycle(6), [0, 2, 4])
    assert empty.m == 0 and empty.n == 3
    s, back = induced_subgraph(complete_bipartite(3, 3), [0, 1, 2, 3])
    assert sorted(s.degree(v) for v in range(4)) == [1, 1, 1, 3]
    assert nx.is_isomorphic(to_nx(s), nx.star_graph(3))


@given(connected_graphs(max_n=8))
def test_induced_identity(g):
    h, back = induced_subgraph(g, range(g.n))
    assert h == g and back == tuple(range(g.n))


def test_induced_subgraph_out_of_range():
    with pytest.raises(ValueError):
        induced_subgraph(path(3), [0, 5])


def test_edge_coloring_defaults_to_one():
    c = EdgeColoring(path(3), {(2, 1): 2})
    assert c.color(0, 1) == 1 and c.color(1, 2) == 2
    with pytest.raises(ValueError):
        EdgeColoring(path(3), {(0, 2): 2})
    with pytest.raises(ValueError):
        EdgeColoring(path(3), {(0, 1): 0})
