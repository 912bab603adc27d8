import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from sepwidth.errors import GraphValidationError, ParseError
from sepwidth.generators import FamilySpec, generate
from sepwidth.graph import (
    GSeparation,
    Graph,
    Separation,
    Subgraph,
    check_g_separation,
    check_separation,
    components,
    format_edge_list,
    induced_subgraph,
    parse_edge_list,
    separation_to_g_separation,
)
from sepwidth.rational import format_rational, parse_rational
from fractions import Fraction


def path(n):
    return generate(FamilySpec("path", (n,)))


def cycle(n):
    return generate(FamilySpec("cycle", (n,)))


def complete(n):
    return generate(FamilySpec("complete", (n,)))


def test_parse_basic():
    G = parse_edge_list("0 1\n1 2")
    assert G.n == 3 and G.edges == {(0, 1), (1, 2)}


def test_parse_header_keeps_isolated_vertex():
    G = parse_edge_list("n 4\n0 1")
    assert G.n == 4 and G.m == 1 and G.degree(3) == 0


def test_parse_comments_and_duplicates():
    G = parse_edge_list("# a comment\n0 1\n1 0\n\n2 1\n")
    assert G.n == 3 and G.m == 2


def test_parse_loop_rejected():
    with pytest.raises(GraphValidationError):
        parse_edge_list("0 0")


@pytest.mark.parametrize("text,line", [("0 1\n1 x", 2), ("0 1 2", 1), ("n four", 1), ("-1 2", 1)])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_edge_list(text)
    assert exc.value.line == line


def test_parse_id_above_header():
    with pytest.raises(GraphValidationError):
        parse_edge_list("n 2\n0 2")


@given(graphs())
def test_serialize_roundtrip(G):
    text = format_edge_list(G)
    assert parse_edge_list(text) == G
    assert format_edge_list(parse_edge_list(text)) == text


def test_induced_subgraph_examples():
    K3, ids = induced_subgraph(complete(4), {0, 2, 3})
    assert K3 == complete(3) and ids == (0, 2, 3)
    H, _ = induced_subgraph(path(5), {0, 2, 4})
    assert H.n == 3 and H.m == 0
    P4, _ = induced_subgraph(cycle(6), {0, 1, 2, 3})
    assert P4 == path(4)
    with pytest.raises(ValueError):
        induced_subgraph(path(3), {5})


def test_components_examples():
    assert components(path(5)) == [frozenset(range(5))]
    assert components(Graph(3, frozenset())) == [frozenset({0}), frozenset({1}), frozenset({2})]
    two = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert [len(c) for c in components(two)] == [3, 3]


@given(graphs())
def test_components_partition(G):
    comps = components(G)
    assert sorted(v for c in comps for v in c) == list(range(G.n))
    assert [min(c) for c in comps] == sorted(min(c) for c in comps)
    for u, v in G.edges:
        assert any(u in c and v in c for c in comps)
    for c in comps:
        H, _ = induced_subgraph(G, c)
        assert len(components(H)) == 1


def test_check_separation_examples():
    r = check_separation(path(5), Separation({0, 1, 2}, {2, 3, 4}))
    assert r.valid and r.order == 1 and r.balanced
    assert not check_separation(complete(3), Separation({0, 1}, {2})).valid
    r = check_separation(Graph(1, frozenset()), Separation({0}, {0}))
    assert r.valid and r.order == 1 and r.balanced
    with pytest.raises(ValueError):
        check_separation(path(3), Separation({0, 7}, {1, 2}))


def test_whole_vertex_set_on_both_sides_is_a_separation():
    G = complete(4)
    r = check_separation(G, Separation(G.vertices, G.vertices))
    assert r.valid and r.order == 4


@st.composite
def graph_and_sep(draw):
    G = draw(graphs(min_n=1))
    labels = draw(st.lists(st.sampled_from((0, 1, 2)), min_size=G.n, max_size=G.n))
    A = {v for v in range(G.n) if labels[v] != 1}
    B = {v for v in range(G.n) if labels[v] != 0}
    return G, Separation(A, B)


@given(graph_and_sep())
def test_separation_symmetry_and_g_separation(gs):
    G, sep = gs
    r1, r2 = check_separation(G, sep), check_separation(G, sep.reversed())
    assert r1.valid == r2.valid and r1.order == r2.order and r1.balanced == r2.balanced
    if r1.valid:
        g = separation_to_g_separation(G, sep)
        rg = check_g_separation(G, g)
        assert rg.valid and rg.order == r1.order


def test_check_g_separation_examples():
    K3 = complete(3)
    whole = GSeparation(Subgraph(K3.vertices, K3.edges), Subgraph(K3.vertices, set()))
    r = check_g_separation(K3, whole)
    assert r.valid and r.order == 3
    gs = GSeparation(Subgraph({0, 1}, {(0, 1)}), Subgraph({0, 1, 2}, {(0, 2), (1, 2)}))
    r = check_g_separation(K3, gs)
    assert r.valid and r.order == 2
    overlap = GSeparation(Subgraph({0, 1}, {(0, 1)}), Subgraph({0, 1, 2}, {(0, 1), (0, 2), (1, 2)}))
    assert not check_g_separation(K3, overlap).valid
    with pytest.raises(ValueError):
        check_g_separation(K3, GSeparation(Subgraph({0, 5}, set()), Subgraph(K3.vertices, K3.edges)))


def test_graph_invariants():
    with pytest.raises(GraphValidationError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(GraphValidationError):
        Graph.from_edges(2, [(1, 1)])
    assert Graph.from_edges(3, [(2, 0), (0, 2)]).edges == {(0, 2)}


def test_rationals():
    assert parse_rational("21/2") == Fraction(21, 2)
    assert parse_rational("6") == 6
    assert format_rational(Fraction(6)) == "6/1"
    assert format_rational(Fraction(2, 4)) == "1/2"
    for bad in ("0.5", "1e3", "1/0", "abc"):
        with pytest.raises(ParseError):
            parse_rational(bad)
