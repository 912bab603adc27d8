import random

import pytest
from hypothesis import given, settings

from conftest import graphs
from oracles import min_balanced_order, sn_all_subgraphs, treewidth_by_permutations
from sepwidth.errors import CapabilityError
from sepwidth.generators import FamilySpec, generate
from sepwidth.graph import Graph, check_separation, induced_subgraph
from sepwidth.width import (
    elimination_width,
    min_balanced_separation,
    separation_number_exact,
    treewidth_exact,
    treewidth_upper_minfill,
)


def fam(name, *params):
    return generate(FamilySpec(name, params))


def edgeless(n):
    return Graph(n, frozenset())


@pytest.mark.parametrize("G,order", [(fam("path", 5), 1), (fam("cycle", 6), 2), (fam("complete", 6), 2)])
def test_min_balanced_examples(G, order):
    k, sep = min_balanced_separation(G)
    assert k == order
    r = check_separation(G, sep)
    assert r.valid and r.balanced and r.order == k


def test_min_balanced_empty_graph():
    k, sep = min_balanced_separation(Graph(0, frozenset()))
    assert k == 0 and not sep.A and not sep.B


@given(graphs(min_n=1, max_n=8))
def test_min_balanced_matches_labeling_oracle(G):
    k, sep = min_balanced_separation(G)
    assert k == min_balanced_order(G.n, G.edges)
    r = check_separation(G, sep)
    assert r.valid and r.balanced and r.order == k


def test_sn_examples():
    assert separation_number_exact(fam("complete", 6)).value == 2
    assert separation_number_exact(fam("path", 9)).value == 1
    assert separation_number_exact(fam("grid", 3, 3)).value == 2
    assert separation_number_exact(Graph(1, frozenset())).value == 1
    assert separation_number_exact(Graph(0, frozenset())).value == 0


def test_sn_edgeless_is_one_because_of_single_vertices():
    # the whole edgeless graph splits with order 0, but a one-vertex
    # subgraph has no balanced separation of order 0
    G = edgeless(6)
    assert min_balanced_separation(G)[0] == 0
    r = separation_number_exact(G)
    assert r.value == 1 and len(r.witness["S"]) == 1


@given(graphs(min_n=1, max_n=8))
def test_sn_witness_certifies(G):
    r = separation_number_exact(G)
    S = sorted(r.witness["S"])
    sub, ids = induced_subgraph(G, S)
    assert min_balanced_separation(sub)[0] == r.value
    sep = r.witness["separation"]
    assert sep.A | sep.B == set(S) and len(sep.A & sep.B) == r.value


@settings(max_examples=25)
@given(graphs(min_n=1, max_n=7))
def test_sn_equals_all_subgraphs_oracle(G):
    assert separation_number_exact(G).value == sn_all_subgraphs(G)


@given(graphs(min_n=1, max_n=8))
def test_sn_monotone_under_induced_subgraphs(G):
    sn = separation_number_exact(G).value
    S = [v for v in range(G.n) if v % 2 == 0]
    sub, _ = induced_subgraph(G, S)
    assert separation_number_exact(sub).value <= sn


def test_sn_cap():
    with pytest.raises(CapabilityError):
        separation_number_exact(fam("path", 15))
    assert separation_number_exact(fam("path", 15), limit=15).value == 1


def test_sn_cap_from_environment(monkeypatch):
    monkeypatch.setenv("SEPWIDTH_EXACT_CAP", "4")
    with pytest.raises(CapabilityError):
        separation_number_exact(fam("path", 5))
    with pytest.raises(CapabilityError):
        treewidth_exact(fam("path", 5))


def test_treewidth_examples():
    assert treewidth_exact(fam("complete", 5)).value == 4
    assert treewidth_exact(fam("grid", 3, 3)).value == 3
    assert treewidth_exact(fam("grid", 4, 4)).value == 4
    assert treewidth_exact(fam("cycle", 6)).value == 2
    for seed in range(5):
        assert treewidth_exact(generate(FamilySpec("tree", (12,), seed))).value == 1


@given(graphs(max_n=7))
def test_treewidth_matches_permutation_oracle(G):
    r = treewidth_exact(G)
    assert r.value == treewidth_by_permutations(G)
    assert sorted(r.witness) == list(range(G.n))
    assert elimination_width(G, r.witness) == r.value


@given(graphs(max_n=9))
def test_minfill_is_an_upper_bound(G):
    ub = treewidth_upper_minfill(G)
    assert not ub.exact
    assert ub.value >= treewidth_exact(G).value
    assert elimination_width(G, ub.witness) == ub.value


def test_minfill_examples():
    assert treewidth_upper_minfill(fam("complete", 5)).value == 4
    assert treewidth_upper_minfill(fam("cycle", 6)).value == 2


def _random_chordal(rng, n):
    # add vertices one at a time, each joined to a clique of earlier ones
    edges = []
    cliques = [[0]]
    for v in range(1, n):
        base = rng.choice(cliques)
        part = rng.sample(base, rng.randint(1, len(base)))
        edges += [(u, v) for u in part]
        cliques.append(part + [v])
    return Graph.from_edges(n, edges)


def test_minfill_exact_on_chordal():
    rng = random.Random(11)
    for _ in range(40):
        G = _random_chordal(rng, rng.randint(2, 12))
        assert treewidth_upper_minfill(G).value == treewidth_exact(G).value


@given(graphs(max_n=9))
def test_sn_at_most_tw_plus_one(G):
    if G.n:
        assert separation_number_exact(G).value <= treewidth_exact(G).value + 1


def test_tw_cap():
    with pytest.raises(CapabilityError):
        treewidth_exact(fam("path", 19))
