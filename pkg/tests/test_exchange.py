from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ttr.complexes import TwoTermComplex
from ttr.errors import CapZero, IncompleteGraph, NotPresilting
from ttr.exchange import enumerate_sttilt, freeze_enumerate, hasse, load_parts, order_interval
from ttr.formats import module_complex
from ttr.poset import Poset, poset_isomorphic
from ttr.silting import assemble, bongartz_summands, co_bongartz_summands, key_of, order_leq

from _support import alg, graph


def digraph(poset: Poset) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(poset.elements)
    g.add_edges_from(poset.covers)
    return g


def chain(k: int) -> Poset:
    return Poset(range(k), [(i + 1, i) for i in range(k - 1)])


PENTAGON = Poset("abcde", [("a", "b"), ("b", "c"), ("c", "e"), ("a", "d"), ("d", "e")])
HEXAGON = Poset("abcdef", [("a", "b"), ("b", "c"), ("c", "f"), ("a", "d"), ("d", "e"), ("e", "f")])
SQUARE = Poset("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


# -- enumeration ---------------------------------------------------------------


@pytest.mark.parametrize(
    "name, nodes, arrows",
    [("a2", 5, 5), ("two_cycle", 6, 6), ("nak3", 14, 21), ("a3r2", 12, 18), ("kk", 4, 4), ("k", 2, 1)],
)
def test_enumeration_counts(name, nodes, arrows):
    g = graph(name)
    assert g.complete
    assert len(g.nodes) == nodes and len(g.hasse_arrows) == arrows


@pytest.mark.parametrize("name", ["a2", "two_cycle", "nak3", "a3r2", "kk", "k"])
def test_completed_graphs_are_regular_with_unique_extrema(name):
    g = graph(name)
    n = g.alg.n
    assert all(g.degree(k) == n for k in g.keys())
    assert g.maximum == [tuple(sorted(tuple(int(i == j) for i in range(n)) for j in range(n)))]
    assert g.minimum == [tuple(sorted(tuple(-int(i == j) for i in range(n)) for j in range(n)))]
    assert nx.is_directed_acyclic_graph(nx.DiGraph(list(g.hasse_arrows)))


def test_a2_sincere_nodes_are_the_two_tilting_modules():
    g = graph("a2")
    tilting = [k for k, node in g.nodes.items() if node.module.is_sincere() and not node.support]
    assert len(tilting) == 2


def test_kronecker_cap():
    g = graph("kronecker", 8)
    assert len(g.nodes) == 8 and not g.complete
    with pytest.raises(IncompleteGraph):
        hasse(g)


def test_cap_below_two_is_rejected():
    with pytest.raises(CapZero):
        enumerate_sttilt(alg("a2"), 1)


def test_cap_truncation_marks_incomplete():
    g = enumerate_sttilt(alg("a2"), 3)
    assert len(g.nodes) == 3 and not g.complete
    assert enumerate_sttilt(alg("a2"), 5).complete


def test_enumeration_is_deterministic():
    a = alg("two_cycle")
    g1, g2 = enumerate_sttilt(a, seed=0), enumerate_sttilt(a, seed=7)
    assert g1.keys() == g2.keys() == sorted(g1.keys())
    assert sorted(g1.hasse_arrows) == sorted(g2.hasse_arrows)


def test_arrows_are_strict_in_the_order():
    g = graph("nak3")
    for a, b in g.hasse_arrows:
        x, y = g.nodes[a].complex, g.nodes[b].complex
        assert order_leq(y, x) and not order_leq(x, y)


# -- Hasse quivers and posets -------------------------------------------------


@pytest.mark.parametrize("name", ["a2", "two_cycle", "nak3", "a3r2", "preproj_a3"])
def test_hasse_is_the_transitive_reduction(name):
    p = hasse(graph(name))
    d = digraph(p)
    reduced = nx.transitive_reduction(d)
    assert set(reduced.edges) == set(d.edges)
    assert p.is_transitively_reduced()
    # the order from covers agrees with the silting order on every pair
    g = graph(name)
    closure = nx.transitive_closure_dag(d)
    for a in p.elements:
        for b in p.elements:
            expected = a == b or closure.has_edge(b, a)
            assert p.leq(a, b) == expected == order_leq(g.nodes[a].complex, g.nodes[b].complex)


def test_hasse_examples():
    assert poset_isomorphic(hasse(graph("a2")), PENTAGON) is not None
    assert hasse(graph("a2")).height() == 4
    assert poset_isomorphic(hasse(graph("kk")), SQUARE) is not None
    assert poset_isomorphic(hasse(graph("k")), chain(2)) is not None
    assert poset_isomorphic(hasse(graph("two_cycle")), HEXAGON) is not None


def test_poset_isomorphism_examples():
    assert poset_isomorphic(PENTAGON, PENTAGON) is not None
    assert poset_isomorphic(PENTAGON, HEXAGON) is None
    assert poset_isomorphic(SQUARE, chain(4)) is None


def test_poset_rejects_cycles_and_unknown_elements():
    with pytest.raises(ValueError):
        Poset("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(ValueError):
        Poset("ab", [("a", "c")])


@st.composite
def random_posets(draw):
    k = draw(st.integers(1, 7))
    edges = draw(st.sets(st.tuples(st.integers(0, k - 1), st.integers(0, k - 1)).filter(lambda e: e[0] > e[1])))
    d = nx.transitive_reduction(nx.DiGraph(list(edges)) if edges else nx.DiGraph())
    d.add_nodes_from(range(k))
    perm = draw(st.permutations(range(k)))
    return Poset(range(k), list(d.edges)), Poset(range(k), [(perm[a], perm[b]) for a, b in d.edges])


@given(random_posets())
@settings(max_examples=60, deadline=None)
def test_poset_isomorphism_matches_networkx(pair):
    p, q = pair
    found = poset_isomorphic(p, q)
    assert found is not None
    for a, b in p.covers:
        assert (found[a], found[b]) in set(q.covers)
    # against a one-element perturbation, agree with the networkx oracle
    extra = Poset(list(q.elements) + ["z"], list(q.covers) + [(q.elements[0], "z")])
    base = Poset(list(p.elements) + ["z"], list(p.covers))
    oracle = nx.is_isomorphic(digraph(base), digraph(extra))
    assert (poset_isomorphic(base, extra) is not None) == oracle


# -- frozen enumeration ----------------------------------------------------------


def test_freeze_examples():
    a = alg("a3r2")
    u = load_parts(a, [module_complex(a, "P3")])
    g = freeze_enumerate(a, u)
    assert len(g.nodes) == 5 and g.complete
    assert g.maximum == [((0, 0, 1), (0, 1, 0), (1, 0, 0))]
    (low,) = g.minimum
    bottom = g.nodes[low]
    assert bottom.support == {1, 2} and bottom.module.dims == (0, 0, 1)
    assert poset_isomorphic(hasse(g), hasse(graph("a2"))) is not None

    b = alg("preproj_a3")
    u = load_parts(b, [module_complex(b, "preproj_21.rep")])
    assert len(freeze_enumerate(b, u).nodes) == 6


def test_freeze_at_zero_is_the_full_graph():
    g = freeze_enumerate(alg("nak3"), [])
    full = graph("nak3")
    assert g.keys() == full.keys() and sorted(g.hasse_arrows) == sorted(full.hasse_arrows)


def test_freeze_almost_complete_gives_two_nodes():
    a = alg("kronecker")
    u = load_parts(a, [module_complex(a, "P1")])
    g = freeze_enumerate(a, u)
    assert len(g.nodes) == 2 and g.complete


def test_freeze_rejects_non_presilting():
    a = alg("a2")
    parts = load_parts(a, [TwoTermComplex.free(a), TwoTermComplex.free(a, -1)])
    with pytest.raises(NotPresilting):
        freeze_enumerate(a, parts)


@pytest.mark.parametrize("name", ["a2", "two_cycle", "nak3", "a3r2"])
@given(data=st.data())
@settings(max_examples=8, deadline=None)
def test_freeze_equals_order_interval(name, data):
    a = alg(name)
    full = graph(name)
    keys = full.keys()
    node = full.nodes[keys[data.draw(st.integers(0, len(keys) - 1))]]
    chosen = data.draw(st.lists(st.integers(0, a.n - 1), unique=True, min_size=1, max_size=a.n))
    u = [node.parts[i] for i in sorted(chosen)]
    frozen = freeze_enumerate(a, u)
    u_key = set(key_of(u))
    containing = {k for k in full.nodes if u_key <= set(k)}
    hi = assemble(a, bongartz_summands(a, u))
    lo = assemble(a, co_bongartz_summands(a, u))
    assert set(frozen.nodes) == containing == order_interval(full, lo, hi)
    assert all(frozen.degree(k) == a.n - len(u) for k in frozen.keys())
