import random

import networkx as nx
import pytest

from quiverkit.errors import CycleCapExceeded, GraphError, ParseError
from quiverkit.gen import all_multigraphs, random_graph
from quiverkit.graph import (
    Graph, collapse_edges, collapse_vertices, cycle_exits_entries, cycle_graph,
    disjoint_union, enumerate_simple_cycles, is_acyclic, line_graph, parse_graph,
    reverse_graph, rose_graph, scc_condense, shortest_path, skeleton, source_chain,
    weak_components,
)
from quiverkit.oracle import brute_simple_cycles


def to_nx(g):
    h = nx.MultiDiGraph()
    h.add_nodes_from(g.vertices)
    for e, s, r in g.edge_triples():
        h.add_edge(s, r, key=e)
    return h


def canon(cycles):
    return sorted(tuple(c) for c in cycles)


def test_parse_round_trip():
    g = disjoint_union(cycle_graph(2, "c", "g"), line_graph(3))
    assert parse_graph(g.to_text()) == g


def test_parse_comments_and_blank_lines():
    g = parse_graph("# header\nvertex a   # the source\n\nvertex b\nedge e a b\n")
    assert g.vertices == ("a", "b") and g.edge_triples() == (("e", "a", "b"),)


def test_parse_allows_forward_references():
    g = parse_graph("edge e a b\nvertex a\nvertex b\n")
    assert g.source_of("e") == "a"


@pytest.mark.parametrize("text,line,col", [
    ("vertex a\nvertex a\n", 2, 8),
    ("vertex a\nedge a a a\n", 2, 6),
    ("vertex a\nedge e a b\n", 2, 10),
    ("vertex a\nnode b\n", 2, 1),
    ("vertex a b\n", 1, 1),
    ("vertex a-b\n", 1, 8),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_graph(text)
    assert (exc.value.line, exc.value.column) == (line, col)
    assert str(exc.value).startswith(f"line {line}, column {col}: ")


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(["a"], [("e", "a", "b")])
    with pytest.raises(GraphError):
        Graph(["a", "a"])
    with pytest.raises(GraphError):
        Graph(["a"], [("a", "a", "a")])


def test_builders():
    c = cycle_graph(3)
    assert c.edge_triples()[2] == ("f2", "v2", "v0")
    assert line_graph(3).edges == ("f1", "f2")
    assert rose_graph(2).out_edges("u") == ("l0", "l1")


def test_scc_against_networkx():
    rng = random.Random(3)
    for _ in range(300):
        g = random_graph(rng, 7, 12)
        part = scc_condense(g)
        ours = {frozenset(c) for c in part.classes}
        theirs = {frozenset(c) for c in nx.strongly_connected_components(to_nx(g))}
        assert ours == theirs
        assert is_acyclic(g) == nx.is_directed_acyclic_graph(to_nx(g))
        assert sorted(map(sorted, weak_components(g))) == \
            sorted(map(sorted, nx.weakly_connected_components(to_nx(g))))


def test_johnson_matches_brute_force_on_small_suite():
    for g in all_multigraphs(3, 4):
        assert canon(enumerate_simple_cycles(g)) == canon(brute_simple_cycles(g))


def test_johnson_matches_brute_force_random():
    rng = random.Random(11)
    for _ in range(200):
        g = random_graph(rng, 6, 10)
        assert canon(enumerate_simple_cycles(g)) == canon(brute_simple_cycles(g))


def test_cycle_count_against_networkx_simple_digraph():
    rng = random.Random(5)
    for _ in range(100):
        g = random_graph(rng, 6, 10)
        seen = set()
        es = []
        for e, s, r in g.edge_triples():
            if (s, r) not in seen:
                seen.add((s, r))
                es.append((e, s, r))
        h = Graph(g.vertices, es)
        d = nx.DiGraph()
        d.add_nodes_from(h.vertices)
        d.add_edges_from((s, r) for _, s, r in es)
        assert len(enumerate_simple_cycles(h)) == len(list(nx.simple_cycles(d)))


def test_cycle_cap():
    with pytest.raises(CycleCapExceeded) as exc:
        enumerate_simple_cycles(rose_graph(5), cap=3)
    assert exc.value.cap == 3
    assert len(enumerate_simple_cycles(rose_graph(5), cap=5)) == 5


def test_cycle_rotation_starts_at_first_declared_vertex():
    g = Graph(["b", "a"], [("x", "a", "b"), ("y", "b", "a")])
    assert enumerate_simple_cycles(g) == [("y", "x")]


def test_exits_and_entries():
    g = Graph(["v0", "v1", "w", "z"],
              [("a", "v0", "v1"), ("b", "v1", "v0"), ("e", "v0", "w"), ("i", "z", "v1")])
    assert cycle_exits_entries(g, ("a", "b")) == (frozenset({"e"}), frozenset({"i"}))
    with pytest.raises(GraphError):
        cycle_exits_entries(g, ("a",))


def test_source_chain_stages():
    g = line_graph(3)
    left = source_chain(g, "left")
    assert left.stages == (("v1",), ("v2",), ("v3",)) and left.residue == ()
    assert source_chain(g, "right").stages == (("v3",), ("v2",), ("v1",))
    assert source_chain(cycle_graph(2), "left").residue == ("v0", "v1")


def test_collapse_and_skeleton():
    g = line_graph(3)
    assert collapse_vertices(g, {"v2"}) == Graph(["v1", "v3"])
    assert collapse_edges(g, {"f1"}).edges == ("f2",)
    with pytest.raises(GraphError):
        collapse_vertices(g, {"zz"})
    h = Graph(["v0", "v1", "w"], [("a", "v0", "v1"), ("b", "v1", "v0"), ("e", "v0", "w")])
    assert skeleton(h) == Graph(["w"])


def test_reverse_is_involution():
    rng = random.Random(2)
    for _ in range(50):
        g = random_graph(rng)
        assert reverse_graph(reverse_graph(g)) == g


def test_shortest_path():
    g = cycle_graph(4)
    assert shortest_path(g, "v1", "v0") == ("f1", "f2", "f3")
    assert shortest_path(g, "v1", "v1") == ()
    assert shortest_path(line_graph(2), "v2", "v1") is None
