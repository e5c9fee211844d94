import random

import pytest
import sympy

from quiverkit.algebra import Element, make_path
from quiverkit.errors import GraphError, PreconditionError
from quiverkit.fields import GF, QQ
from quiverkit.gen import random_acyclic_graph, random_graph
from quiverkit.graph import Graph, cycle_graph, line_graph
from quiverkit.oracle import (
    audit, ideal_closure, minimal_ideal_check, nilpotency_index, no_return_paths, nullspace,
    oracle_noetherian, oracle_prime, oracle_semiprime, rank, return_path_exists,
    structure_constants, trace_radical,
)


def test_structure_constants_examples():
    A = structure_constants(Graph(["u"]))
    assert A.dim == 1 and A.mult == {(0, 0): 0}
    assert structure_constants(line_graph(2)).dim == 3
    assert structure_constants(line_graph(3)).dim == 6
    with pytest.raises(GraphError):
        structure_constants(cycle_graph(2))
    with pytest.raises(GraphError):
        structure_constants(line_graph(12), bound=64)


def test_structure_table_is_associative():
    rng = random.Random(1)
    for _ in range(30):
        g = random_acyclic_graph(rng, 4, 5)
        A = structure_constants(g)
        for i in range(A.dim):
            for j in range(A.dim):
                ij = A.mult.get((i, j))
                for k in range(A.dim):
                    jk = A.mult.get((j, k))
                    left = None if ij is None else A.mult.get((ij, k))
                    right = None if jk is None else A.mult.get((i, jk))
                    assert left == right


def test_linear_algebra_against_sympy():
    rng = random.Random(2)
    for _ in range(50):
        rows = [[QQ(rng.randint(-3, 3)) for _ in range(5)] for _ in range(4)]
        M = sympy.Matrix(rows)
        assert rank(rows, QQ) == M.rank()
        ns = nullspace(rows, 5, QQ)
        assert len(ns) == 5 - M.rank()
        for v in ns:
            assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_trace_radical_examples():
    A = structure_constants(line_graph(2))
    (vec,) = trace_radical(A)
    f = A.index(make_path(line_graph(2), ["f1"]))
    assert [i for i, c in enumerate(vec) if c] == [f]
    assert trace_radical(structure_constants(Graph(["u"]))) == []
    with pytest.raises(PreconditionError, match="oracle requires characteristic 0"):
        trace_radical(structure_constants(line_graph(2), GF(5)))


def test_trace_radical_dimension_is_positive_length_path_count():
    rng = random.Random(3)
    for _ in range(40):
        g = random_acyclic_graph(rng, 5, 6)
        try:
            A = structure_constants(g, bound=40)
        except GraphError:
            continue
        assert len(trace_radical(A)) == sum(1 for p in A.basis if p.edges)


def test_minimal_ideal_examples():
    g = line_graph(2)
    A = structure_constants(g)
    assert minimal_ideal_check(A, Element.vertex(g, "v1"), "left")
    assert not minimal_ideal_check(A, Element.vertex(g, "v2"), "left")
    assert minimal_ideal_check(A, Element.path(g, "f1"), "left")
    with pytest.raises(ValueError):
        minimal_ideal_check(A, Element.zero(g), "left")


def test_return_path_examples():
    c3 = cycle_graph(3)
    assert all(return_path_exists(c3, a, b) for a in c3.vertices for b in c3.vertices)
    assert not return_path_exists(line_graph(2), "v2", "v1")
    assert return_path_exists(line_graph(2), "v2", "v2")


def test_radical_is_nilpotent_over_gf():
    rng = random.Random(4)
    for _ in range(30):
        g = random_acyclic_graph(rng, 4, 5)
        A = structure_constants(g, GF(3))
        rad = []
        for i in no_return_paths(A):
            v = [A.field.zero] * A.dim
            v[i] = A.field.one
            rad.append(v)
        k = nilpotency_index(A, rad)
        assert k is not None and k <= len(g.vertices) + 1


def test_ideal_closure_of_unit_is_everything():
    g = line_graph(3)
    A = structure_constants(g)
    one = A.to_vector(Element.one(g))
    assert len(ideal_closure(A, [one])) == A.dim


def test_definition_oracles_spot_checks():
    assert oracle_semiprime(cycle_graph(3)) and not oracle_semiprime(line_graph(2))
    assert oracle_prime(cycle_graph(2)) and not oracle_prime(Graph())
    c2x = Graph(["v0", "v1", "w"], [("a", "v0", "v1"), ("b", "v1", "v0"), ("e", "v0", "w")])
    assert oracle_noetherian(c2x, "left") and not oracle_noetherian(c2x, "right")


def test_audit_passes_on_random_graphs():
    rng = random.Random(5)
    for _ in range(40):
        rep = audit(random_graph(rng, 5, 6), QQ)
        assert rep.ok, rep.to_text()
    for _ in range(10):
        assert audit(random_acyclic_graph(rng, 4, 4), GF(7)).ok


def test_audit_report_shapes():
    rep = audit(line_graph(3))
    d = rep.to_dict()
    assert d["ok"] and {c["name"] for c in d["checks"]} >= {"semiprime", "socle_left",
                                                              "trace_radical_span"}
    assert rep.to_text().endswith("audit passed")
