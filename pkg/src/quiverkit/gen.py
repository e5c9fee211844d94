"""Graph and element generators for exhaustive and randomized checks."""

from __future__ import annotations

import itertools
import random

from .algebra import Element, Path, trivial_path
from .fields import QQ, Poly, RatFunc, RatMatrix
from .graph import Graph, relabel


def all_multigraphs(max_vertices=4, max_edges=5, min_vertices=1):
    """Every multigraph on v0..v(k-1), k <= max_vertices, with at most
    ``max_edges`` edges; loops and parallel edges included.

    Edge multisets are enumerated over ordered vertex pairs, so isomorphic
    copies appear more than once.
    """
    for k in range(min_vertices, max_vertices + 1):
        vs = [f"v{i}" for i in range(k)]
        pairs = [(a, b) for a in vs for b in vs]
        for m in range(max_edges + 1):
            for combo in itertools.combinations_with_replacement(pairs, m):
                yield Graph(vs, [(f"e{t}", a, b) for t, (a, b) in enumerate(combo)])


def random_graph(rng, max_vertices=6, max_edges=None, loops=True):
    k = rng.randint(1, max_vertices)
    if max_edges is None:
        max_edges = 2 * k
    vs = [f"v{i}" for i in range(k)]
    es = []
    for t in range(rng.randint(0, max_edges)):
        a, b = rng.choice(vs), rng.choice(vs)
        if a == b and not loops:
            continue
        es.append((f"e{t}", a, b))
    return Graph(vs, es)


def random_acyclic_graph(rng, max_vertices=8, max_edges=None):
    k = rng.randint(1, max_vertices)
    if max_edges is None:
        max_edges = 2 * k
    vs = [f"v{i}" for i in range(k)]
    es = []
    if k >= 2:
        for t in range(rng.randint(0, max_edges)):
            a, b = sorted(rng.sample(range(k), 2))
            es.append((f"e{t}", vs[a], vs[b]))
    order = vs[:]
    rng.shuffle(order)
    return Graph(order, es)


def random_noetherian_graph(rng, side="left", max_cycles=3, max_cycle_len=4,
                            max_tree=4, max_extra=6):
    """Disjoint cycles plus an acyclic part; edges only leave the cycles
    (left) or only enter them (right)."""
    vs, es = [], []
    cycles = []
    for c in range(rng.randint(0, max_cycles)):
        n = rng.randint(1, max_cycle_len)
        cv = [f"c{c}_{i}" for i in range(n)]
        vs.extend(cv)
        es.extend((f"g{c}_{i}", cv[i], cv[(i + 1) % n]) for i in range(n))
        cycles.append(cv)
    tree = [f"t{i}" for i in range(rng.randint(0 if cycles else 1, max_tree))]
    vs.extend(tree)
    on_cycle = [v for cv in cycles for v in cv]
    for t in range(rng.randint(0, max_extra)):
        if tree and on_cycle and rng.random() < 0.5:
            es.append((f"x{t}", rng.choice(on_cycle), rng.choice(tree)))
        elif len(tree) >= 2:
            a, b = sorted(rng.sample(range(len(tree)), 2))
            es.append((f"x{t}", tree[a], tree[b]))
    if side == "right":
        es = [(e, b, a) if not e.startswith("g") else (e, a, b) for e, a, b in es]
    rng.shuffle(vs)
    rng.shuffle(es)
    return Graph(vs, es)


def random_relabeling(rng, g):
    """Fresh ids and shuffled declaration order."""
    vnames = [f"n{i}" for i in range(len(g.vertices))]
    enames = [f"a{i}" for i in range(len(g.edges))]
    rng.shuffle(vnames)
    rng.shuffle(enames)
    vmap = dict(zip(g.vertices, vnames))
    emap = dict(zip(g.edges, enames))
    vorder = list(vmap.values())
    eorder = list(emap.values())
    rng.shuffle(vorder)
    rng.shuffle(eorder)
    return relabel(g, vmap, emap, vorder, eorder)


def random_walk(rng, g, max_length):
    v = rng.choice(g.vertices)
    edges = []
    for _ in range(rng.randint(0, max_length)):
        out = g.out_edges(v)
        if not out:
            break
        e = rng.choice(out)
        edges.append(e)
        v = g.range_of(e)
    if not edges:
        return trivial_path(v)
    return Path(g.source_of(edges[0]), v, tuple(edges))


def random_scalar(rng, field=QQ, bound=5):
    c = 0
    while c == 0:
        c = rng.randint(-bound, bound)
    if field.characteristic == 0 and rng.random() < 0.3:
        return field(c) / rng.randint(1, bound)
    return field(c)


def random_element(rng, g, field=QQ, max_terms=4, max_length=4):
    terms = {}
    if not g.vertices:
        return Element.zero(g, field)
    for _ in range(rng.randint(0, max_terms)):
        p = random_walk(rng, g, max_length)
        terms[p] = terms.get(p, 0) + random_scalar(rng, field)
    return Element(g, terms, field)


def random_poly(rng, field=QQ, max_degree=3, allow_zero=True):
    while True:
        d = rng.randint(0, max_degree)
        p = Poly([rng.randint(-4, 4) for _ in range(d + 1)], field)
        if p or allow_zero:
            return p


def random_ratfunc(rng, field=QQ, max_degree=2):
    num = random_poly(rng, field, max_degree)
    den = random_poly(rng, field, max_degree, allow_zero=False)
    if rng.random() < 0.3:
        den = den * Poly.x(field)
    return RatFunc(num, den)


def random_ratmatrix(rng, n, field=QQ, max_degree=2):
    return RatMatrix([[random_ratfunc(rng, field, max_degree) for _ in range(n)]
                      for _ in range(n)])


def make_rng(seed):
    return random.Random(seed)
