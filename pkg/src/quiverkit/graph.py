"""Finite directed multigraphs: parsing, strongly connected components,
source/sink chains, collapses and simple-cycle enumeration."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from types import MappingProxyType

from .errors import CycleCapExceeded, GraphError, ParseError

DEFAULT_CYCLE_CAP = 10_000

_ID = re.compile(r"[A-Za-z0-9_]+")


def _check_side(side):
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


class Graph:
    """A finite directed multigraph ``(vertices, edges, src, dst)``.

    Declaration order of vertices and edges is kept; every derived listing
    follows it so that output is deterministic.
    """

    __slots__ = ("vertices", "edges", "_src", "_dst", "_index", "_eindex",
                 "_out", "_in", "_hash")

    def __init__(self, vertices=(), edges=()):
        vertices = tuple(vertices)
        triples = [tuple(e) for e in edges]
        seen = set()
        for v in vertices:
            if not isinstance(v, str) or not _ID.fullmatch(v):
                raise GraphError(f"invalid vertex id {v!r}")
            if v in seen:
                raise GraphError(f"duplicate id {v!r}")
            seen.add(v)
        vset = frozenset(vertices)
        src, dst = {}, {}
        for t in triples:
            if len(t) != 3:
                raise GraphError(f"edge must be (id, src, dst), got {t!r}")
            e, s, r = t
            if not isinstance(e, str) or not _ID.fullmatch(e):
                raise GraphError(f"invalid edge id {e!r}")
            if e in seen:
                raise GraphError(f"duplicate id {e!r}")
            seen.add(e)
            for end in (s, r):
                if end not in vset:
                    raise GraphError(f"edge {e!r} has unknown endpoint {end!r}")
            src[e] = s
            dst[e] = r
        self.vertices = vertices
        self.edges = tuple(t[0] for t in triples)
        self._src = src
        self._dst = dst
        self._index = {v: i for i, v in enumerate(vertices)}
        self._eindex = {e: i for i, e in enumerate(self.edges)}
        self._out = {v: [] for v in vertices}
        self._in = {v: [] for v in vertices}
        for e in self.edges:
            self._out[src[e]].append(e)
            self._in[dst[e]].append(e)
        self._out = {v: tuple(es) for v, es in self._out.items()}
        self._in = {v: tuple(es) for v, es in self._in.items()}
        self._hash = None

    @property
    def src(self):
        return MappingProxyType(self._src)

    @property
    def dst(self):
        return MappingProxyType(self._dst)

    def source_of(self, e):
        return self._src[e]

    def range_of(self, e):
        return self._dst[e]

    def out_edges(self, v):
        return self._out[v]

    def in_edges(self, v):
        return self._in[v]

    def has_vertex(self, v):
        return v in self._index

    def has_edge(self, e):
        return e in self._src

    def index(self, v):
        return self._index[v]

    def edge_index(self, e):
        return self._eindex[e]

    def edge_triples(self):
        return tuple((e, self._src[e], self._dst[e]) for e in self.edges)

    def sources(self):
        return tuple(v for v in self.vertices if not self._in[v])

    def sinks(self):
        return tuple(v for v in self.vertices if not self._out[v])

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.vertices == other.vertices
                and self.edge_triples() == other.edge_triples())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vertices, self.edge_triples()))
        return self._hash

    def __repr__(self):
        es = ", ".join(f"{e}:{s}->{r}" for e, s, r in self.edge_triples())
        return f"Graph(vertices={list(self.vertices)}, edges=[{es}])"

    def to_text(self):
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {e} {s} {r}" for e, s, r in self.edge_triples()]
        return "\n".join(lines) + ("\n" if lines else "")


# --------------------------------------------------------------------------
# construction helpers

def cycle_graph(n, vertex_prefix="v", edge_prefix="f"):
    """C_n: vertices v0..v(n-1), edge f_i from v_i to v_(i+1 mod n)."""
    if n < 1:
        raise ValueError("a cycle needs at least one vertex")
    vs = [f"{vertex_prefix}{i}" for i in range(n)]
    es = [(f"{edge_prefix}{i}", vs[i], vs[(i + 1) % n]) for i in range(n)]
    return Graph(vs, es)


def line_graph(n):
    """v1 -> v2 -> ... -> vn with edges f1..f(n-1)."""
    vs = [f"v{i}" for i in range(1, n + 1)]
    es = [(f"f{i}", f"v{i}", f"v{i + 1}") for i in range(1, n)]
    return Graph(vs, es)


def rose_graph(k, vertex="u"):
    """One vertex carrying ``k`` loops l0..l(k-1)."""
    return Graph([vertex], [(f"l{i}", vertex, vertex) for i in range(k)])


def disjoint_union(*graphs):
    vs, es = [], []
    for g in graphs:
        vs.extend(g.vertices)
        es.extend(g.edge_triples())
    return Graph(vs, es)


def relabel(g, vertex_map, edge_map, vertex_order=None, edge_order=None):
    """Rename ids; optionally reorder declarations (orders given in new ids)."""
    vs = [vertex_map[v] for v in g.vertices]
    es = [(edge_map[e], vertex_map[s], vertex_map[r]) for e, s, r in g.edge_triples()]
    if vertex_order is not None:
        vs = list(vertex_order)
    if edge_order is not None:
        pos = {e: i for i, e in enumerate(edge_order)}
        es.sort(key=lambda t: pos[t[0]])
    return Graph(vs, es)


# --------------------------------------------------------------------------
# parsing

def parse_graph(text):
    """Parse the line format ``vertex <id>`` / ``edge <id> <src> <dst>``.

    ``#`` starts a comment.  Errors carry 1-based line and column.
    """
    vertices = []
    edges = []
    declared = {}
    pending = []  # (endpoint, line, column)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not toks:
            continue
        kw, kwcol = toks[0]
        if kw == "vertex":
            if len(toks) != 2:
                raise ParseError("expected 'vertex <id>'", lineno, kwcol)
            names = toks[1:]
        elif kw == "edge":
            if len(toks) != 4:
                raise ParseError("expected 'edge <id> <src> <dst>'", lineno, kwcol)
            names = toks[1:]
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno, kwcol)
        for name, col in names:
            if not _ID.fullmatch(name):
                raise ParseError(f"invalid id {name!r}", lineno, col)
        ident, col = names[0]
        if ident in declared:
            first = declared[ident]
            raise ParseError(f"duplicate id {ident!r} (first declared on line {first})",
                             lineno, col)
        declared[ident] = lineno
        if kw == "vertex":
            vertices.append(ident)
        else:
            (_, _), (s, scol), (r, rcol) = names
            edges.append((ident, s, r))
            pending.append((s, lineno, scol))
            pending.append((r, lineno, rcol))
    vset = set(vertices)
    for name, lineno, col in pending:
        if name not in vset:
            raise ParseError(f"unknown vertex {name!r}", lineno, col)
    return Graph(vertices, edges)


# --------------------------------------------------------------------------
# reachability and components

def reachable(g, start, within=None):
    """Vertices reachable from ``start`` (the trivial path counts)."""
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e in g.out_edges(v):
            w = g.range_of(e)
            if w not in seen and (within is None or w in within):
                seen.add(w)
                queue.append(w)
    return seen


def shortest_path(g, a, b, within=None):
    """Edge tuple of a shortest path a -> b (``()`` when a == b), else None."""
    if a == b:
        return ()
    parent = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        for e in g.out_edges(v):
            w = g.range_of(e)
            if w in parent or (within is not None and w not in within):
                continue
            parent[w] = e
            if w == b:
                out = []
                while w != a:
                    e = parent[w]
                    out.append(e)
                    w = g.source_of(e)
                return tuple(reversed(out))
            queue.append(w)
    return None


def weak_components(g):
    """Connected components of the underlying undirected graph."""
    comp = {}
    out = []
    for v in g.vertices:
        if v in comp:
            continue
        members = [v]
        comp[v] = len(out)
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for e in g.out_edges(x) + g.in_edges(x):
                for y in (g.source_of(e), g.range_of(e)):
                    if y not in comp:
                        comp[y] = len(out)
                        members.append(y)
                        queue.append(y)
        members.sort(key=g.index)
        out.append(tuple(members))
    return out


@dataclass(frozen=True)
class SccPartition:
    classes: tuple
    class_of: MappingProxyType
    condensation: frozenset
    nontrivial: tuple  # class has >= 2 vertices or carries a loop

    def cycle_vertices(self):
        return frozenset(v for c, nt in zip(self.classes, self.nontrivial) if nt for v in c)


def scc_condense(g):
    """Tarjan's algorithm, iterative.  Classes ordered by first vertex."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    found = []
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            out = g.out_edges(v)
            recurse = False
            while i < len(out):
                w = g.range_of(out[i])
                i += 1
                if w not in index:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                found.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    classes = sorted((tuple(sorted(c, key=g.index)) for c in found),
                     key=lambda c: g.index(c[0]))
    class_of = {v: k for k, c in enumerate(classes) for v in c}
    cond = set()
    loops = set()
    for e in g.edges:
        a, b = class_of[g.source_of(e)], class_of[g.range_of(e)]
        if a != b:
            cond.add((a, b))
        elif g.source_of(e) == g.range_of(e):
            loops.add(a)
    nontrivial = tuple(len(c) > 1 or k in loops for k, c in enumerate(classes))
    return SccPartition(tuple(classes), MappingProxyType(class_of), frozenset(cond), nontrivial)


def cycle_vertices(g):
    """Vertices lying on some closed path (nontrivial SCC or loop)."""
    return scc_condense(g).cycle_vertices()


def is_acyclic(g):
    return not any(scc_condense(g).nontrivial)


def cycle_through(g, v, partition=None):
    """A simple cycle (edge tuple) based at ``v``, or None if none exists."""
    part = partition or scc_condense(g)
    k = part.class_of[v]
    if not part.nontrivial[k]:
        return None
    members = set(part.classes[k])
    for e in g.out_edges(v):
        w = g.range_of(e)
        if w == v:
            return (e,)
    for e in g.out_edges(v):
        w = g.range_of(e)
        if w in members:
            back = shortest_path(g, w, v, within=members)
            if back is not None:
                return (e,) + back
    return None


def find_closed_path(g):
    """Some simple cycle of ``g`` or None when ``g`` is acyclic."""
    part = scc_condense(g)
    for k, nt in enumerate(part.nontrivial):
        if nt:
            return cycle_through(g, part.classes[k][0], part)
    return None


# --------------------------------------------------------------------------
# source / sink chains

@dataclass(frozen=True)
class SourceChain:
    side: str
    stages: tuple
    residue: tuple

    def covered(self, alpha):
        """Union of the first ``alpha`` stages."""
        return frozenset(v for st in self.stages[:alpha] for v in st)

    def to_dict(self):
        return {"side": self.side, "stages": [list(s) for s in self.stages],
                "residue": list(self.residue)}


def source_chain(g, side="left"):
    """Peel sources (left) or sinks (right) stage by stage."""
    _check_side(side)
    if side == "left":
        incoming = {v: len(g.in_edges(v)) for v in g.vertices}
        forward = g.out_edges
        far_end = g.range_of
    else:
        incoming = {v: len(g.out_edges(v)) for v in g.vertices}
        forward = g.in_edges
        far_end = g.source_of
    remaining = set(g.vertices)
    stages = []
    current = [v for v in g.vertices if incoming[v] == 0]
    while current:
        stages.append(tuple(current))
        remaining.difference_update(current)
        nxt = set()
        for v in current:
            for e in forward(v):
                w = far_end(e)
                if w in remaining:
                    incoming[w] -= 1
                    if incoming[w] == 0:
                        nxt.add(w)
        current = sorted(nxt, key=g.index)
    residue = tuple(v for v in g.vertices if v in remaining)
    return SourceChain(side, tuple(stages), residue)


# --------------------------------------------------------------------------
# collapses and duality

def collapse_vertices(g, X):
    X = set(X)
    unknown = X.difference(g.vertices)
    if unknown:
        raise GraphError(f"unknown vertex id(s): {sorted(unknown)}")
    vs = [v for v in g.vertices if v not in X]
    es = [(e, s, r) for e, s, r in g.edge_triples() if s not in X and r not in X]
    return Graph(vs, es)


def collapse_edges(g, Y):
    Y = set(Y)
    unknown = Y.difference(g.edges)
    if unknown:
        raise GraphError(f"unknown edge id(s): {sorted(unknown)}")
    return Graph(g.vertices, [t for t in g.edge_triples() if t[0] not in Y])


def induced_subgraph(g, vertices):
    keep = set(vertices)
    return collapse_vertices(g, [v for v in g.vertices if v not in keep])


def skeleton(g):
    return collapse_vertices(g, cycle_vertices(g))


def reverse_graph(g):
    return Graph(g.vertices, [(e, r, s) for e, s, r in g.edge_triples()])


# --------------------------------------------------------------------------
# cycles

def _scc_of(g, start, allowed):
    fwd = reachable(g, start, within=allowed)
    comp = set()
    # vertices in fwd that reach start inside allowed
    queue = deque([start])
    comp.add(start)
    while queue:
        v = queue.popleft()
        for e in g.in_edges(v):
            w = g.source_of(e)
            if w in fwd and w not in comp:
                comp.add(w)
                queue.append(w)
    return comp


def enumerate_simple_cycles(g, cap=DEFAULT_CYCLE_CAP):
    """All simple cycles as edge tuples, each rotated to start at its
    earliest-declared vertex.

    Johnson's circuit search restricted to one strongly connected component
    at a time; parallel edges give distinct cycles.  Raises
    :class:`CycleCapExceeded` once more than ``cap`` cycles are found.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    cycles = []
    allowed = set(g.vertices)
    for s in g.vertices:
        comp = _scc_of(g, s, allowed)
        has_loop = any(g.range_of(e) == s for e in g.out_edges(s))
        if len(comp) > 1 or has_loop:
            _johnson_from(g, s, comp, cycles, cap)
        allowed.discard(s)
    return cycles


def _johnson_from(g, s, comp, cycles, cap):
    blocked = {s}
    blockers = {}
    path = []
    # frames: (vertex, out-edge position, found-flag)
    frames = [[s, 0, False]]
    while frames:
        frame = frames[-1]
        v, i, _ = frame
        out = g.out_edges(v)
        descended = False
        while i < len(out):
            e = out[i]
            i += 1
            w = g.range_of(e)
            if w not in comp:
                continue
            if w == s:
                cycles.append(tuple(path) + (e,))
                if len(cycles) > cap:
                    raise CycleCapExceeded(cap)
                frame[2] = True
            elif w not in blocked:
                frame[1] = i
                path.append(e)
                blocked.add(w)
                frames.append([w, 0, False])
                descended = True
                break
        if descended:
            continue
        frames.pop()
        found = frame[2]
        if found:
            _unblock(v, blocked, blockers)
        else:
            for e in out:
                w = g.range_of(e)
                if w in comp:
                    blockers.setdefault(w, set()).add(v)
        if frames:
            path.pop()
            if found:
                frames[-1][2] = True


def _unblock(v, blocked, blockers):
    stack = [v]
    while stack:
        u = stack.pop()
        if u in blocked:
            blocked.discard(u)
            stack.extend(blockers.pop(u, ()))


def _validate_cycle(g, cycle):
    cycle = tuple(cycle)
    if not cycle:
        raise GraphError("empty edge sequence is not a cycle")
    for e in cycle:
        if not g.has_edge(e):
            raise GraphError(f"unknown edge {e!r}")
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if g.range_of(a) != g.source_of(b):
            raise GraphError(f"{list(cycle)} is not a closed path")
    starts = [g.source_of(e) for e in cycle]
    if len(set(starts)) != len(starts):
        raise GraphError(f"{list(cycle)} is not a simple cycle")
    return cycle


def cycle_exits_entries(g, cycle):
    """(exits, entries) of a simple cycle, as frozensets of edge ids."""
    cycle = _validate_cycle(g, cycle)
    on_cycle = set(cycle)
    verts = {g.source_of(e) for e in cycle}
    exits = frozenset(e for e in g.edges if e not in on_cycle and g.source_of(e) in verts)
    entries = frozenset(e for e in g.edges if e not in on_cycle and g.range_of(e) in verts)
    return exits, entries


def cycle_vertex_sequence(g, cycle):
    return tuple(g.source_of(e) for e in cycle)
