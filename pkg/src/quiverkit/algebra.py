"""Paths, elements of the path algebra KE and the operations on them:
product, Peirce projections, monomial ideals, quotients by collapse and the
classification of corners uAu."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .errors import AmbientMismatch, GraphError, ParseError
from .fields import QQ, Fp
from .graph import collapse_edges, collapse_vertices, scc_condense, shortest_path

DEFAULT_PATH_LENGTH_CAP = 512


@dataclass(frozen=True)
class Path:
    """A path ``start -> end`` through ``edges``; trivial when ``edges`` is empty."""

    start: str
    end: str
    edges: tuple = ()

    @property
    def length(self):
        return len(self.edges)

    def is_trivial(self):
        return not self.edges

    def key(self):
        # canonical order: length first, then the id sequence
        return (len(self.edges), self.edges or (self.start,))

    def vertices(self, g):
        """The vertex set visited by the path, start included."""
        return {self.start, *(g.range_of(e) for e in self.edges)}

    def __str__(self):
        return ".".join(self.edges) if self.edges else self.start


def trivial_path(v):
    return Path(v, v, ())


def make_path(g, edges):
    """Validate a composable edge sequence in ``g`` and wrap it as a Path."""
    edges = tuple(edges)
    if not edges:
        raise GraphError("use trivial_path for length-0 paths")
    for e in edges:
        if not g.has_edge(e):
            raise GraphError(f"unknown edge {e!r}")
    for a, b in zip(edges, edges[1:]):
        if g.range_of(a) != g.source_of(b):
            raise GraphError(f"edges {a!r} and {b!r} are not composable")
    return Path(g.source_of(edges[0]), g.range_of(edges[-1]), edges)


def path_compose(p, q):
    """``p`` followed by ``q``, or None when ``r(p) != s(q)``."""
    if p.end != q.start:
        return None
    if not p.edges:
        return q
    if not q.edges:
        return p
    return Path(p.start, q.end, p.edges + q.edges)


def _valid_in(g, p):
    if not p.edges:
        return g.has_vertex(p.start) and p.end == p.start
    try:
        return make_path(g, p.edges) == p
    except GraphError:
        return False


def _is_scalar(c):
    return isinstance(c, (int, Fraction, Fp))


class Element:
    """Finite K-linear combination of paths of one ambient graph."""

    __slots__ = ("graph", "field", "_terms")

    def __init__(self, graph, terms=None, field=QQ):
        clean = {}
        for p, c in (terms or {}).items():
            if not _valid_in(graph, p):
                raise GraphError(f"path {p} is not a path of the ambient graph")
            c = field(c)
            if c:
                clean[p] = clean.get(p, field.zero) + c
                if not clean[p]:
                    del clean[p]
        self.graph = graph
        self.field = field
        self._terms = clean

    @classmethod
    def _make(cls, graph, field, terms):
        obj = cls.__new__(cls)
        obj.graph = graph
        obj.field = field
        obj._terms = {p: c for p, c in terms.items() if c}
        return obj

    @classmethod
    def zero(cls, graph, field=QQ):
        return cls._make(graph, field, {})

    @classmethod
    def one(cls, graph, field=QQ):
        return cls._make(graph, field, {trivial_path(v): field.one for v in graph.vertices})

    @classmethod
    def vertex(cls, graph, v, coeff=1, field=QQ):
        if not graph.has_vertex(v):
            raise GraphError(f"unknown vertex {v!r}")
        return cls._make(graph, field, {trivial_path(v): field(coeff)})

    @classmethod
    def path(cls, graph, *edges, coeff=1, field=QQ):
        return cls._make(graph, field, {make_path(graph, edges): field(coeff)})

    @classmethod
    def of(cls, graph, path, coeff=1, field=QQ):
        return cls(graph, {path: coeff}, field)

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def support(self):
        return sorted(self._terms, key=Path.key)

    def coefficient(self, p):
        return self._terms.get(p, self.field.zero)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _check(self, other):
        if other.graph is not self.graph and other.graph != self.graph:
            raise AmbientMismatch("elements live in different path algebras")
        if other.field != self.field:
            raise AmbientMismatch("elements are over different fields")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        zero = self.field.zero
        for p, c in other._terms.items():
            out[p] = out.get(p, zero) + c
        return Element._make(self.graph, self.field, out)

    def __neg__(self):
        return Element._make(self.graph, self.field, {p: -c for p, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, k):
        k = self.field(k)
        return Element._make(self.graph, self.field, {p: c * k for p, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return elem_mul(self, other)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self.field == other.field
                and (self.graph is other.graph or self.graph == other.graph)
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.graph, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Element({str(self)!r})"

    def __str__(self):
        return format_element(self)


def format_element(a):
    """Canonical text: terms in (length, id sequence) order, ``3/2*f0.f1 + v0``."""
    if not a._terms:
        return "0"
    parts = []
    for p in a.support():
        c = a._terms[p]
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        if mag == 1:
            body = str(p)
        else:
            body = f"{mag}*{p}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def elem_mul(a, b):
    a._check(b)
    by_start = {}
    for q, d in b._terms.items():
        by_start.setdefault(q.start, []).append((q, d))
    out = {}
    zero = a.field.zero
    for p, c in a._terms.items():
        for q, d in by_start.get(p.end, ()):
            r = path_compose(p, q)
            out[r] = out.get(r, zero) + c * d
    return Element._make(a.graph, a.field, out)


def peirce_project(a, u, v):
    """The ``uAv`` component of ``a``."""
    for w in (u, v):
        if not a.graph.has_vertex(w):
            raise GraphError(f"unknown vertex {w!r}")
    return Element._make(a.graph, a.field,
                         {p: c for p, c in a._terms.items() if p.start == u and p.end == v})


# --------------------------------------------------------------------------
# corners uAu

class CornerKind(enum.Enum):
    SCALAR = "Scalar"
    POLYNOMIAL = "Polynomial"
    FREE = "Free"


@dataclass(frozen=True)
class CornerClass:
    kind: CornerKind
    witnesses: tuple = ()


def corner_classify(g, u):
    """Isomorphism type of uAu: K, K[x] or a free algebra on >= 2 generators.

    The generators are the closed paths at ``u`` returning to ``u`` only at
    their end.  There is exactly one of them iff the strongly connected
    component of ``u`` is a single cycle; otherwise a vertex of the component
    has two internal out-edges and routing through either gives two distinct
    first-return paths.
    """
    if not g.has_vertex(u):
        raise GraphError(f"unknown vertex {u!r}")
    part = scc_condense(g)
    k = part.class_of[u]
    if not part.nontrivial[k]:
        return CornerClass(CornerKind.SCALAR)
    members = set(part.classes[k])
    branching = None
    for w in part.classes[k]:
        internal = [e for e in g.out_edges(w) if g.range_of(e) in members]
        if len(internal) >= 2:
            branching = (w, internal[0], internal[1])
            break
    if branching is None:
        edges = []
        v = u
        while True:
            e = next(e for e in g.out_edges(v) if g.range_of(e) in members)
            edges.append(e)
            v = g.range_of(e)
            if v == u:
                break
        return CornerClass(CornerKind.POLYNOMIAL, (make_path(g, edges),))
    w, e1, e2 = branching
    prefix = shortest_path(g, u, w, within=members)
    witnesses = []
    for e in (e1, e2):
        back = shortest_path(g, g.range_of(e), u, within=members)
        witnesses.append(make_path(g, prefix + (e,) + back))
    return CornerClass(CornerKind.FREE, tuple(witnesses))


def first_return_paths(g, u, max_length):
    """All closed paths at ``u`` up to ``max_length`` that meet ``u`` only at
    both ends (brute force)."""
    out = []
    stack = [(u, ())]
    while stack:
        v, edges = stack.pop()
        if len(edges) >= max_length:
            continue
        for e in g.out_edges(v):
            w = g.range_of(e)
            nxt = edges + (e,)
            if w == u:
                out.append(make_path(g, nxt))
            else:
                stack.append((w, nxt))
    return sorted(out, key=Path.key)


# --------------------------------------------------------------------------
# monomial ideals and quotients

def _generator_kind(g, generators):
    gens = set(generators)
    if not gens:
        return None, gens
    is_v = [g.has_vertex(x) for x in gens]
    is_e = [g.has_edge(x) for x in gens]
    if all(is_v):
        return "vertex", gens
    if all(is_e):
        return "edge", gens
    unknown = [x for x, a, b in zip(gens, is_v, is_e) if not a and not b]
    if unknown:
        raise GraphError(f"unknown id(s) {sorted(unknown)}")
    raise ValueError("generators mix vertices and edges")


def _path_in_ideal(g, p, kind, gens):
    if kind == "vertex":
        return p.start in gens or any(g.range_of(e) in gens for e in p.edges)
    if kind == "edge":
        return any(e in gens for e in p.edges)
    return False


def ideal_contains(g, generators, a):
    """Membership in the two-sided ideal generated by vertices or by edges.

    Such an ideal is spanned by the paths that visit a generating vertex
    (resp. use a generating edge), so membership is decided term by term.
    """
    if a.graph is not g and a.graph != g:
        raise AmbientMismatch("element does not belong to this graph's algebra")
    kind, gens = _generator_kind(g, generators)
    return all(_path_in_ideal(g, p, kind, gens) for p in a._terms)


def quotient_project(a, generators):
    """Image of ``a`` in KE/(X) realised as the path algebra of the collapse."""
    g = a.graph
    kind, gens = _generator_kind(g, generators)
    if kind == "vertex":
        target = collapse_vertices(g, gens)
    elif kind == "edge":
        target = collapse_edges(g, gens)
    else:
        target = g
    kept = {p: c for p, c in a._terms.items() if not _path_in_ideal(g, p, kind, gens)}
    return Element._make(target, a.field, kept)


# --------------------------------------------------------------------------
# enumeration

def enumerate_paths(g, max_length):
    """All paths of length <= max_length in canonical order."""
    out = [trivial_path(v) for v in g.vertices]
    frontier = [make_path(g, (e,)) for e in g.edges] if max_length >= 1 else []
    length = 1
    while frontier:
        out.extend(frontier)
        if length >= max_length:
            break
        nxt = []
        for p in frontier:
            for e in g.out_edges(p.end):
                nxt.append(Path(p.start, g.range_of(e), p.edges + (e,)))
        frontier = nxt
        length += 1
    return sorted(out, key=Path.key)


def all_paths(g, limit=None):
    """Every path of an acyclic graph (raises if a closed path exists)."""
    if any(scc_condense(g).nontrivial):
        raise GraphError("graph has a closed path; the path set is infinite")
    paths = enumerate_paths(g, len(g.vertices))
    if limit is not None and len(paths) > limit:
        raise GraphError(f"{len(paths)} paths exceed the bound {limit}")
    return paths


# --------------------------------------------------------------------------
# expression parser

_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_]+)|([-+*/.]))")


def parse_element(g, text, field=QQ, path_length_cap=DEFAULT_PATH_LENGTH_CAP):
    """Parse ``3/2*f0.f1 + v0 - 2*f2`` against the graph ``g``.

    A bare coefficient stands for that multiple of the unit (sum of vertices).
    """
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            col = pos + 1 + len(stripped[pos:]) - len(stripped[pos:].lstrip())
            raise ParseError(f"unexpected character {stripped[col - 1]!r}", 1, col)
        tokens.append((m.group(m.lastindex), m.start(m.lastindex) + 1))
        pos = m.end()
    tokens.append(("", len(stripped) + 1))
    idx = 0

    def peek(k=0):
        return tokens[min(idx + k, len(tokens) - 1)][0]

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def coefficient():
        num, col = take()
        value = Fraction(int(num))
        if peek() == "/":
            take()
            den, dcol = take()
            if not den.isdigit():
                raise ParseError("expected an integer denominator", 1, dcol)
            if int(den) == 0:
                raise ParseError("zero denominator", 1, dcol)
            value = Fraction(int(num), int(den))
        try:
            return field(value)
        except ZeroDivisionError:
            raise ParseError(f"coefficient {value} is undefined in {field!r}", 1, col) from None

    def path():
        ident, col = take()
        if not ident or not re.fullmatch(r"[A-Za-z0-9_]+", ident):
            raise ParseError(f"expected a path, found {ident or 'end of input'!r}", 1, col)
        ids = [(ident, col)]
        while peek() == ".":
            take()
            nxt, ncol = take()
            if not nxt or not re.fullmatch(r"[A-Za-z0-9_]+", nxt):
                raise ParseError("expected an edge id after '.'", 1, ncol)
            ids.append((nxt, ncol))
        if len(ids) == 1 and g.has_vertex(ident):
            return trivial_path(ident)
        if len(ids) > path_length_cap:
            raise ParseError(f"path longer than the cap {path_length_cap}", 1, col)
        for name, c in ids:
            if not g.has_edge(name):
                what = "vertex in a path" if g.has_vertex(name) else "id"
                raise ParseError(f"unknown {what} {name!r}", 1, c)
        for (a, _), (b, c) in zip(ids, ids[1:]):
            if g.range_of(a) != g.source_of(b):
                raise ParseError(f"{a!r} and {b!r} are not composable", 1, c)
        return make_path(g, [name for name, _ in ids])

    def term():
        t = peek()
        if t.isdigit():
            after = peek(1)
            if after == "/" or after == "*":
                c = coefficient()
                if peek() == "*":
                    take()
                    return {path(): c}
                return {trivial_path(v): c for v in g.vertices}
            if after == "." or g.has_vertex(t) or g.has_edge(t):
                return {path(): field.one}
            c = coefficient()
            return {trivial_path(v): c for v in g.vertices}
        return {path(): field.one}

    if len(tokens) == 1:
        raise ParseError("empty expression", 1, 1)
    acc = {}
    sign = 1
    if peek() in ("+", "-"):
        sign = -1 if take()[0] == "-" else 1
    while True:
        for p, c in term().items():
            acc[p] = acc.get(p, field.zero) + (c if sign > 0 else -c)
        op = peek()
        if op in ("+", "-"):
            take()
            sign = -1 if op == "-" else 1
            continue
        if op == "":
            break
        raise ParseError(f"unexpected {op!r}", 1, tokens[idx][1])
    return Element._make(g, field, acc)
