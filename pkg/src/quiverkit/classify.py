"""Ring-theoretic properties of KE decided from the geometry of E.

Every decider returns a ``Verdict``: the boolean plus a witness.  Negative
answers always carry a counterexample; positive answers carry a certificate
where one is cheap (a topological order, a source chain, ...).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, fields
from typing import NamedTuple

from .algebra import Path, trivial_path
from .errors import PreconditionError
from .graph import (
    _check_side,
    cycle_through,
    induced_subgraph,
    scc_condense,
    skeleton,
    source_chain,
    weak_components,
)


class Verdict(NamedTuple):
    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


# --------------------------------------------------------------------------
# finiteness

def is_artinian(g):
    part = scc_condense(g)
    for k, nt in enumerate(part.nontrivial):
        if nt:
            return Verdict(False, cycle_through(g, part.classes[k][0], part))
    chain = source_chain(g, "left")
    return Verdict(True, tuple(v for st in chain.stages for v in st))


def is_semiartinian(g, side="left"):
    chain = source_chain(g, side)
    return Verdict(not chain.residue, chain)


@dataclass(frozen=True)
class Socle:
    side: str
    vertices: tuple
    description: str
    basis: tuple = None  # explicit paths, only for acyclic graphs


def _paths_from(g, v, allowed=None):
    out = [trivial_path(v)]
    stack = [(v, ())]
    while stack:
        w, edges = stack.pop()
        for e in g.out_edges(w):
            r = g.range_of(e)
            if allowed is not None and r not in allowed:
                continue
            nxt = edges + (e,)
            out.append(Path(v, r, nxt))
            stack.append((r, nxt))
    return out


def _paths_to(g, v):
    out = [trivial_path(v)]
    stack = [(v, ())]
    while stack:
        w, edges = stack.pop()
        for e in g.in_edges(w):
            s = g.source_of(e)
            nxt = (e,) + edges
            out.append(Path(s, v, nxt))
            stack.append((s, nxt))
    return out


def socle(g, side="left", explicit_basis=None):
    """Left socle: generated by the sources, spanned by paths starting at one.
    Right socle: sinks and paths ending at one.

    ``explicit_basis`` None materializes the basis when g is acyclic; True
    demands it and raises on a graph with a closed path.
    """
    _check_side(side)
    gens = g.sources() if side == "left" else g.sinks()
    if side == "left":
        desc = "span of paths starting at a source" if gens else "zero"
    else:
        desc = "span of paths ending at a sink" if gens else "zero"
    acyclic = not any(scc_condense(g).nontrivial)
    if explicit_basis is False or (explicit_basis is None and not acyclic):
        return Socle(side, gens, desc)
    if not acyclic:
        raise PreconditionError("infinite-dimensional socle basis", find_cycle(g))
    basis = []
    for v in gens:
        basis.extend(_paths_from(g, v) if side == "left" else _paths_to(g, v))
    basis.sort(key=Path.key)
    return Socle(side, gens, desc, tuple(basis))


def socle_chain_ideal(g, side="left", alpha=1):
    """Vertices generating the alpha-th socle-chain ideal."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    chain = source_chain(g, side)
    covered = chain.covered(alpha)
    return frozenset(covered)


def find_cycle(g):
    part = scc_condense(g)
    for k, nt in enumerate(part.nontrivial):
        if nt:
            return cycle_through(g, part.classes[k][0], part)
    return None


# --------------------------------------------------------------------------
# primeness family

def radical_edges(g):
    """Edges without return: endpoints in different strongly connected components."""
    part = scc_condense(g)
    cls = part.class_of
    return frozenset(e for e in g.edges if cls[g.source_of(e)] != cls[g.range_of(e)])


def radical_contains(a):
    g = a.graph
    cls = scc_condense(g).class_of
    return all(p.edges and cls[p.start] != cls[p.end] for p in a.terms)


def is_semiprime(g):
    part = scc_condense(g)
    cls = part.class_of
    for e in g.edges:
        if cls[g.source_of(e)] != cls[g.range_of(e)]:
            return Verdict(False, e)
    return Verdict(True, part.classes)


def _unreachable_pair(g, part):
    # transitive closure of the condensation, then the first missing pair
    cond = part.condensation
    reach = {k: {k} for k in range(len(part.classes))}
    changed = True
    while changed:
        changed = False
        for a, b in cond:
            new = reach[b] - reach[a]
            if new:
                reach[a] |= new
                changed = True
    for a in range(len(part.classes)):
        for b in range(len(part.classes)):
            if b not in reach[a]:
                return (part.classes[a][0], part.classes[b][0])
    raise AssertionError("condensation with several classes must have an unreachable pair")


def is_prime(g):
    if not g.vertices:
        return Verdict(False, ())
    part = scc_condense(g)
    if len(part.classes) == 1:
        return Verdict(True, part.classes[0])
    return Verdict(False, _unreachable_pair(g, part))


def is_primitive(g):
    """Strongly connected and every cycle has an exit.

    In a strongly connected graph some cycle lacks an exit exactly when the
    whole graph is one cycle, i.e. |E| = |V| with every out-degree 1.
    """
    prime = is_prime(g)
    if not prime.holds:
        return prime
    if g.edges and len(g.edges) == len(g.vertices):
        return Verdict(False, cycle_through(g, g.vertices[0]))
    branching = next((v for v in g.vertices if len(g.out_edges(v)) >= 2), None)
    if branching is None:
        return Verdict(True, ())
    return Verdict(True, g.out_edges(branching)[:2])


def is_simple(g):
    return len(g.vertices) == 1 and not g.edges


def is_noetherian(g, side="left"):
    """Left: no cycle has an entry.  Right: no cycle has an exit.

    Checked as: every vertex on a closed path has in-degree 1 (left) or
    out-degree 1 (right).  A vertex of a nontrivial component with a second
    incoming edge gives a cycle through it plus an entry.
    """
    _check_side(side)
    part = scc_condense(g)
    deg = g.in_edges if side == "left" else g.out_edges
    for v in g.vertices:
        if not part.nontrivial[part.class_of[v]] or len(deg(v)) == 1:
            continue
        cyc = cycle_through(g, v, part)
        used = set(cyc)
        extra = next(e for e in deg(v) if e not in used)
        return Verdict(False, (cyc, extra))
    return Verdict(True, ())


# --------------------------------------------------------------------------
# structure theorems

class Kind(enum.Enum):
    SIMPLE_VERTEX = "SimpleVertex"
    CYCLE = "Cycle"
    PRIMITIVE = "Primitive"


@dataclass(frozen=True)
class Component:
    vertices: tuple
    kind: Kind
    n: int = 0  # cycle length for Kind.CYCLE

    @property
    def label(self):
        return f"Cycle({self.n})" if self.kind is Kind.CYCLE else self.kind.value


@dataclass(frozen=True)
class Decomposition:
    components: tuple

    def labels(self):
        return [c.label for c in self.components]

    def to_dict(self):
        return [{"kind": c.label, "vertices": list(c.vertices)} for c in self.components]


def _component_kind(h):
    if len(h.vertices) == 1 and not h.edges:
        return Component(h.vertices, Kind.SIMPLE_VERTEX)
    if len(h.edges) == len(h.vertices):
        return Component(h.vertices, Kind.CYCLE, len(h.vertices))
    return Component(h.vertices, Kind.PRIMITIVE)


def decompose_semiprime(g):
    sp = is_semiprime(g)
    if not sp.holds:
        raise PreconditionError(f"graph is not semiprime: edge {sp.witness!r} has no return",
                                sp.witness)
    return Decomposition(tuple(_component_kind(induced_subgraph(g, comp))
                               for comp in weak_components(g)))


def decompose_mod_radical(g):
    part = scc_condense(g)
    return Decomposition(tuple(_component_kind(induced_subgraph(g, cls))
                               for cls in part.classes))


@dataclass(frozen=True)
class TriangularForm:
    side: str
    s_block_vertices: tuple
    t_block_vertices: tuple
    b_paths_generators: tuple


def _require_noetherian(g, side):
    v = is_noetherian(g, side)
    if not v.holds:
        cyc, edge = v.witness
        what = "entry" if side == "left" else "exit"
        raise PreconditionError(f"graph is not {side} noetherian: cycle {list(cyc)} has "
                                f"{what} {edge!r}", v.witness)


def triangular_form(g, side="left"):
    """Split KE as [[S, B], [0, T]] with S on cycle vertices (left side).

    The b generators are the paths from the s-block into the t-block that
    avoid cycle edges.
    """
    _check_side(side)
    _require_noetherian(g, side)
    on_cycle = scc_condense(g).cycle_vertices()
    cyc = tuple(v for v in g.vertices if v in on_cycle)
    rest = tuple(v for v in g.vertices if v not in on_cycle)
    s_block, t_block = (cyc, rest) if side == "left" else (rest, cyc)
    s_set, t_set = set(s_block), set(t_block)
    gens = []
    if side == "left":
        # leave the cycles once, then stay in the acyclic part
        for v in s_block:
            for e in g.out_edges(v):
                w = g.range_of(e)
                if w in t_set:
                    for p in _paths_from(g, w, allowed=t_set):
                        gens.append(Path(v, p.end, (e,) + p.edges))
    else:
        # wander in the acyclic part, then enter a cycle once
        for w in t_block:
            for e in g.in_edges(w):
                v = g.source_of(e)
                if v in s_set:
                    for p in _paths_to_within(g, v, s_set):
                        gens.append(Path(p.start, w, p.edges + (e,)))
    gens.sort(key=Path.key)
    return TriangularForm(side, s_block, t_block, tuple(gens))


def _paths_to_within(g, v, allowed):
    out = [trivial_path(v)]
    stack = [(v, ())]
    while stack:
        w, edges = stack.pop()
        for e in g.in_edges(w):
            s = g.source_of(e)
            if s in allowed:
                nxt = (e,) + edges
                out.append(Path(s, v, nxt))
                stack.append((s, nxt))
    return out


@dataclass(frozen=True)
class NoetherInvariant:
    n0: int
    cycle_lengths: tuple

    def as_tuple(self):
        return (self.n0, self.cycle_lengths)


def noether_invariant(g, side="left"):
    _check_side(side)
    _require_noetherian(g, side)
    part = scc_condense(g)
    lengths = sorted(len(c) for c, nt in zip(part.classes, part.nontrivial) if nt)
    return NoetherInvariant(len(skeleton(g).vertices), tuple(lengths))


# --------------------------------------------------------------------------
# reports

_PROPS = ("artinian", "finite_dim", "noetherian_left", "noetherian_right", "prime",
          "primitive", "semiartinian_left", "semiartinian_right", "semiprime", "simple")


def _jsonable(x):
    if isinstance(x, Path):
        return list(x.edges) if x.edges else [x.start]
    if hasattr(x, "to_dict"):
        return x.to_dict()
    if isinstance(x, (list, tuple, frozenset, set)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(i) for i in items]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


@dataclass
class ClassificationReport:
    finite_dim: bool
    artinian: bool
    semiartinian_left: bool
    semiartinian_right: bool
    semiprime: bool
    prime: bool
    primitive: bool
    simple: bool
    noetherian_left: bool
    noetherian_right: bool
    witnesses: dict = field(default_factory=dict)

    def to_dict(self):
        d = {name: getattr(self, name) for name in _PROPS}
        d["witnesses"] = {k: _jsonable(self.witnesses[k]) for k in sorted(self.witnesses)}
        return d

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"unknown report keys {sorted(unknown)}")
        return cls(**{k: d[k] for k in _PROPS}, witnesses=dict(d.get("witnesses", {})))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_text(self):
        lines = []
        for name in _PROPS:
            lines.append(f"{name}: {'yes' if getattr(self, name) else 'no'}")
            if name in self.witnesses:
                lines.append(f"  witness: {json.dumps(_jsonable(self.witnesses[name]))}")
        return "\n".join(lines)

    def check_implications(self):
        chain = [self.simple, self.primitive, self.prime, self.semiprime]
        return all(b or not a for a, b in zip(chain, chain[1:])) and \
            self.artinian == self.finite_dim


def classify(g):
    art = is_artinian(g)
    sal, sar = is_semiartinian(g, "left"), is_semiartinian(g, "right")
    sp, pr, prim = is_semiprime(g), is_prime(g), is_primitive(g)
    nl, nr = is_noetherian(g, "left"), is_noetherian(g, "right")
    w = {}
    w["artinian"] = ({"topological_order": list(art.witness)} if art.holds
                     else {"closed_path": list(art.witness)})
    w["finite_dim"] = w["artinian"]
    w["semiartinian_left"] = sal.witness.to_dict()
    w["semiartinian_right"] = sar.witness.to_dict()
    w["semiprime"] = ({"components": [list(c) for c in sp.witness]} if sp.holds
                      else {"no_return_edge": sp.witness})
    if pr.holds:
        w["prime"] = {"strong_component": list(pr.witness)}
    else:
        w["prime"] = {"unreachable_pair": list(pr.witness)}
    if prim.holds:
        w["primitive"] = {"branching_edges": list(prim.witness)}
    elif pr.holds:
        w["primitive"] = {"exitless_cycle": list(prim.witness)}
    else:
        w["primitive"] = {"unreachable_pair": list(prim.witness)}
    for side, v in (("left", nl), ("right", nr)):
        if not v.holds:
            cyc, edge = v.witness
            key = "entry" if side == "left" else "exit"
            w[f"noetherian_{side}"] = {"cycle": list(cyc), key: edge}
    simple = is_simple(g)
    if not simple:
        w["simple"] = {"vertices": len(g.vertices), "edges": len(g.edges)}
    return ClassificationReport(
        finite_dim=art.holds, artinian=art.holds,
        semiartinian_left=sal.holds, semiartinian_right=sar.holds,
        semiprime=sp.holds, prime=pr.holds, primitive=prim.holds, simple=simple,
        noetherian_left=nl.holds, noetherian_right=nr.holds,
        witnesses=w,
    )

