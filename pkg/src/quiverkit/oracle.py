"""Slow, definition-level checks used to audit the graph-theoretic deciders.

Nothing here reuses the component/cycle machinery of ``graph`` or
``classify``; the only shared code is path and element arithmetic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .algebra import Element, Path, elem_mul, trivial_path
from .classify import (is_artinian, is_noetherian, is_prime, is_primitive,
                       is_semiprime, radical_contains, socle)
from .errors import CycleCapExceeded, GraphError, PreconditionError
from .fields import QQ

DEFAULT_DIM_BOUND = 64


# --------------------------------------------------------------------------
# finite-dimensional realisation

@dataclass(frozen=True, eq=False)
class StructureAlgebra:
    graph: object
    field: object
    basis: tuple
    mult: dict  # (i, j) -> index of basis[i]*basis[j], absent when 0

    @property
    def dim(self):
        return len(self.basis)

    def index(self, p):
        return self._pos[p]

    def __post_init__(self):
        object.__setattr__(self, "_pos", {p: i for i, p in enumerate(self.basis)})

    def to_vector(self, a):
        v = [self.field.zero] * self.dim
        for p, c in a.terms.items():
            v[self._pos[p]] = c
        return v

    def to_element(self, vec):
        return Element(self.graph, {self.basis[i]: c for i, c in enumerate(vec) if c}, self.field)

    def mul_vectors(self, u, v):
        out = [self.field.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    k = self.mult.get((i, j))
                    if k is not None:
                        out[k] = out[k] + a * b
        return out


def _all_paths_bruteforce(g, bound):
    paths = []
    stack = [(v, (), frozenset([v])) for v in g.vertices]
    for v in g.vertices:
        paths.append(trivial_path(v))
    while stack:
        start, edges, seen = stack.pop()
        end = g.range_of(edges[-1]) if edges else start
        for e in g.out_edges(end):
            w = g.range_of(e)
            if w in seen:
                raise GraphError("graph contains a closed path; algebra is infinite-dimensional")
            nxt = edges + (e,)
            paths.append(Path(start, w, nxt))
            if len(paths) > bound:
                raise GraphError(f"path count exceeds the bound {bound}")
            stack.append((start, nxt, seen | {w}))
    if len(paths) > bound:
        raise GraphError(f"path count exceeds the bound {bound}")
    return sorted(paths, key=Path.key)


def structure_constants(g, field=QQ, bound=DEFAULT_DIM_BOUND):
    basis = tuple(_all_paths_bruteforce(g, bound))
    elems = [Element(g, {p: 1}, field) for p in basis]
    pos = {p: i for i, p in enumerate(basis)}
    mult = {}
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            prod = elem_mul(a, b)
            if prod:
                (p,) = prod.terms
                mult[(i, j)] = pos[p]
    return StructureAlgebra(g, field, basis, mult)


# --------------------------------------------------------------------------
# plain linear algebra over the ground field

def rref(rows, field):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    M = [list(r) for r in rows]
    pivots = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = field.one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                k = M[i][c]
                M[i] = [x - k * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, field):
    return len(rref(rows, field)[1])


def nullspace(rows, ncols, field):
    """Basis of {x : rows . x = 0}."""
    R, pivots = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for r, pc in zip(R, pivots):
            v[pc] = -r[f]
        out.append(v)
    return out


# --------------------------------------------------------------------------
# radical, ideals, minimality

def trace_radical(A):
    """Radical via the trace form: x with tr(L_{x y}) = 0 for every y."""
    if A.field.characteristic != 0:
        raise PreconditionError("oracle requires characteristic 0")
    n = A.dim
    F = A.field
    tr = []
    for k in range(n):
        t = F.zero
        for i in range(n):
            if A.mult.get((k, i)) == i:
                t = t + F.one
        tr.append(t)
    # G[b][a] = tr(L_{e_a e_b}); the radical is the null space of x -> (sum_a x_a G[.][a])
    G = [[F.zero] * n for _ in range(n)]
    for (a, b), k in A.mult.items():
        G[b][a] = G[b][a] + tr[k]
    return nullspace(G, n, F)


def span_dim(A, vectors):
    return rank(vectors, A.field) if vectors else 0


def ideal_closure(A, generators, side="two"):
    """Brute-force closure of the span of ``generators`` under multiplication."""
    F = A.field
    units = []
    for i in range(A.dim):
        v = [F.zero] * A.dim
        v[i] = F.one
        units.append(v)
    current = [list(g) for g in generators if any(g)]
    basis, _ = rref(current, F) if current else ([], [])
    while True:
        new = list(basis)
        for x in basis:
            for u in units:
                if side in ("two", "left"):
                    new.append(A.mul_vectors(u, x))
                if side in ("two", "right"):
                    new.append(A.mul_vectors(x, u))
        nb, _ = rref([r for r in new if any(r)], F) if any(any(r) for r in new) else ([], [])
        if len(nb) == len(basis):
            return nb
        basis = nb


def minimal_ideal_check(A, x, side="left"):
    """True iff the one-sided ideal generated by x is one-dimensional."""
    vec = A.to_vector(x) if isinstance(x, Element) else list(x)
    if not any(vec):
        raise ValueError("x must be nonzero")
    return len(ideal_closure(A, [vec], side)) == 1


def nilpotency_index(A, vectors, limit=None):
    """Smallest k with I^k = 0 for the two-sided ideal I spanned by vectors, or None."""
    F = A.field
    ideal = ideal_closure(A, vectors)
    if not ideal:
        return 1
    power = ideal
    limit = limit or A.dim + 1
    for k in range(2, limit + 2):
        prods = [A.mul_vectors(a, b) for a in power for b in ideal]
        prods = [p for p in prods if any(p)]
        if not prods:
            return k
        power, _ = rref(prods, F)
    return None


# --------------------------------------------------------------------------
# graph searches

def return_path_exists(g, frm, to):
    """Is there a path (possibly trivial) from ``frm`` to ``to``?"""
    for v in (frm, to):
        if not g.has_vertex(v):
            raise GraphError(f"unknown vertex {v!r}")
    seen = {frm}
    queue = deque([frm])
    while queue:
        v = queue.popleft()
        if v == to:
            return True
        for e in g.out_edges(v):
            w = g.range_of(e)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


def brute_simple_cycles(g, cap=None):
    """All simple cycles by plain backtracking, each rooted at its
    earliest-declared vertex."""
    order = {v: i for i, v in enumerate(g.vertices)}
    found = []
    for s in g.vertices:
        stack = [(s, (), {s})]
        while stack:
            v, edges, seen = stack.pop()
            for e in g.out_edges(v):
                w = g.range_of(e)
                if w == s:
                    found.append(edges + (e,))
                    if cap is not None and len(found) > cap:
                        raise CycleCapExceeded(cap)
                elif order[w] > order[s] and w not in seen:
                    stack.append((w, edges + (e,), seen | {w}))
    return found


def _exits_entries(g, cyc):
    on = set(cyc)
    verts = {g.source_of(e) for e in cyc}
    exits = [e for e in g.edges if e not in on and g.source_of(e) in verts]
    entries = [e for e in g.edges if e not in on and g.range_of(e) in verts]
    return exits, entries


def oracle_semiprime(g):
    # every path mu (encoded by its endpoints) must admit a return path
    for u in g.vertices:
        for e in g.out_edges(u):
            seen = {g.range_of(e)}
            queue = deque(seen)
            while queue:
                w = queue.popleft()
                if not return_path_exists(g, w, u):
                    return False
                for f in g.out_edges(w):
                    x = g.range_of(f)
                    if x not in seen:
                        seen.add(x)
                        queue.append(x)
    return True


def oracle_prime(g):
    if not g.vertices:
        return False
    return all(return_path_exists(g, a, b) for a in g.vertices for b in g.vertices)


def oracle_artinian(g):
    return not brute_simple_cycles(g)


def oracle_noetherian(g, side="left", cap=None):
    for cyc in brute_simple_cycles(g, cap):
        exits, entries = _exits_entries(g, cyc)
        if (entries if side == "left" else exits):
            return False
    return True


def oracle_primitive(g, cap=None):
    if not oracle_prime(g):
        return False
    for cyc in brute_simple_cycles(g, cap):
        if not _exits_entries(g, cyc)[0]:
            return False
    return True


def no_return_paths(A):
    """Indices of basis paths of positive length whose end cannot reach their start."""
    g = A.graph
    return [i for i, p in enumerate(A.basis)
            if p.edges and not return_path_exists(g, p.end, p.start)]


# --------------------------------------------------------------------------
# self-audit

@dataclass
class AuditReport:
    checks: list = field(default_factory=list)  # (name, expected, got)

    def add(self, name, expected, got):
        self.checks.append((name, expected, got))

    @property
    def ok(self):
        return all(e == g for _, e, g in self.checks)

    def failures(self):
        return [c for c in self.checks if c[1] != c[2]]

    def to_text(self):
        lines = []
        for name, exp, got in self.checks:
            mark = "ok" if exp == got else "MISMATCH"
            lines.append(f"{mark:8} {name}: oracle={exp} decider={got}")
        lines.append("audit passed" if self.ok else f"audit failed ({len(self.failures())})")
        return "\n".join(lines)

    def to_dict(self):
        return {"ok": self.ok,
                "checks": [{"name": n, "oracle": e, "decider": g} for n, e, g in self.checks]}


def audit(g, field=QQ, cycle_cap=None, bound=DEFAULT_DIM_BOUND):
    """Compare every decider with its definition-level oracle on ``g``."""
    
    rep = AuditReport()
    rep.add("semiprime", oracle_semiprime(g), is_semiprime(g).holds)
    rep.add("prime", oracle_prime(g), is_prime(g).holds)
    rep.add("artinian", oracle_artinian(g), is_artinian(g).holds)
    rep.add("primitive", oracle_primitive(g, cycle_cap), is_primitive(g).holds)
    for side in ("left", "right"):
        rep.add(f"noetherian_{side}", oracle_noetherian(g, side, cycle_cap),
                is_noetherian(g, side).holds)
    if not brute_simple_cycles(g, cycle_cap):
        try:
            A = structure_constants(g, field, bound)
        except GraphError:
            return rep
        rad = [A.to_vector(Element(g, {A.basis[i]: 1}, field)) for i in no_return_paths(A)]
        claimed = sorted(i for i, p in enumerate(A.basis)
                         if radical_contains(Element(g, {p: 1}, field)))
        rep.add("radical_paths", [str(A.basis[i]) for i in no_return_paths(A)],
                [str(A.basis[i]) for i in claimed])
        if field.characteristic == 0:
            tr = trace_radical(A)
            same = rank(tr + rad, field) == len(tr) == len(rad)
            rep.add("trace_radical_dim", len(tr), len(rad))
            rep.add("trace_radical_span", True, same)
        else:
            rep.add("radical_nilpotent", True, nilpotency_index(A, rad) is not None)
        for side in ("left", "right"):
            soc = socle(g, side, explicit_basis=True)
            in_socle = set(soc.basis)
            minimal = [p for p in A.basis
                       if minimal_ideal_check(A, Element(g, {p: 1}, field), side)]
            rep.add(f"socle_{side}", [str(p) for p in sorted(minimal, key=Path.key)],
                    [str(p) for p in sorted(in_socle, key=Path.key)])
    return rep
