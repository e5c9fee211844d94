"""The cycle algebra KC_n: its matrix model inside M_n(K[x]), the centroid,
the extended centroid K(x) and the central closure M_n(K(x)).

Vertices are v0..v(n-1) and f_i runs from v_i to v_(i+1 mod n).  For
indices i, j the path mu(i, j) = f_i...f_(j-1) is the shortest path from v_i
to v_j and c_i is the full turn starting at v_i.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .algebra import Element, Path, trivial_path
from .errors import PreconditionError
from .fields import QQ, Poly, PolyMatrix, RatFunc, RatMatrix, poly_lcm
from .graph import cycle_graph, induced_subgraph, scc_condense, weak_components


def _check_index(n, *idx):
    for i in idx:
        if not 0 <= i < n:
            raise ValueError(f"index {i} out of range for n={n}")


def m_exp(i, j, n=None):
    if n is not None:
        _check_index(n, i, j)
    return 1 if i > j else 0


def n_exp(i, j, k, n=None):
    if n is not None:
        _check_index(n, i, j, k)
    return 1 if (i <= k < j) or (j < i <= k) or (k < j < i) else 0


class CycleAlgebra:
    """KC_n over ``field``."""

    def __init__(self, n, field=QQ):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.n = n
        self.field = field
        self.graph = cycle_graph(n)

    def __repr__(self):
        return f"CycleAlgebra({self.n}, {self.field!r})"

    def __eq__(self, other):
        return isinstance(other, CycleAlgebra) and (self.n, self.field) == (other.n, other.field)

    def __hash__(self):
        return hash((self.n, self.field))

    def v(self, i):
        return f"v{i % self.n}"

    def f(self, i):
        return f"f{i % self.n}"

    def walk(self, i, length):
        """The unique path of the given length starting at v_i."""
        if length == 0:
            return trivial_path(self.v(i))
        edges = tuple(self.f(i + t) for t in range(length))
        return Path(self.v(i), self.v(i + length), edges)

    def mu_path(self, i, j):
        return self.walk(i, (j - i) % self.n)

    def c_path(self, i, power=1):
        return self.walk(i, power * self.n)

    def element(self, terms):
        return Element(self.graph, terms, self.field)

    def mu(self, i, j):
        return self.element({self.mu_path(i, j): 1})

    def c(self, i, power=1):
        return self.element({self.c_path(i, power): 1})

    def vertex(self, i):
        return self.element({trivial_path(self.v(i)): 1})

    def zero(self):
        return Element.zero(self.graph, self.field)

    def one(self):
        return Element.one(self.graph, self.field)


def _owner(a, cyc):
    if cyc is None:
        n = len(a.graph.vertices)
        if n == 0 or a.graph != cycle_graph(n):
            raise PreconditionError("element is not over a cycle algebra")
        return CycleAlgebra(n, a.field)
    if a.graph != cyc.graph or a.field != cyc.field:
        raise PreconditionError(f"element is not over {cyc!r}")
    return cyc


def tau_embed(a, cyc=None):
    """Image of ``a`` in M_n(K[x]): a path from v_i to v_j of length
    d + k*n (0 <= d < n) goes to x^(k + m(i,j)) E_ij."""
    cyc = _owner(a, cyc)
    n, F = cyc.n, cyc.field
    g = cyc.graph
    cells = [[{} for _ in range(n)] for _ in range(n)]
    for p, c in a.terms.items():
        i, j = g.index(p.start), g.index(p.end)
        k = (p.length - (j - i) % n) // n
        deg = k + m_exp(i, j)
        cell = cells[i][j]
        cell[deg] = cell.get(deg, F.zero) + c
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            cell = cells[i][j]
            top = max(cell, default=-1)
            row.append(Poly([cell.get(t, F.zero) for t in range(top + 1)], F))
        rows.append(row)
    return PolyMatrix(rows)


def tau_preimage(M, cyc=None):
    n = M.size
    if cyc is None:
        cyc = CycleAlgebra(n, M.field if M.field is not None else QQ)
    elif cyc.n != n:
        raise ValueError(f"matrix size {n} does not match n={cyc.n}")
    terms = {}
    for i in range(n):
        for j in range(n):
            P = M[i, j]
            m = m_exp(i, j)
            if m and P.coeffs and P.coeffs[0]:
                raise PreconditionError(f"not in Im(τ): entry ({i},{j}) = {P} is not divisible by x",
                                        (i, j))
            d = (j - i) % n
            for deg, coef in enumerate(P.coeffs):
                if coef:
                    terms[cyc.walk(i, d + (deg - m) * n)] = coef
    return Element(cyc.graph, terms, cyc.field)


# --------------------------------------------------------------------------
# centroid

class CentroidKind(enum.Enum):
    SCALAR = "Scalar"
    POLYNOMIAL_ON_CYCLE = "PolynomialOnCycle"


@dataclass(frozen=True)
class CentroidPart:
    vertices: tuple
    kind: CentroidKind
    n: int = 0

    @property
    def label(self):
        if self.kind is CentroidKind.POLYNOMIAL_ON_CYCLE:
            return f"PolynomialOnCycle({self.n})"
        return "Scalar"


def _is_exact_cycle(h):
    if not h.edges or len(h.edges) != len(h.vertices):
        return False
    return len(scc_condense(h).classes) == 1


def centroid_descriptor(g):
    parts = []
    for comp in weak_components(g):
        h = induced_subgraph(g, comp)
        if _is_exact_cycle(h):
            parts.append(CentroidPart(comp, CentroidKind.POLYNOMIAL_ON_CYCLE, len(comp)))
        else:
            parts.append(CentroidPart(comp, CentroidKind.SCALAR))
    return tuple(parts)


def center_generator(cyc):
    z = cyc.zero()
    for i in range(cyc.n):
        z = z + cyc.c(i)
    return z


@dataclass(frozen=True)
class Extension:
    consistent: bool
    values: dict = None
    failing_edge: str = None


def _push_forward(a, f, g):
    # solve T(s) f = f T(t) for T(t), T(s) = a in sAs
    t = g.range_of(f)
    out = {}
    for p, c in a.terms.items():
        if not p.edges:
            out[trivial_path(t)] = c
        elif p.edges[0] == f:
            out[Path(t, t, p.edges[1:] + (f,))] = c
        else:
            return None
    return Element(g, out, a.field)


def _pull_back(b, f, g):
    # solve T(s) f = f T(t) for T(s), T(t) = b in tAt
    s = g.source_of(f)
    out = {}
    for q, c in b.terms.items():
        if not q.edges:
            out[trivial_path(s)] = c
        elif q.edges[-1] == f:
            out[Path(s, s, (f,) + q.edges[:-1])] = c
        else:
            return None
    return Element(g, out, b.field)


def centralizer_extend(g, u, value_at_u):
    """Extend T(u) = value_at_u to every vertex via T(s) f = f T(t).

    Because right multiplication by an edge is injective on the relevant
    corner, each value is forced; the first edge where the law cannot hold
    is reported.
    """
    if not g.has_vertex(u):
        raise PreconditionError(f"unknown vertex {u!r}")
    if len(weak_components(g)) != 1:
        raise PreconditionError("graph is not connected")
    for p in value_at_u.terms:
        if p.start != u or p.end != u:
            raise PreconditionError(f"value is not in {u}A{u}: term {p}")
    values = {u: value_at_u}
    queue = deque([u])
    while queue:
        v = queue.popleft()
        for f in g.out_edges(v):
            w = g.range_of(f)
            if w not in values:
                nxt = _push_forward(values[v], f, g)
                if nxt is None:
                    return Extension(False, failing_edge=f)
                values[w] = nxt
                queue.append(w)
        for f in g.in_edges(v):
            w = g.source_of(f)
            if w not in values:
                nxt = _pull_back(values[v], f, g)
                if nxt is None:
                    return Extension(False, failing_edge=f)
                values[w] = nxt
                queue.append(w)
    for f in g.edges:
        s, t = g.source_of(f), g.range_of(f)
        fe = Element.path(g, f, field=value_at_u.field)
        if values[s] * fe != fe * values[t]:
            return Extension(False, failing_edge=f)
    return Extension(True, values=values)


# --------------------------------------------------------------------------
# extended centroid

class AdmissiblePair:
    """Canonical (p, q): q monic, gcd(p, q) = 1.  Stands for p(c)/q(c)."""

    __slots__ = ("p", "q")

    def __init__(self, p, q=None):
        r = RatFunc(p, q)
        self.p = r.num
        self.q = r.den

    @classmethod
    def _raw(cls, p, q):
        obj = cls.__new__(cls)
        obj.p, obj.q = p, q
        return obj

    @property
    def field(self):
        return self.p.field

    def is_zero(self):
        return self.p.is_zero()

    def __add__(self, other):
        q0 = poly_lcm(self.q, other.q)
        return AdmissiblePair(self.p * (q0 // self.q) + other.p * (q0 // other.q), q0)

    def __neg__(self):
        return AdmissiblePair._raw(-self.p, self.q)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return AdmissiblePair(self.p * other.p, self.q * other.q)

    def __eq__(self, other):
        return isinstance(other, AdmissiblePair) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"AdmissiblePair({self.p}, {self.q})"


def omega(pair):
    return RatFunc(pair.p, pair.q)


def omega_inverse(r):
    return AdmissiblePair._raw(r.num, r.den)


def admissible_apply(pair, a, cyc=None):
    """Apply p(c)/q(c) to ``a`` in the ideal J(q)."""
    cyc = _owner(a, cyc)
    M = tau_embed(a, cyc)
    rows = []
    for i in range(cyc.n):
        row = []
        for j in range(cyc.n):
            P = M[i, j]
            quo, rem = divmod(P, pair.q)
            if rem or (m_exp(i, j) and quo.coeffs and quo.coeffs[0]):
                raise PreconditionError(
                    f"element is not in J(q): component ({i},{j}) = {P} is not divisible "
                    f"by {pair.q * Poly.monomial(1, m_exp(i, j), cyc.field)}", (i, j))
            row.append(quo * pair.p)
        rows.append(row)
    return tau_preimage(PolyMatrix(rows), cyc)


def theta(a, pair, cyc=None):
    cyc = _owner(a, cyc)
    return tau_embed(a, cyc).to_rat().scale(omega(pair))


def theta_sum(tensor, cyc):
    """theta of a formal sum of (Element, AdmissiblePair) summands."""
    acc = RatMatrix.zeros(cyc.n, cyc.field)
    for a, pair in tensor:
        acc = acc + theta(a, pair, cyc)
    return acc


def tensor_mul(s, t):
    return [(a * b, lam * mu) for a, lam in s for b, mu in t]


def closure_preimage(M, cyc=None):
    """Write M = (1/q) B with B in the image of tau; returns (a, (1, q))."""
    n = M.size
    F = M.field if M.field is not None else QQ
    if cyc is None:
        cyc = CycleAlgebra(n, F)
    q = Poly.one(F)
    for r in M.rows:
        for e in r:
            q = poly_lcm(q, e.den)
    B = [[(e * q).num for e in r] for r in M.rows]
    if any(B[i][j].coeffs and B[i][j].coeffs[0] for i in range(n) for j in range(i)):
        x = Poly.x(F)
        q = q * x
        B = [[e * x for e in r] for r in B]
    return tau_preimage(PolyMatrix(B), cyc), AdmissiblePair._raw(Poly.one(F), q)
