import random

import pytest

from quiverkit.algebra import Element, parse_element
from quiverkit.cycle import (
    AdmissiblePair, CentroidKind, CycleAlgebra, admissible_apply, center_generator,
    centralizer_extend, centroid_descriptor, closure_preimage, m_exp, n_exp, omega,
    omega_inverse, tau_embed, tau_preimage, tensor_mul, theta, theta_sum,
)
from quiverkit.errors import PreconditionError
from quiverkit.fields import GF, QQ, Poly, PolyMatrix, RatFunc, RatMatrix, mat_mul, parse_ratfunc
from quiverkit.gen import random_element, random_poly, random_ratmatrix
from quiverkit.graph import Graph, cycle_graph, disjoint_union, line_graph, rose_graph

x = Poly.x()


def poly_of_z(cyc, poly):
    """poly evaluated at the central element z = sum of the c_i."""
    z = center_generator(cyc)
    acc = cyc.zero()
    power = cyc.one()
    for c in poly.coeffs:
        acc = acc + power * c
        power = power * z
    return acc


def random_pair(rng, field=QQ):
    return AdmissiblePair(random_poly(rng, field, 3), random_poly(rng, field, 3, allow_zero=False))


def test_m_and_n_examples():
    assert m_exp(1, 0) == 1 and m_exp(0, 1) == 0
    assert n_exp(0, 2, 1) == 1
    assert 1 + m_exp(0, 1) == m_exp(0, 2) + m_exp(2, 1)
    assert n_exp(2, 2, 2) == 0
    with pytest.raises(ValueError):
        m_exp(3, 0, n=3)


def test_peirce_product_law_on_paths():
    for n in range(1, 7):
        cyc = CycleAlgebra(n)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = cyc.mu(i, j) * cyc.mu(j, k)
                    rhs = cyc.element({cyc.walk(i, n_exp(i, j, k) * n + (k - i) % n): 1})
                    assert lhs == rhs


def test_tau_examples():
    c3 = CycleAlgebra(3)
    assert tau_embed(c3.vertex(1)) == PolyMatrix.elementary(3, 1, 1)
    assert tau_embed(c3.mu(2, 0)) == PolyMatrix.elementary(3, 2, 0, x)
    assert tau_embed(c3.c(0)) == PolyMatrix.elementary(3, 0, 0, x)
    e = [tau_embed(c3.element({c3.walk(i, 1): 1})) for i in range(3)]
    assert mat_mul(mat_mul(e[0], e[1]), e[2]) == tau_embed(c3.c(0))


def test_tau_rejects_non_cycle_elements():
    with pytest.raises(PreconditionError):
        tau_embed(parse_element(line_graph(2), "f1"))


@pytest.mark.parametrize("field", [QQ, GF(101)])
def test_tau_homomorphism_injective(field):
    rng = random.Random(1)
    for n in range(1, 5):
        cyc = CycleAlgebra(n, field)
        for _ in range(80):
            a = random_element(rng, cyc.graph, field, 4, 3 * n)
            b = random_element(rng, cyc.graph, field, 4, 3 * n)
            assert tau_embed(a * b, cyc) == mat_mul(tau_embed(a, cyc), tau_embed(b, cyc))
            assert tau_embed(a + b, cyc) == tau_embed(a, cyc) + tau_embed(b, cyc)
            assert tau_embed(a, cyc).is_zero() == a.is_zero()
            assert tau_preimage(tau_embed(a, cyc), cyc) == a


def test_tau_image_shape():
    rng = random.Random(2)
    cyc = CycleAlgebra(4)
    for _ in range(100):
        M = tau_embed(random_element(rng, cyc.graph, QQ, 5, 10))
        for i in range(4):
            for j in range(i):
                assert not M[i, j].coeffs or not M[i, j].coeffs[0]


def test_tau_preimage_examples():
    c3 = CycleAlgebra(3)
    assert tau_preimage(PolyMatrix.elementary(3, 0, 0)) == c3.vertex(0)
    assert tau_preimage(PolyMatrix.elementary(3, 1, 0, x)) == c3.mu(1, 0)
    with pytest.raises(PreconditionError, match=r"not in Im\(τ\): entry \(1,0\)"):
        tau_preimage(PolyMatrix.elementary(3, 1, 0))


def test_centroid_descriptor_examples():
    (part,) = centroid_descriptor(cycle_graph(4))
    assert part.kind is CentroidKind.POLYNOMIAL_ON_CYCLE and part.n == 4
    assert [p.label for p in centroid_descriptor(rose_graph(2))] == ["Scalar"]
    g = disjoint_union(Graph(["u"]), cycle_graph(2))
    assert [p.label for p in centroid_descriptor(g)] == ["Scalar", "PolynomialOnCycle(2)"]
    assert [p.label for p in centroid_descriptor(line_graph(3))] == ["Scalar"]


def test_center_generator_examples():
    assert center_generator(CycleAlgebra(1)) == parse_element(cycle_graph(1), "f0")
    c3 = CycleAlgebra(3)
    z = center_generator(c3)
    f0 = c3.element({c3.walk(0, 1): 1})
    assert z * f0 == f0 * z == c3.c(0) * f0 == f0 * c3.c(1)
    assert tau_embed(z) == PolyMatrix.identity(3).scale(x)


def test_center_generator_is_central():
    rng = random.Random(3)
    for n in range(1, 6):
        cyc = CycleAlgebra(n)
        z = center_generator(cyc)
        for _ in range(40):
            a = random_element(rng, cyc.graph, QQ, 4, 2 * n)
            assert z * a == a * z


def test_centralizer_extend_examples():
    g = Graph(["a", "b", "c"], [("x", "a", "b"), ("y", "c", "b")])
    ext = centralizer_extend(g, "a", Element.vertex(g, "a", 3))
    assert ext.consistent
    assert ext.values == {v: Element.vertex(g, v, 3) for v in g.vertices}

    c3 = CycleAlgebra(3)
    ext = centralizer_extend(c3.graph, "v0", c3.c(0))
    assert ext.consistent
    assert ext.values == {f"v{i}": c3.c(i) for i in range(3)}

    r = Graph(["a", "b"], [("x", "a", "b"), ("y", "b", "a"), ("z", "a", "a")])
    bad = centralizer_extend(r, "a", parse_element(r, "x.y"))
    assert not bad.consistent and bad.failing_edge is not None

    with pytest.raises(PreconditionError):
        centralizer_extend(Graph(["a", "b"]), "a", Element.vertex(Graph(["a", "b"]), "a"))


def test_centralizer_laws_on_cycle_extension():
    c4 = CycleAlgebra(4)
    vals = centralizer_extend(c4.graph, "v2", c4.c(2, 2)).values
    rng = random.Random(4)
    for _ in range(50):
        a = random_element(rng, c4.graph, QQ, 3, 6)
        b = random_element(rng, c4.graph, QQ, 3, 6)

        def T(e):
            out = c4.zero()
            for p, c in e.terms.items():
                out = out + vals[p.start] * Element.of(c4.graph, p, c)
            return out
        assert T(a * b) == T(a) * b == a * T(b)


def test_omega_examples():
    pair = AdmissiblePair(x * x + x, x)
    assert omega(pair) == RatFunc(x + 1)
    assert omega(AdmissiblePair(Poly.one(), x)) == parse_ratfunc("1/x")
    prod = AdmissiblePair(Poly.one(), x) * AdmissiblePair(x, Poly.one())
    assert prod == AdmissiblePair(Poly.one(), Poly.one())
    assert omega(prod) == RatFunc.one()


def test_omega_is_ring_isomorphism():
    rng = random.Random(5)
    for _ in range(300):
        a, b = random_pair(rng), random_pair(rng)
        assert omega(a + b) == omega(a) + omega(b)
        assert omega(a * b) == omega(a) * omega(b)
        assert omega_inverse(omega(a)) == a
        r = omega(b)
        assert omega(omega_inverse(r)) == r


def test_admissible_apply_examples():
    c3 = CycleAlgebra(3)
    rng = random.Random(6)
    a = random_element(rng, c3.graph, QQ, 4, 6)
    assert admissible_apply(AdmissiblePair(Poly.one(), Poly.one()), a) == a
    assert admissible_apply(AdmissiblePair(x, x), c3.c(0)) == c3.c(0)
    assert admissible_apply(AdmissiblePair(Poly.one(), x), c3.c(0)) == c3.vertex(0)
    with pytest.raises(PreconditionError, match="not in J"):
        admissible_apply(AdmissiblePair(Poly.one(), x), c3.vertex(0))


def test_admissible_apply_is_bimodule_map():
    rng = random.Random(7)
    for n in (1, 2, 3):
        cyc = CycleAlgebra(n)
        for _ in range(40):
            pair = random_pair(rng)
            a = poly_of_z(cyc, pair.q) * random_element(rng, cyc.graph, QQ, 3, 2 * n)
            u = random_element(rng, cyc.graph, QQ, 3, 2 * n)
            w = random_element(rng, cyc.graph, QQ, 3, 2 * n)
            fa = admissible_apply(pair, a)
            assert admissible_apply(pair, u * a * w) == u * fa * w
            assert fa * poly_of_z(cyc, pair.q) == a * poly_of_z(cyc, pair.p)


def test_theta_examples():
    c2 = CycleAlgebra(2)
    q = x + 1
    one = Poly.one()
    expected = RatMatrix.elementary(2, 0, 0, RatFunc(one, q))
    assert theta(c2.vertex(0), AdmissiblePair(one, q)) == expected
    a = c2.mu(1, 0)
    assert theta(a, AdmissiblePair(one, one)) == tau_embed(a).to_rat()


def test_theta_kernel_and_multiplicativity():
    rng = random.Random(8)
    for n in range(1, 4):
        cyc = CycleAlgebra(n)
        for _ in range(60):
            a = random_element(rng, cyc.graph, QQ, 3, 2 * n)
            b = random_element(rng, cyc.graph, QQ, 3, 2 * n)
            lam, mu = random_pair(rng), random_pair(rng)
            s, t = [(a, lam)], [(b, mu)]
            assert theta_sum(tensor_mul(s, t), cyc) == mat_mul(theta_sum(s, cyc), theta_sum(t, cyc))
            if not a.is_zero() and theta(a, lam).is_zero():
                assert lam.is_zero()


def test_closure_preimage_examples():
    c2 = CycleAlgebra(2)
    a, pair = closure_preimage(RatMatrix.elementary(2, 0, 0))
    assert a == c2.vertex(0) and pair == AdmissiblePair(Poly.one(), Poly.one())

    inv_x = parse_ratfunc("1/x")
    M = RatMatrix([[inv_x, inv_x], [inv_x, inv_x]])
    a, pair = closure_preimage(M)
    assert pair.q == x * x
    assert tau_embed(a) == PolyMatrix([[x, x], [x, x]])
    assert theta(a, pair) == M

    c3 = CycleAlgebra(3)
    M = RatMatrix.identity(3).scale(parse_ratfunc("1/(x+1)"))
    a, pair = closure_preimage(M)
    assert a == c3.one() and pair.q == x + 1


@pytest.mark.parametrize("field", [QQ, GF(7)])
def test_closure_round_trip(field):
    rng = random.Random(9)
    for n in range(1, 5):
        for _ in range(25):
            M = random_ratmatrix(rng, n, field)
            a, pair = closure_preimage(M)
            assert theta(a, pair) == M
