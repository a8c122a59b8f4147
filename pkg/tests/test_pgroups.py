from math import comb

import numpy as np
import pytest

from liepowers.ff import Subspace, det
from liepowers.pgroups import (EStar, Gamma2, Gamma3, PGroupError, build_optimal_g2, gl_action, group_law_checks,
                               is_automorphism_sample, lower_central_dims, make_group, power_span,
                               stabilizes_quotient, structure_checks, structure_report, ucs_evidence)

E = np.eye(3, dtype=np.int64)


def same(G, x, y):
    return G.equal(x, y)


def test_gamma2_product_of_basis_vectors():
    G = Gamma2(3, 5)
    x = G.multiply(G.from_head(E[0]), G.from_head(E[1]))
    assert np.array_equal(x[0], [1, 1, 0])
    assert np.array_equal(x[1], G.bracket(E[0], E[1])) and np.array_equal(x[1], [1, 0, 0])


@pytest.mark.parametrize("kind", ["gamma2", "gamma3", "estar"])
def test_inverse_and_identity(kind):
    G = make_group(kind, 3, 5)
    rng = np.random.default_rng(0)
    for _ in range(100):
        x = G.random_element(rng)
        assert G.is_identity(G.multiply(x, G.inverse(x)))
        assert G.is_identity(G.multiply(G.inverse(x), x))
        assert same(G, G.multiply(x, G.identity()), x)


@pytest.mark.parametrize("p", [5, 7])
def test_gamma3_associativity_on_1000_triples(p):
    G = Gamma3(3, p)
    rng = np.random.default_rng(p)
    for _ in range(1000):
        x, y, z = (G.random_element(rng) for _ in range(3))
        assert same(G, G.multiply(G.multiply(x, y), z), G.multiply(x, G.multiply(y, z)))


@pytest.mark.parametrize("kind", ["gamma2", "estar"])
def test_class2_associativity(kind):
    G = make_group(kind, 3, 7)
    rng = np.random.default_rng(1)
    for _ in range(300):
        x, y, z = (G.random_element(rng) for _ in range(3))
        assert same(G, G.multiply(G.multiply(x, y), z), G.multiply(x, G.multiply(y, z)))


def test_commutator2_closed_form_on_basis_and_random():
    G = Gamma2(3, 5)
    heads = [G.from_head(e) for e in E]
    for x in heads:
        for y in heads:
            assert same(G, G.commutator(x, y), G.commutator_closed(x, y))
    rng = np.random.default_rng(2)
    for _ in range(100):
        x, y = G.random_element(rng), G.random_element(rng)
        assert same(G, G.commutator(x, y), G.commutator_closed(x, y))
    assert np.array_equal(G.commutator(heads[0], heads[1])[1], 2 * G.bracket(E[0], E[1]) % 5)


def test_commutator_with_central_tail_is_trivial():
    G = Gamma2(3, 5)
    x = G.from_head(E[0])
    y = (E[0].copy(), np.array([1, 2, 3]))
    assert G.is_identity(G.commutator(x, y))


@pytest.mark.parametrize("p", [5, 7])
def test_commutator3_closed_form(p):
    G = Gamma3(3, p)
    heads = [G.from_head(e) for e in E]
    for x in heads:
        for y in heads:
            for z in heads:
                assert same(G, G.commutator(G.commutator(x, y), z), G.commutator3_closed(x, y, z))
    rng = np.random.default_rng(3)
    for _ in range(50):
        x, y, z = (G.random_element(rng) for _ in range(3))
        assert same(G, G.commutator(G.commutator(x, y), z), G.commutator3_closed(x, y, z))


def test_gamma2_power_closed_form():
    G = Gamma2(4, 5)
    rng = np.random.default_rng(4)
    for _ in range(100):
        x = G.random_element(rng)
        for k in (2, 3, 5, 7):
            assert same(G, G.power(x, k), G.power_closed(x, k))
        assert G.is_identity(G.power(x, 5))


def test_gamma3_exponent_p():
    G = Gamma3(3, 5)
    for t in range(G.tail_dim):
        assert G.is_identity(G.power(G.from_tail(np.eye(G.tail_dim, dtype=np.int64)[t]), 5))
    for e in E:
        assert G.is_identity(G.power(G.from_head(e), 5))
    rng = np.random.default_rng(5)
    for _ in range(1000):
        assert G.is_identity(G.power(G.random_element(rng), 5))


def test_estar_generators_have_order_p_squared():
    G = EStar(1, 3)
    x = G.from_head([1])
    cube = G.power(x, 3)
    assert np.array_equal(cube[0], [3]) and not G.is_identity(cube)
    assert G.is_identity(G.power(x, 9))


def test_gamma2_full_structure():
    rep = structure_report(Gamma2(7, 5), np.random.default_rng(0), samples=20)
    assert (rep.order_exponent, rep.nilpotency_class, rep.exponent) == (28, 2, 5)
    assert rep.derived_dim == rep.frattini_dim == 21 and rep.rank == 7


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_gamma2_quotient_derived_dimension(k):
    rng = np.random.default_rng(k)
    u = Subspace.span(rng.integers(0, 5, (k, 6)), 5, 6)
    G = Gamma2(4, 5, u)
    rep = structure_report(G, rng, samples=10)
    assert rep.derived_dim == 6 - u.dim
    assert rep.order_exponent == 4 + 6 - u.dim
    assert all(ok for _, ok in structure_checks(G, rep))


def l3_subspace(G, rows):
    full = np.zeros((len(rows), G.tail_dim), dtype=np.int64)
    full[:, G.n2:] = rows
    return Subspace.span(full, G.p, G.tail_dim)


def test_gamma3_structure_and_quotient():
    rep = structure_report(Gamma3(3, 5), np.random.default_rng(0), samples=20)
    assert (rep.order_exponent, rep.nilpotency_class, rep.gamma3_dim) == (14, 3, 8)
    rng = np.random.default_rng(6)
    G = Gamma3(3, 5)
    w = l3_subspace(G, rng.integers(0, 5, (3, 8)))
    Q = Gamma3(3, 5, w)
    rep = structure_report(Q, rng, samples=20)
    assert rep.order_exponent == 11 and rep.nilpotency_class == 3
    assert rep.gamma3_dim == 8 - w.dim and rep.derived_dim == 3 + 8 - w.dim
    whole = Gamma3(3, 5, l3_subspace(G, np.eye(8, dtype=np.int64)))
    assert structure_report(whole, rng, samples=5).nilpotency_class == 2


def test_non_normal_subspace_rejected():
    G = Gamma3(3, 5)
    x = np.zeros((1, G.tail_dim), dtype=np.int64)
    x[0, 0] = 1
    with pytest.raises(PGroupError):
        Gamma3(3, 5, Subspace.span(x, 5, G.tail_dim))


def test_estar_battery():
    for p in (3, 5):
        G = EStar(3, p)
        rep = structure_report(G, np.random.default_rng(0), samples=20)
        assert rep.order_exponent == 2 * 3 + comb(3, 2)
        assert rep.exponent == p * p and rep.exponent_p_class == 2 and rep.rank == 3
        powers, derived = power_span(G), lower_central_dims(G)[0]
        assert G.rel_dim(powers) == 3 and G.rel_dim(derived) == 3
        assert (powers + derived).dim == 6 and rep.frattini_dim == 6
        assert powers == G.power_part() and derived == G.derived_part()


def random_estar_x(G, rng, must_contain=None, avoid=None):
    while True:
        k = int(rng.integers(0, G.tail_dim))
        x = Subspace.span(rng.integers(0, G.p, (k, G.tail_dim)), G.p, G.tail_dim)
        if must_contain is not None:
            x = x + must_contain
        if avoid is None or not x.contains(avoid):
            return x


@pytest.mark.parametrize("p", [3, 5])
def test_estar_exponent_boundary(p):
    base = EStar(3, p)
    rng = np.random.default_rng(p)
    for _ in range(20):
        inside = EStar(3, p, random_estar_x(base, rng, must_contain=base.power_part()))
        assert structure_report(inside, rng, samples=10).exponent == p
        outside = EStar(3, p, random_estar_x(base, rng, avoid=base.power_part()))
        assert structure_report(outside, rng, samples=10).exponent == p * p


@pytest.mark.parametrize("p", [3, 5])
def test_estar_abelian_boundary(p):
    base = EStar(3, p)
    rng = np.random.default_rng(10 + p)
    for _ in range(20):
        inside = EStar(3, p, random_estar_x(base, rng, must_contain=base.derived_part()))
        assert structure_report(inside, rng, samples=5).nilpotency_class == 1
        outside = EStar(3, p, random_estar_x(base, rng, avoid=base.derived_part()))
        assert structure_report(outside, rng, samples=5).nilpotency_class == 2


def test_scalar_automorphism_of_gamma2():
    G = Gamma2(3, 5)
    rng = np.random.default_rng(7)
    for mu in range(1, 5):
        g = mu * np.eye(3, dtype=np.int64)
        x = G.random_element(rng)
        y = gl_action(G, g, x)
        assert np.array_equal(y[0], mu * x[0] % 5) and np.array_equal(y[1], mu * mu * x[1] % 5)
        assert is_automorphism_sample(G, g, rng, 50)


def test_gl_action_requires_stabiliser():
    opt = build_optimal_g2(5, "normalizer")
    rng = np.random.default_rng(8)
    while True:
        g = rng.integers(0, 5, (7, 7))
        if det(g, 5):
            break
    assert not stabilizes_quotient(opt.group, g)
    with pytest.raises(PGroupError):
        gl_action(opt.group, g, opt.group.identity())
    with pytest.raises(PGroupError):
        is_automorphism_sample(opt.group, g)


@pytest.mark.parametrize("kind", ["gamma2", "gamma3", "estar"])
def test_group_law_battery_passes(kind):
    G = make_group(kind, 3, 5)
    checks = group_law_checks(G, np.random.default_rng(0), 50)
    assert checks and all(ok for _, ok in checks)


def test_parameter_errors():
    with pytest.raises(PGroupError):
        make_group("gamma4", 3, 5)
    with pytest.raises(PGroupError):
        Gamma2(3, 2)
    with pytest.raises(PGroupError):
        Gamma3(3, 3)
    with pytest.raises(PGroupError):
        Gamma2(3, 5, Subspace.zero(5, 4))
    with pytest.raises(PGroupError):
        build_optimal_g2(5, "other")


def test_graph_subspace_intersections():
    opt = build_optimal_g2(5, "group-itself")
    G, m = opt.group, opt.submodule
    assert m.dim == 21
    assert (m + G.power_part()).dim == m.dim + 7
    assert 0 < m.intersect(G.derived_part()).dim < 21


@pytest.mark.parametrize("p", [3, 5, 7])
def test_ucs_evidence(p):
    assert all(ucs_evidence(p).values())
