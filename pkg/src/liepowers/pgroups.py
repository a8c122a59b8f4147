"""Universal p-groups of class 2 and 3, the p-covering group, and their quotients.

Elements are tuples of integer vectors:

* Gamma2: (a, b) with a in V = F_p^d and b in L^2 V coordinates;
  (a, b)(f, g) = (a + f, b + g + [a, f]).
* Gamma3: (a, b, c) with c in L^3 V coordinates (p > 3);
  (a, b, c)(f, g, h) = (a + f, b + g + [a, f], c + h + 3([b, f] - [g, a]) + [a, f, f - a]).
* EStar: (m, b) with m a vector mod p^2;
  (m, b)(m', b') = (m + m', b + b' + [m mod p, m' mod p]).

In every case the Frattini subgroup is elementary abelian and central
enough that subgroups inside it are subspaces of a "tail" vector space:
(b) for Gamma2, (b, c) for Gamma3 and (m div p, b) for EStar.  Quotients
are taken by a subspace X of the tail that is normal in the group.
"""

from dataclasses import dataclass, asdict
from math import comb

import numpy as np

from .ff import Subspace, kernel, mat_mul
from .lie import ext_square_matrix, lie_basis
from .modules import bundled_g2, exterior_square, hom_space, quotient_module, socle_and_lattice


class PGroupError(ValueError):
    pass


class _Group:
    kind = ""

    def __init__(self, d, p, x=None):
        if p % 2 == 0 or p < 3:
            raise PGroupError("p must be an odd prime")
        self.d, self.p = d, p
        self.n2 = comb(d, 2)
        self.lie = lie_basis(d, p) if self.kind == "gamma3" else None
        self._pairs = np.array([pr for pr in _pairs(d)], dtype=np.int64).reshape(-1, 2)
        if x is None:
            x = Subspace.zero(p, self.tail_dim)
        if x.ambient_dim != self.tail_dim:
            raise PGroupError(f"quotient subspace must live in dimension {self.tail_dim}")
        self.x = x
        self._check_normal()

    # subclasses supply: tail_dim, multiply, tail, from_tail, power_closed, random_element, identity

    def _check_normal(self):
        # X must be invariant under commutation with the generators
        for v in self.x.basis:
            h = self.from_tail(v)
            for g in self.generators():
                if not self.x.contains_vector(self.tail(self.commutator(h, g))):
                    raise PGroupError("quotient subspace is not normal")

    def bracket(self, a, f):
        i, j = self._pairs[:, 0], self._pairs[:, 1]
        a = np.asarray(a, dtype=np.int64) % self.p
        f = np.asarray(f, dtype=np.int64) % self.p
        return (a[..., i] * f[..., j] - a[..., j] * f[..., i]) % self.p

    def canon(self, x):
        """Normal form with the tail reduced modulo X."""
        t = self.x.reduce(self.tail(x)) if self.x.dim else self.tail(x)
        return self.replace_tail(x, t)

    def equal(self, x, y):
        return all(np.array_equal(u, v) for u, v in zip(self.canon(x), self.canon(y)))

    def is_identity(self, x):
        return self.equal(x, self.identity())

    def commutator(self, x, y):
        """x^-1 y^-1 x y."""
        return self.multiply(self.multiply(self.inverse(x), self.inverse(y)), self.multiply(x, y))

    def power(self, x, k):
        if k < 0:
            return self.power(self.inverse(x), -k)
        result, base = self.identity(), x
        while k:
            if k & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            k >>= 1
        return result

    def generators(self):
        eye = np.eye(self.d, dtype=np.int64)
        return [self.from_head(e) for e in eye]

    def span_mod_x(self, tails):
        tails = np.asarray(tails, dtype=np.int64).reshape(-1, self.tail_dim)
        return self.x + Subspace.span(tails, self.p, self.tail_dim)

    def rel_dim(self, space):
        return space.dim - self.x.dim


def _pairs(d):
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


class Gamma2(_Group):
    kind = "gamma2"

    @property
    def tail_dim(self):
        return self.n2

    def identity(self):
        return (np.zeros(self.d, dtype=np.int64), np.zeros(self.n2, dtype=np.int64))

    def multiply(self, x, y):
        (a, b), (f, g) = x, y
        p = self.p
        return ((a + f) % p, (b + g + self.bracket(a, f)) % p)

    def inverse(self, x):
        return tuple((-v) % self.p for v in x)

    def tail(self, x):
        return x[1] % self.p

    def replace_tail(self, x, t):
        return (x[0], t)

    def from_tail(self, t):
        return (np.zeros(self.d, dtype=np.int64), np.asarray(t, dtype=np.int64) % self.p)

    def from_head(self, a):
        return (np.asarray(a, dtype=np.int64) % self.p, np.zeros(self.n2, dtype=np.int64))

    def random_element(self, rng):
        return (rng.integers(0, self.p, self.d), rng.integers(0, self.p, self.n2))

    def power_closed(self, x, k):
        # [a, a] = 0, so powers are scalar multiples
        return tuple((k * v) % self.p for v in x)

    def commutator_closed(self, x, y):
        return (np.zeros(self.d, dtype=np.int64), (2 * self.bracket(x[0], y[0])) % self.p)

    def act(self, g):
        e2 = ext_square_matrix(g, self.p)
        return lambda x: (mat_mul(x[0], g, self.p), mat_mul(x[1], e2, self.p))

    def tail_action(self, g):
        return ext_square_matrix(g, self.p)


class Gamma3(_Group):
    kind = "gamma3"

    def __init__(self, d, p, x=None):
        if p <= 3:
            raise PGroupError("Gamma3 needs p > 3")
        self.n3 = (d ** 3 - d) // 3
        super().__init__(d, p, x)

    @property
    def tail_dim(self):
        return self.n2 + self.n3

    def identity(self):
        z = np.zeros
        return (z(self.d, dtype=np.int64), z(self.n2, dtype=np.int64), z(self.n3, dtype=np.int64))

    def multiply(self, x, y):
        (a, b, c), (f, g, h) = x, y
        p, lie = self.p, self.lie
        term = 3 * (lie.bracket_l2_v(b, f) - lie.bracket_l2_v(g, a)) + lie.bracket_vvv(a, f, (f - a) % p)
        return ((a + f) % p, (b + g + self.bracket(a, f)) % p, (c + h + term) % p)

    def inverse(self, x):
        return tuple((-v) % self.p for v in x)

    def tail(self, x):
        return np.concatenate([x[1], x[2]]) % self.p

    def replace_tail(self, x, t):
        return (x[0], t[:self.n2], t[self.n2:])

    def from_tail(self, t):
        t = np.asarray(t, dtype=np.int64) % self.p
        return (np.zeros(self.d, dtype=np.int64), t[:self.n2], t[self.n2:])

    def from_head(self, a):
        return (np.asarray(a, dtype=np.int64) % self.p, np.zeros(self.n2, dtype=np.int64),
                np.zeros(self.n3, dtype=np.int64))

    def random_element(self, rng):
        return (rng.integers(0, self.p, self.d), rng.integers(0, self.p, self.n2),
                rng.integers(0, self.p, self.n3))

    def commutator3_closed(self, x, y, z):
        c = (12 * self.lie.bracket_vvv(x[0], y[0], z[0])) % self.p
        return (np.zeros(self.d, dtype=np.int64), np.zeros(self.n2, dtype=np.int64), c)

    def act(self, g):
        e2 = ext_square_matrix(g, self.p)
        e3 = self.lie.l3_action(g)
        return lambda x: (mat_mul(x[0], g, self.p), mat_mul(x[1], e2, self.p), mat_mul(x[2], e3, self.p))

    def tail_action(self, g):
        out = np.zeros((self.tail_dim,) * 2, dtype=np.int64)
        out[:self.n2, :self.n2] = ext_square_matrix(g, self.p)
        out[self.n2:, self.n2:] = self.lie.l3_action(g)
        return out


class EStar(_Group):
    kind = "estar"

    @property
    def tail_dim(self):
        return self.d + self.n2

    def identity(self):
        return (np.zeros(self.d, dtype=np.int64), np.zeros(self.n2, dtype=np.int64))

    def multiply(self, x, y):
        (m, b), (n, c) = x, y
        p = self.p
        return ((m + n) % (p * p), (b + c + self.bracket(m % p, n % p)) % p)

    def inverse(self, x):
        m, b = x
        # (m, b)(-m, c) = (0, b + c + [m, -m]) and [m, -m] = 0
        return ((-m) % (self.p ** 2), (-b) % self.p)

    def tail(self, x):
        return np.concatenate([x[0] // self.p, x[1]]) % self.p

    def replace_tail(self, x, t):
        return ((x[0] % self.p) + self.p * t[:self.d], t[self.d:])

    def from_tail(self, t):
        t = np.asarray(t, dtype=np.int64) % self.p
        return (self.p * t[:self.d], t[self.d:])

    def from_head(self, a):
        return (np.asarray(a, dtype=np.int64) % self.p, np.zeros(self.n2, dtype=np.int64))

    def random_element(self, rng):
        return (rng.integers(0, self.p ** 2, self.d), rng.integers(0, self.p, self.n2))

    def act(self, g):
        lift = np.asarray(g, dtype=np.int64) % self.p
        e2 = ext_square_matrix(g, self.p)
        q = self.p ** 2
        return lambda x: ((x[0] @ lift) % q, mat_mul(x[1], e2, self.p))

    def tail_action(self, g):
        out = np.zeros((self.tail_dim,) * 2, dtype=np.int64)
        out[:self.d, :self.d] = np.asarray(g, dtype=np.int64) % self.p
        out[self.d:, self.d:] = ext_square_matrix(g, self.p)
        return out

    def power_part(self):
        """Tail subspace of p-th powers: the V summand of the Frattini subgroup."""
        rows = np.zeros((self.d, self.tail_dim), dtype=np.int64)
        rows[:, :self.d] = np.eye(self.d, dtype=np.int64)
        return Subspace.span(rows, self.p, self.tail_dim)

    def derived_part(self):
        rows = np.zeros((self.n2, self.tail_dim), dtype=np.int64)
        rows[:, self.d:] = np.eye(self.n2, dtype=np.int64)
        return Subspace.span(rows, self.p, self.tail_dim)


GROUP_KINDS = {"gamma2": Gamma2, "gamma3": Gamma3, "estar": EStar}


def make_group(kind, d, p, x=None):
    try:
        cls = GROUP_KINDS[kind]
    except KeyError:
        raise PGroupError(f"unknown group kind {kind!r}") from None
    return cls(d, p, x)


# -- structure -----------------------------------------------------------------


@dataclass
class StructureReport:
    kind: str
    d: int
    p: int
    quotient_dim: int
    order_exponent: int
    rank: int
    exponent: int
    nilpotency_class: int
    exponent_p_class: int
    derived_dim: int
    gamma3_dim: int
    frattini_dim: int

    def to_dict(self):
        return asdict(self)


def _commutator_span(G, tails_basis):
    """Tails of [h, g] for h in the span and g a generator."""
    out = []
    for v in tails_basis:
        h = G.from_tail(v)
        for g in G.generators():
            out.append(G.tail(G.commutator(h, g)))
    return G.span_mod_x(out) if out else G.x


def lower_central_dims(G):
    """Relative dimensions of gamma_2, gamma_3, ... (until trivial)."""
    gens = G.generators()
    first = [G.tail(G.commutator(x, y)) for i, x in enumerate(gens) for y in gens[i + 1:]]
    layers = [G.span_mod_x(first) if first else G.x]
    while G.rel_dim(layers[-1]) > 0:
        nxt = _commutator_span(G, layers[-1].basis)
        if G.rel_dim(nxt) == 0:
            break
        layers.append(nxt)
        if len(layers) > 10:
            raise PGroupError("lower central series did not terminate")
    # gamma_k is the sum of layers k and beyond
    terms = []
    acc = G.x
    for layer in reversed(layers):
        acc = acc + layer
        terms.append(acc)
    return list(reversed(terms))


def power_span(G, rng=None, samples=0):
    """Tail span of p-th powers of generators and products of generator pairs."""
    gens = G.generators()
    cands = list(gens) + [G.multiply(x, y) for i, x in enumerate(gens) for y in gens[i + 1:]]
    if rng is not None:
        cands += [G.random_element(rng) for _ in range(samples)]
    tails = []
    for x in cands:
        y = G.power(x, G.p)
        head_zero = not np.any(G.canon(y)[0] % G.p)
        assert head_zero, "p-th power left the Frattini subgroup"
        tails.append(G.tail(y))
    return G.span_mod_x(tails)


def structure_report(G, rng=None, samples=50):
    if rng is None:
        rng = np.random.default_rng(0)
    lcs = lower_central_dims(G)
    derived = lcs[0]
    gamma3 = lcs[1] if len(lcs) > 1 else G.x
    powers = power_span(G, rng, samples)
    frattini = derived + powers
    # lower exponent-p central series; past the first step everything is elementary abelian
    ep_terms = [frattini]
    while G.rel_dim(ep_terms[-1]) > 0:
        ep_terms.append(_commutator_span(G, ep_terms[-1].basis))
        if len(ep_terms) > 10:
            raise PGroupError("exponent-p series did not terminate")
    order = G.d + G.tail_dim - G.x.dim
    frattini_dim = G.rel_dim(frattini)
    class_ = 1 + sum(1 for t in lcs if G.rel_dim(t) > 0) if order else 0
    ep_class = len(ep_terms) if order else 0
    exponent = G.p ** 2 if G.rel_dim(powers) > 0 else G.p
    if exponent == G.p:
        for _ in range(samples):
            assert G.is_identity(G.power(G.random_element(rng), G.p)), "sampled element of order above p"
    return StructureReport(G.kind, G.d, G.p, G.x.dim, order, order - frattini_dim, exponent, class_, ep_class,
                           G.rel_dim(derived), G.rel_dim(gamma3), frattini_dim)


# -- automorphisms -------------------------------------------------------------


def stabilizes_quotient(G, g):
    return G.x.is_invariant(G.tail_action(g))


def gl_action(G, g, x):
    """Image of x under the automorphism induced by g (requires g to stabilise X)."""
    if not stabilizes_quotient(G, g):
        raise PGroupError("matrix does not stabilise the quotient subspace")
    return G.canon(G.act(g)(x))


def is_automorphism_sample(G, g, rng=None, trials=100):
    if rng is None:
        rng = np.random.default_rng(0)
    if not stabilizes_quotient(G, g):
        raise PGroupError("matrix does not stabilise the quotient subspace")
    act = G.act(g)
    for _ in range(trials):
        x, y = G.random_element(rng), G.random_element(rng)
        if not G.equal(act(G.multiply(x, y)), G.multiply(act(x), act(y))):
            return False
    return True


# -- the optimal G2 constructions ------------------------------------------------


@dataclass
class OptimalG2:
    group: _Group
    variant: str
    module_gens: list
    submodule: Subspace
    theta: np.ndarray = None


def g2_fourteen_dim_submodule(p):
    m = bundled_g2(p)
    a2 = exterior_square(m)
    lat = socle_and_lattice(a2)
    fourteen = [s for s in lat.nodes if s.dim == 14]
    if len(fourteen) != 1:
        raise PGroupError("expected a unique 14-dimensional submodule of the exterior square")
    return m, a2, fourteen[0]


def build_optimal_g2(p, variant):
    """Quotient p-groups of order p^14 whose automorphisms induce G2(p) or its normaliser."""
    m, a2, x14 = g2_fourteen_dim_submodule(p)
    if variant == "normalizer":
        return OptimalG2(Gamma2(7, p, x14), variant, m.gens, x14)
    if variant == "group-itself":
        homs = [t for t in hom_space(a2, m) if Subspace.span(t, p, 7).dim == 7]
        if not homs:
            raise PGroupError("no epimorphism from the exterior square onto V")
        theta = homs[0]
        ker = kernel(theta, p)
        assert ker == x14, "epimorphism kernel is not the 14-dimensional submodule"
        graph = Subspace.span(np.concatenate([theta, np.eye(21, dtype=np.int64)], axis=1), p, 28)
        return OptimalG2(EStar(7, p, graph), variant, m.gens, graph, theta)
    raise PGroupError(f"unknown variant {variant!r}")


def ucs_evidence(p):
    """V and L^2 V / X are both irreducible for the normaliser variant."""
    from .modules import is_irreducible
    m, a2, x14 = g2_fourteen_dim_submodule(p)
    top = quotient_module(a2, x14)
    return {"V irreducible": is_irreducible(m).irreducible,
            "L2V/X irreducible": is_irreducible(top).irreducible}


# -- verification batteries ------------------------------------------------------


def _basis_heads(G):
    return [G.from_head(e) for e in np.eye(G.d, dtype=np.int64)]


def group_law_checks(G, rng, samples=200):
    """Associativity, inverses and the commutator closed forms."""
    assoc = inv = True
    for _ in range(samples):
        x, y, z = (G.random_element(rng) for _ in range(3))
        assoc &= G.equal(G.multiply(G.multiply(x, y), z), G.multiply(x, G.multiply(y, z)))
        inv &= G.is_identity(G.multiply(x, G.inverse(x)))
    checks = [(f"associativity on {samples} random triples", assoc),
              (f"inverse on {samples} random elements", inv)]
    heads = _basis_heads(G)
    if isinstance(G, Gamma2):
        ok = all(G.equal(G.commutator(x, y), G.commutator_closed(x, y)) for x in heads for y in heads)
        checks.append(("commutator of basis pairs is (0, 2[a,f])", ok))
    if isinstance(G, Gamma3):
        ok = all(G.equal(G.commutator(G.commutator(x, y), z), G.commutator3_closed(x, y, z))
                 for x in heads for y in heads for z in heads)
        checks.append(("double commutator of basis triples is (0, 0, 12[a1,a2,a3])", ok))
    return checks


def structure_checks(G, rep):
    """Dimension identities and exponent laws expected of each ambient family."""
    p, d, xdim = G.p, G.d, G.x.dim
    checks = [("order counts normal forms", rep.order_exponent == d + G.tail_dim - xdim)]
    if isinstance(G, Gamma2):
        checks += [("derived subgroup has dimension C(d,2) - dim X", rep.derived_dim == G.n2 - xdim),
                   ("exponent p", rep.exponent == p)]
    elif isinstance(G, Gamma3):
        c_part = Subspace.span(np.eye(G.tail_dim, dtype=np.int64)[G.n2:], p, G.tail_dim)
        if c_part.contains(G.x):
            checks += [("gamma3 has dimension (d^3-d)/3 - dim X", rep.gamma3_dim == G.n3 - xdim),
                       ("derived subgroup adds C(d,2)", rep.derived_dim == G.n2 + G.n3 - xdim)]
        checks.append(("exponent p", rep.exponent == p))
    elif isinstance(G, EStar):
        powers, derived = G.power_part(), G.derived_part()
        checks += [("exponent p iff X contains the power part", (rep.exponent == p) == G.x.contains(powers)),
                   ("abelian iff X contains the derived part", (rep.nilpotency_class <= 1) == G.x.contains(derived))]
        if xdim == 0:
            checks += [("power part has dimension d", G.rel_dim(power_span(G)) == d),
                       ("Frattini subgroup is power part plus derived part", rep.frattini_dim == d + G.n2),
                       ("generators have order p^2",
                        all(not G.is_identity(G.power(x, p)) and G.is_identity(G.power(x, p * p))
                            for x in _basis_heads(G)))]
    return checks


def optimal_g2_checks(opt, rep, rng, samples=100):
    """The properties expected of the two optimal G2 quotients."""
    G, p = opt.group, opt.group.p
    expected_exp = p if opt.variant == "normalizer" else p * p
    checks = [("order p^14", rep.order_exponent == 14),
              ("rank 7", rep.rank == 7),
              ("nilpotency class 2", rep.nilpotency_class == 2),
              (f"exponent {expected_exp}", rep.exponent == expected_exp),
              ("G2 generators stabilise the quotient subspace",
               all(stabilizes_quotient(G, g) for g in opt.module_gens)),
              ("G2 generators induce automorphisms on samples",
               all(is_automorphism_sample(G, g, rng, samples) for g in opt.module_gens))]
    scalars = [mu for mu in range(2, p) if stabilizes_quotient(G, mu * np.eye(7, dtype=np.int64))]
    if opt.variant == "normalizer":
        checks.append(("exponent-p class 2", rep.exponent_p_class == 2))
        checks.append(("every scalar stabilises the quotient subspace", len(scalars) == p - 2))
        checks += [(f"UCS evidence: {k}", v) for k, v in sorted(ucs_evidence(p).items())]
    else:
        checks.append(("no scalar other than 1 stabilises the graph subspace", not scalars))
    return checks
