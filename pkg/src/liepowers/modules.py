"""Matrix modules over F_p and a small MeatAxe.

Generators act on row vectors (``v @ g``).  Submodules are Subspaces.
Irreducibility uses Norton's criterion (Holt-Rees form) with seeded random
group-algebra elements; lattices are computed for multiplicity-free
semisimple modules and for uniserial modules only.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
import sympy

from .ff import FieldError, PrimeField, Subspace, charpoly, det, kernel, mat_mul, poly_at_matrix, rank
from .lie import a3_submodule, ext_square_matrix, lie_basis


class ModuleError(ValueError):
    pass


class InconclusiveError(RuntimeError):
    pass


class UnsupportedShape(ModuleError):
    pass


@dataclass
class MatModule:
    p: int
    gens: list
    label: str = ""

    def __post_init__(self):
        PrimeField(self.p)
        self.gens = [np.asarray(g, dtype=np.int64) % self.p for g in self.gens]
        if not self.gens:
            raise ModuleError("a module needs at least one generator")
        n = self.gens[0].shape[0]
        for g in self.gens:
            if g.shape != (n, n):
                raise ModuleError("generators must be square matrices of equal size")
            if n and det(g, self.p) == 0:
                raise ModuleError("generator is singular")

    @property
    def dim(self):
        return self.gens[0].shape[0]

    def transpose(self):
        return MatModule(self.p, [g.T.copy() for g in self.gens], self.label + "^T")

    def dual(self):
        from .ff import inverse
        return MatModule(self.p, [inverse(g, self.p).T.copy() for g in self.gens], self.label + "^*")


# -- generator files ---------------------------------------------------------


def parse_generators(text, label=""):
    tokens = text.split()
    try:
        d, p, ngens = int(tokens[0]), int(tokens[1]), int(tokens[2])
        vals = [int(t) for t in tokens[3:]]
    except (IndexError, ValueError):
        raise ModuleError("malformed generator file header or entries") from None
    if len(vals) != ngens * d * d:
        raise ModuleError(f"expected {ngens * d * d} entries, found {len(vals)}")
    if any(v < 0 or v >= p for v in vals):
        raise ModuleError("entries must be residues in [0, p)")
    arr = np.array(vals, dtype=np.int64).reshape(ngens, d, d)
    try:
        return MatModule(p, list(arr), label)
    except FieldError as exc:
        raise ModuleError(str(exc)) from None


def load_generators(path):
    with open(path) as fh:
        return parse_generators(fh.read(), str(path))


def format_generators(m):
    lines = [f"{m.dim} {m.p} {len(m.gens)}"]
    for g in m.gens:
        lines.extend(" ".join(str(int(x)) for x in row) for row in g)
    return "\n".join(lines) + "\n"


def bundled_g2(p):
    """The shipped G2(p) generators on the 7-dimensional module."""
    from importlib import resources
    path = resources.files("liepowers").joinpath(f"data/g2_{p}.gens")
    if not path.is_file():
        raise ModuleError(f"no bundled G2 generators for p={p}")
    return parse_generators(path.read_text(), f"G2({p})")


# -- constructions -------------------------------------------------------------


def exterior_square(m):
    return MatModule(m.p, [ext_square_matrix(g, m.p) for g in m.gens], f"A2({m.label})")


def tensor_module(m, n):
    if m.p != n.p or len(m.gens) != len(n.gens):
        raise ModuleError("tensor factors need the same field and generator count")
    return MatModule(m.p, [np.kron(a, b) % m.p for a, b in zip(m.gens, n.gens)], f"{m.label}x{n.label}")


def lie3_module(m):
    """(A^2 V (x) V) / A^3 V, which is L^3 V for p > 3."""
    if m.p <= 3:
        raise ModuleError("the third Lie power quotient needs p > 3")
    big = tensor_module(exterior_square(m), m)
    a3 = a3_submodule(m.dim, m.p)
    for g in big.gens:
        assert a3.is_invariant(g), "A^3 V is not invariant"
    out = quotient_module(big, a3)
    out.label = f"L3({m.label})"
    assert out.dim == (m.dim ** 3 - m.dim) // 3
    return out


def lie3_subspace_module(m):
    """L^3 V realised inside V (x) V (x) V."""
    basis = lie_basis(m.dim, m.p)
    return MatModule(m.p, [basis.l3_action(g) for g in m.gens], f"L3sub({m.label})")


def submodule(m, s):
    """Action on an invariant subspace, in the subspace's echelon coordinates."""
    piv = list(s.pivots)
    gens = []
    for g in m.gens:
        img = mat_mul(s.basis, g, m.p)
        if s.reduce(img).any():
            raise ModuleError("subspace is not invariant")
        gens.append(img[:, piv])
    return MatModule(m.p, gens, f"sub{s.dim}({m.label})")


def quotient_module(m, s):
    """Action on V/S; coordinates are the non-pivot columns of S."""
    cols = s.complement_columns()
    gens = []
    for g in m.gens:
        if not s.is_invariant(g):
            raise ModuleError("subspace is not invariant")
        img = s.reduce(g[cols])
        gens.append(img[:, cols])
    return MatModule(m.p, gens, f"quo{len(cols)}({m.label})")


def lift_from_quotient(s, vectors):
    """Representatives in V of vectors given in quotient coordinates."""
    cols = s.complement_columns()
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, len(cols))
    out = np.zeros((vectors.shape[0], s.ambient_dim), dtype=np.int64)
    out[:, cols] = vectors
    return out


def direct_sum(m, n):
    gens = []
    for a, b in zip(m.gens, n.gens):
        g = np.zeros((m.dim + n.dim,) * 2, dtype=np.int64)
        g[:m.dim, :m.dim] = a
        g[m.dim:, m.dim:] = b
        gens.append(g)
    return MatModule(m.p, gens, f"{m.label}+{n.label}")


# -- spinning and irreducibility ---------------------------------------------


def spin(m, seeds):
    """Smallest invariant subspace containing the seed vectors."""
    seeds = np.asarray(seeds, dtype=np.int64).reshape(-1, m.dim) % m.p
    space = Subspace.span(seeds, m.p, m.dim)
    frontier = space.basis
    while frontier.shape[0]:
        images = np.concatenate([mat_mul(frontier, g, m.p) for g in m.gens])
        new = space.reduce(images)
        new = new[new.any(axis=1)]
        if not new.shape[0]:
            break
        grown = space + Subspace.span(new, m.p, m.dim)
        if grown.dim == space.dim:
            break
        frontier = new
        space = grown
    return space


@dataclass
class IrreducibilityResult:
    irreducible: bool
    witness: Subspace = None
    attempts: int = 0


def _random_algebra_element(m, rng):
    """Random F_p-combination of short words in the generators."""
    p, n = m.p, m.dim
    words = [np.eye(n, dtype=np.int64)] + list(m.gens)
    for _ in range(4):
        a = m.gens[rng.integers(len(m.gens))]
        b = words[rng.integers(len(words))]
        words.append(mat_mul(a, b, p))
    coeffs = rng.integers(0, p, size=len(words))
    theta = np.zeros((n, n), dtype=np.int64)
    for c, w in zip(coeffs, words):
        theta = (theta + int(c) * w) % p
    return theta


def _irreducible_factors(coeffs, p):
    """Distinct monic irreducible factors over F_p, by increasing degree."""
    x = sympy.Symbol("x")
    poly = sympy.Poly([int(c) for c in reversed(list(coeffs))], x, modulus=p)
    out = []
    for f, _ in poly.factor_list()[1]:
        c = [int(a) % p for a in reversed(f.all_coeffs())]
        lead = pow(c[-1], -1, p)
        out.append([a * lead % p for a in c])
    return sorted(out, key=lambda c: (len(c), c))


def is_irreducible(m, rng=None, retries=20):
    """Norton's irreducibility test in the Holt-Rees form.

    For a random group-algebra element theta and an irreducible factor f of
    its characteristic polynomial with nullity(f(theta)) = deg f, the module
    is irreducible iff one nonzero vector of ker f(theta) spins to the whole
    space and one nonzero vector of ker f(theta)^T spins to the whole space
    under the transposed generators.  Factors of degree above one make the
    test work for modules that are not absolutely irreducible.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    n, p = m.dim, m.p
    if n <= 1:
        return IrreducibilityResult(n == 1, None, 0)
    mt = m.transpose()
    for attempt in range(1, retries + 1):
        theta = _random_algebra_element(m, rng)
        found = None
        for f in _irreducible_factors(charpoly(theta, p), p):
            ftheta = poly_at_matrix(f, theta, p)
            ker = kernel(ftheta, p)
            if ker.dim == len(f) - 1:
                found = (ftheta, ker)
                break
            # an inconclusive factor can still expose a proper submodule
            for v in ker.basis[:4]:
                s = spin(m, v)
                if s.dim < n:
                    return IrreducibilityResult(False, s, attempt)
        if found is None:
            continue
        ftheta, ker = found
        s = spin(m, ker.basis[0])
        if s.dim < n:
            return IrreducibilityResult(False, s, attempt)
        w = spin(mt, kernel(ftheta.T, p).basis[0])
        if w.dim < n:
            return IrreducibilityResult(False, w.annihilator(), attempt)
        return IrreducibilityResult(True, None, attempt)
    raise InconclusiveError(f"Norton test inconclusive after {retries} attempts")


# -- homomorphisms -----------------------------------------------------------


def hom_space(m, n):
    """Basis of {T : g_m T = T g_n for all generators} as m.dim x n.dim matrices."""
    if m.p != n.p or len(m.gens) != len(n.gens):
        raise ModuleError("modules must share the field and generator count")
    p, a, b = m.p, m.dim, n.dim
    blocks = []
    for gm, gn in zip(m.gens, n.gens):
        lhs = np.kron(gm, np.eye(b, dtype=np.int64)) - np.kron(np.eye(a, dtype=np.int64), gn.T)
        blocks.append(lhs % p)
    system = np.concatenate(blocks)
    sol = kernel(system.T, p)
    return [row.reshape(a, b) for row in sol.basis]


def is_isomorphic(m, n, rng=None, trials=30):
    """Returns an isomorphism matrix or None."""
    if m.dim != n.dim:
        return None
    hom = hom_space(m, n)
    if not hom:
        return None
    if rng is None:
        rng = np.random.default_rng(0)
    p = m.p
    for t in hom:
        if rank(t, p) == m.dim:
            return t
    stack = np.array(hom)
    for _ in range(trials):
        c = rng.integers(0, p, size=len(hom))
        t = np.tensordot(c, stack, axes=1) % p
        if rank(t, p) == m.dim:
            return t
    return None


def image(t, p):
    return Subspace.span(t, p, t.shape[1])


# -- composition factors -------------------------------------------------------


@dataclass
class MatrixFactor:
    dim: int
    cls: int
    module: MatModule = field(repr=False)


def _split(m, rng, retries):
    res = is_irreducible(m, rng, retries)
    if res.irreducible:
        return [m]
    s = res.witness
    return _split(submodule(m, s), rng, retries) + _split(quotient_module(m, s), rng, retries)


def composition_factors_matrix(m, rng=None, retries=20):
    """Composition factors with isomorphism classes, sorted by (dim, class)."""
    if rng is None:
        rng = np.random.default_rng(0)
    pieces = sorted(_split(m, rng, retries), key=lambda x: x.dim)
    reps = []
    out = []
    for piece in pieces:
        for k, r in enumerate(reps):
            if is_isomorphic(r, piece, rng) is not None:
                out.append(MatrixFactor(piece.dim, k, r))
                break
        else:
            reps.append(piece)
            out.append(MatrixFactor(piece.dim, len(reps) - 1, piece))
    return sorted(out, key=lambda f: (f.dim, f.cls))


def class_representatives(factors):
    reps = {}
    for f in factors:
        reps.setdefault(f.cls, f.module)
    return [reps[k] for k in sorted(reps)]


def socle(m, reps):
    """Sum of the images of all homomorphisms from the given irreducibles."""
    total = Subspace.zero(m.p, m.dim)
    for s in reps:
        for t in hom_space(s, m):
            total = total + image(t, m.p)
    return total


@dataclass
class Lattice:
    shape: str
    nodes: list
    edges: list

    @property
    def dims(self):
        return [n.dim for n in self.nodes]


def socle_and_lattice(m, rng=None, retries=20):
    """Submodule lattice for multiplicity-free semisimple or uniserial modules."""
    if rng is None:
        rng = np.random.default_rng(0)
    factors = composition_factors_matrix(m, rng, retries)
    reps = class_representatives(factors)
    soc = socle(m, reps)
    mult_free = len(reps) == len(factors)
    if mult_free and soc.dim == m.dim:
        constituents = []
        for s in reps:
            # the images of all homomorphisms span the isotypic component
            iso = Subspace.zero(m.p, m.dim)
            for t in hom_space(s, m):
                iso = iso + image(t, m.p)
            if iso.dim != s.dim:
                raise UnsupportedShape("constituent appears with multiplicity")
            constituents.append(iso)
        nodes, index = [], {}
        for k in range(len(constituents) + 1):
            for combo in combinations(range(len(constituents)), k):
                space = Subspace.zero(m.p, m.dim)
                for c in combo:
                    space = space + constituents[c]
                index[combo] = len(nodes)
                nodes.append(space)
        edges = []
        for combo, a in index.items():
            for c in range(len(constituents)):
                if c not in combo:
                    bigger = tuple(sorted(combo + (c,)))
                    edges.append((a, index[bigger]))
        order = sorted(range(len(nodes)), key=lambda i: (nodes[i].dim, nodes[i].pivots))
        remap = {old: new for new, old in enumerate(order)}
        return Lattice("multiplicity-free", [nodes[i] for i in order],
                       sorted((remap[a], remap[b]) for a, b in edges))
    chain = _socle_series(m, reps, rng, retries)
    if chain is None:
        raise UnsupportedShape("module is neither multiplicity free semisimple nor uniserial")
    return Lattice("uniserial", chain, [(k, k + 1) for k in range(len(chain) - 1)])


def _socle_series(m, reps, rng, retries):
    chain = [Subspace.zero(m.p, m.dim)]
    current = chain[0]
    while current.dim < m.dim:
        quo = quotient_module(m, current) if current.dim else m
        layer = socle(quo, reps)
        if not is_irreducible(submodule(quo, layer), rng, retries).irreducible:
            return None
        lifted = Subspace.span(lift_from_quotient(current, layer.basis), m.p, m.dim) if current.dim else layer
        current = current + lifted
        chain.append(current)
    return chain


def largest_maximal_submodule(m, lattice):
    """The unique maximal submodule, when the lattice has one."""
    top = len(lattice.nodes) - 1
    below = [a for a, b in lattice.edges if b == top]
    if len(below) == 1:
        return lattice.nodes[below[0]]
    # multiplicity free: a maximal submodule of largest dimension
    return max((lattice.nodes[a] for a in below), key=lambda s: s.dim)


# -- forms and stabilisers -----------------------------------------------------


@dataclass
class FormSpace:
    basis: list
    symmetric: list
    alternating: list

    @property
    def dim(self):
        return len(self.basis)

    def describe(self, p):
        def kind(b):
            return "symmetric" if any(np.array_equal(b, s) for s in self.symmetric) else "alternating"
        return [(kind(b), rank(b, p) == b.shape[0]) for b in self.symmetric + self.alternating]


def invariant_forms(m):
    """Bilinear forms B with g B g^T = B for every generator."""
    p, n = m.p, m.dim
    eye = np.eye(n * n, dtype=np.int64)
    system = np.concatenate([(np.kron(g, g) - eye) % p for g in m.gens])
    sol = kernel(system.T, p)
    forms = [row.reshape(n, n) for row in sol.basis]
    inv2 = pow(2, -1, p)
    sym = Subspace.span([((b + b.T) * inv2 % p).reshape(-1) for b in forms], p, n * n) if forms else None
    alt = Subspace.span([((b - b.T) * inv2 % p).reshape(-1) for b in forms], p, n * n) if forms else None
    symmetric = [r.reshape(n, n) for r in sym.basis] if forms else []
    alternating = [r.reshape(n, n) for r in alt.basis] if forms else []
    return FormSpace(forms, symmetric, alternating)


def induced_matrix(g, action, p):
    if action == "natural":
        return np.asarray(g, dtype=np.int64) % p
    if action == "ext-square":
        return ext_square_matrix(g, p)
    if action == "lie3":
        return lie_basis(np.asarray(g).shape[0], p).l3_action(g)
    raise ModuleError(f"unknown action {action!r}")


def stabilizes(g, s, action="natural"):
    return s.is_invariant(induced_matrix(g, action, s.p))


# -- validation battery for generator data -----------------------------------


def validate_g2_generators(m, rng=None):
    """Checks a 7-dimensional G2(p) generator set; returns a dict of results."""
    if rng is None:
        rng = np.random.default_rng(0)
    forms = invariant_forms(m)
    a2 = exterior_square(m)
    dims = [f.dim for f in composition_factors_matrix(a2, rng)]
    expected = [7, 7, 7] if m.p == 3 else [7, 14]
    checks = {
        "dimension 7": m.dim == 7,
        "determinant 1": all(det(g, m.p) == 1 for g in m.gens),
        "one symmetric non-degenerate form": (forms.dim == 1 and len(forms.symmetric) == 1
                                              and rank(forms.symmetric[0], m.p) == 7),
        "V irreducible": is_irreducible(m, rng).irreducible,
        "A2V factor dimensions": dims == expected,
    }
    return checks
