"""Root systems, Weyl orbits, dominance and weight multiplicities.

Weights are tuples of integers in the fundamental-weight basis.  The
Cartan matrix follows ``A[i][j] = <alpha_i, alpha_j^vee>``, so row ``i``
of ``A`` is the simple root ``alpha_i`` written in fundamental weights.
Node labels follow Bourbaki, which is also the Malle-Testerman and Magma
labelling.
"""

from collections import deque
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np
import sympy

ROOT_COUNTS = {"E": {6: 36, 7: 63, 8: 120}, "F": {4: 24}, "G": {2: 6}}


class RootSystemError(ValueError):
    pass


def _gram(type_label, rank):
    """Gram matrix of the simple roots, short roots of squared length 2."""
    n = rank
    s = np.zeros((n, n), dtype=np.int64)
    if type_label == "A":
        if n < 1:
            raise RootSystemError("A_n needs n >= 1")
        for i in range(n):
            s[i, i] = 2
        for i in range(n - 1):
            s[i, i + 1] = s[i + 1, i] = -1
    elif type_label == "B":
        if n < 2:
            raise RootSystemError("B_n needs n >= 2")
        for i in range(n - 1):
            s[i, i] = 4
        s[n - 1, n - 1] = 2
        for i in range(n - 1):
            s[i, i + 1] = s[i + 1, i] = -2
    elif type_label == "C":
        if n < 2:
            raise RootSystemError("C_n needs n >= 2")
        for i in range(n - 1):
            s[i, i] = 2
        s[n - 1, n - 1] = 4
        for i in range(n - 2):
            s[i, i + 1] = s[i + 1, i] = -1
        s[n - 2, n - 1] = s[n - 1, n - 2] = -2
    elif type_label == "D":
        if n < 4:
            raise RootSystemError("D_n needs n >= 4")
        for i in range(n):
            s[i, i] = 2
        for i in range(n - 2):
            s[i, i + 1] = s[i + 1, i] = -1
        s[n - 3, n - 1] = s[n - 1, n - 3] = -1
    elif type_label == "E":
        if n not in (6, 7, 8):
            raise RootSystemError("E_n needs n in {6, 7, 8}")
        for i in range(n):
            s[i, i] = 2
        # Bourbaki: chain 1-3-4-5-...-n with node 2 attached to node 4
        edges = [(1, 3), (2, 4), (3, 4)] + [(k, k + 1) for k in range(4, n)]
        for a, b in edges:
            s[a - 1, b - 1] = s[b - 1, a - 1] = -1
    elif type_label == "F":
        if n != 4:
            raise RootSystemError("F_n needs n = 4")
        s[:] = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    elif type_label == "G":
        if n != 2:
            raise RootSystemError("G_n needs n = 2")
        s[:] = [[2, -3], [-3, 6]]
    else:
        raise RootSystemError(f"unknown type {type_label!r}")
    return s


class RootSystem:
    """Finite crystallographic root system of type A-G."""

    def __init__(self, type_label, rank):
        self.type_label = type_label
        self.rank = rank
        gram = _gram(type_label, rank)
        self.gram = gram
        # half squared lengths of the simple roots
        self.d = tuple(int(x) // 2 for x in np.diag(gram))
        self.cartan = np.array([[2 * gram[i, j] // gram[j, j] for j in range(rank)]
                                for i in range(rank)], dtype=np.int64)
        inv = sympy.Matrix(self.cartan.tolist()).inv()
        den = lcm(*[int(sympy.fraction(x)[1]) for x in inv])
        self.cartan_inv_num = np.array((inv * den).tolist(), dtype=np.int64)
        self.cartan_inv_den = den
        self.positive_roots = self._closure()
        self.rho = tuple([1] * rank)
        # (lambda_i, lambda_j) = (A^-1)_ij d_j, scaled to integers by form_den
        form = [[Fraction(int(self.cartan_inv_num[i, j]) * self.d[j], den) for j in range(rank)]
                for i in range(rank)]
        fden = lcm(*[f.denominator for row in form for f in row])
        self.form_num = np.array([[int(f * fden) for f in row] for row in form], dtype=object)
        self.form_den = fden
        self._root_dots = [tuple(r[k] * self.d[k] for k in range(rank)) for r in self.positive_roots]
        self._roots_fw = [tuple(int(x) for x in np.array(r) @ self.cartan) for r in self.positive_roots]

    def __repr__(self):
        return f"RootSystem({self.type_label}{self.rank})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and (self.type_label, self.rank) == (other.type_label, other.rank)

    def __hash__(self):
        return hash((self.type_label, self.rank))

    @property
    def name(self):
        return f"{self.type_label}{self.rank}"

    def _closure(self):
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        roots = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                pairing = [sum(beta[k] * int(self.cartan[k, i]) for k in range(n)) for i in range(n)]
                for i in range(n):
                    # p = how far the alpha_i string extends downwards from beta
                    p = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        if tuple(down) in roots:
                            p += 1
                        else:
                            break
                    q = p - pairing[i]
                    if q > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in roots:
                            roots.add(up)
                            nxt.append(up)
            layer = nxt
        return sorted(roots, key=lambda r: (sum(r), r))

    def check(self):
        """Assert the structural invariants; returns self."""
        n = self.rank
        assert all(self.cartan[i, i] == 2 for i in range(n))
        assert all(self.cartan[i, j] in (0, -1, -2, -3) for i in range(n) for j in range(n) if i != j)
        assert len(self.positive_roots) == expected_root_count(self.type_label, n)
        f = sympy.Matrix(self.form_num.tolist())
        assert f == f.T and all(m > 0 for m in [f[:k, :k].det() for k in range(1, n + 1)])
        return self

    # -- weights -------------------------------------------------------

    def root_to_weight(self, r):
        return tuple(int(x) for x in np.array(r, dtype=np.int64) @ self.cartan)

    def weight_to_root(self, w):
        """Simple-root coordinates of ``w`` as Fractions."""
        num = np.array(w, dtype=object) @ self.cartan_inv_num.astype(object)
        return tuple(Fraction(int(x), self.cartan_inv_den) for x in num)

    def inner(self, u, v):
        """Exact inner product of two weights."""
        tot = 0
        for i in range(self.rank):
            if u[i]:
                for j in range(self.rank):
                    if v[j]:
                        tot += u[i] * v[j] * self.form_num[i, j]
        return Fraction(tot, self.form_den)

    def _inner_scaled(self, u, v):
        tot = 0
        for i in range(self.rank):
            if u[i]:
                row = self.form_num[i]
                for j in range(self.rank):
                    if v[j]:
                        tot += u[i] * v[j] * row[j]
        return tot

    def simple_reflection(self, i, w):
        """s_i(w) for 1 <= i <= rank."""
        if not 1 <= i <= self.rank:
            raise RootSystemError(f"reflection index {i} out of range")
        c = w[i - 1]
        if c == 0:
            return tuple(w)
        row = self.cartan[i - 1]
        return tuple(int(w[j] - c * row[j]) for j in range(self.rank))

    def dominant_representative(self, w):
        w = list(w)
        cart = self.cartan
        while True:
            for i, c in enumerate(w):
                if c < 0:
                    row = cart[i]
                    for j in range(self.rank):
                        w[j] -= c * row[j]
                    break
            else:
                return tuple(int(x) for x in w)

    def weyl_orbit(self, w):
        """Set of Weyl conjugates of ``w`` (BFS over simple reflections)."""
        start = tuple(int(x) for x in w)
        seen = {start}
        queue = deque([start])
        cart = [tuple(int(x) for x in row) for row in self.cartan]
        n = self.rank
        dominant = []
        while queue:
            v = queue.popleft()
            if min(v) >= 0:
                dominant.append(v)
            for i in range(n):
                c = v[i]
                if c:
                    row = cart[i]
                    u = tuple(v[j] - c * row[j] for j in range(n))
                    if u not in seen:
                        seen.add(u)
                        queue.append(u)
        assert len(dominant) == 1, "orbit must contain exactly one dominant weight"
        return frozenset(seen)

    def orbit_size(self, w):
        return len(self.weyl_orbit(w))

    def dominance_leq(self, mu, lam):
        """True iff lam - mu is a nonnegative rational combination of simple roots."""
        diff = np.array([int(a) - int(b) for a, b in zip(lam, mu)], dtype=np.int64)
        return bool(np.all(diff @ self.cartan_inv_num >= 0))

    def height(self, w):
        """Sum of simple-root coordinates of ``w`` (a Fraction)."""
        return sum(self.weight_to_root(w), Fraction(0))

    def is_dominant(self, w):
        return all(c >= 0 for c in w)

    def weyl_dim(self, lam):
        """Weyl dimension formula, exact."""
        if not self.is_dominant(lam):
            raise RootSystemError(f"weight {lam} is not dominant")
        num = den = 1
        for dots in self._root_dots:
            a = sum((lam[k] + 1) * dots[k] for k in range(self.rank))
            b = sum(dots)
            num *= a
            den *= b
        assert num % den == 0
        return num // den

    def dominant_weights_below(self, lam):
        """All dominant weights mu <= lam."""
        lam = tuple(lam)
        found = {lam}
        stack = [lam]
        roots = self._roots_fw
        while stack:
            mu = stack.pop()
            for r in roots:
                nu = tuple(a - b for a, b in zip(mu, r))
                if min(nu) >= 0 and nu not in found:
                    found.add(nu)
                    stack.append(nu)
        return found

    def freudenthal(self, lam):
        """Dominant-weight multiplicities of the Weyl module V(lam)."""
        return dict(_freudenthal(self.type_label, self.rank, tuple(int(c) for c in lam))[0])

    def weyl_module_weights(self, lam):
        """Multiplicity of every weight of V(lam) (full orbit expansion)."""
        return _freudenthal(self.type_label, self.rank, tuple(int(c) for c in lam))[1]


def expected_root_count(type_label, n):
    if type_label == "A":
        return n * (n + 1) // 2
    if type_label in "BC":
        return n * n
    if type_label == "D":
        return n * (n - 1)
    return ROOT_COUNTS[type_label][n]


@lru_cache(maxsize=None)
def build_root_system(type_label, rank):
    return RootSystem(type_label, int(rank))


_FREUDENTHAL_CACHE_DIR = None


def set_cache_dir(path):
    """Enable the on-disk cache for Freudenthal results and orbits (None disables)."""
    global _FREUDENTHAL_CACHE_DIR
    _FREUDENTHAL_CACHE_DIR = None if path is None else str(path)
    _freudenthal.cache_clear()


@lru_cache(maxsize=None)
def _freudenthal(type_label, rank, lam):
    rs = build_root_system(type_label, rank)
    if not rs.is_dominant(lam):
        raise RootSystemError(f"weight {lam} is not dominant")
    if _FREUDENTHAL_CACHE_DIR is not None:
        from .cache import load_or_compute
        dom = load_or_compute(_FREUDENTHAL_CACHE_DIR, "freudenthal", rs.name, lam,
                              lambda: _freudenthal_dominant(rs, lam),
                              encode=lambda d: sorted([list(k), v] for k, v in d.items()),
                              decode=lambda rows: {tuple(k): v for k, v in rows})
    else:
        dom = _freudenthal_dominant(rs, lam)
    full = {}
    for mu, m in dom.items():
        for w in _orbit(rs, mu):
            full[w] = m
    return dom, full


def _orbit(rs, mu):
    if _FREUDENTHAL_CACHE_DIR is not None:
        from .cache import load_or_compute
        return load_or_compute(_FREUDENTHAL_CACHE_DIR, "orbit", rs.name, mu,
                               lambda: sorted(rs.weyl_orbit(mu)),
                               encode=lambda ws: [list(w) for w in ws],
                               decode=lambda rows: [tuple(w) for w in rows])
    return rs.weyl_orbit(mu)


def _freudenthal_dominant(rs, lam):
    n = rs.rank
    doms = rs.dominant_weights_below(lam)
    inv = rs.cartan_inv_num

    def depth(mu):
        return int(np.sum(np.array([a - b for a, b in zip(lam, mu)], dtype=np.int64) @ inv))

    order = sorted(doms, key=lambda mu: (depth(mu), mu))
    lr = tuple(c + 1 for c in lam)
    top = rs._inner_scaled(lr, lr)
    roots = list(zip(rs._roots_fw, rs._root_dots))
    mult = {}
    full = {}
    for mu in order:
        if mu == lam:
            m = 1
        else:
            acc = 0
            for rfw, dots in roots:
                nu = tuple(mu[j] + rfw[j] for j in range(n))
                while True:
                    m_nu = full.get(nu, 0)
                    if not m_nu:
                        break
                    acc += m_nu * sum(nu[k] * dots[k] for k in range(n))
                    nu = tuple(nu[j] + rfw[j] for j in range(n))
            mr = tuple(c + 1 for c in mu)
            gap = top - rs._inner_scaled(mr, mr)
            num = 2 * acc * rs.form_den
            assert gap > 0 and num % gap == 0, "Freudenthal recursion produced a non-integer"
            m = num // gap
        mult[mu] = m
        if m:
            for w in rs.weyl_orbit(mu):
                full[w] = m
    return {mu: m for mu, m in mult.items() if m}
