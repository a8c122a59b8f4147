"""Dense linear algebra over prime fields F_p.

Matrices are numpy int64 arrays with entries reduced into [0, p).  Vectors
act on the right of row vectors (``v @ m``), which is the convention used
throughout the package.  Subspaces are stored by their reduced row echelon
basis, so two spans of the same vectors compare equal.
"""

from dataclasses import dataclass

import numpy as np
from sympy import isprime


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p < 3 or not isprime(self.p):
            raise FieldError(f"p must be an odd prime, got {self.p}")
        if self.p >= 1 << 16:
            # keeps every dot product of length < 2**30 inside int64
            raise FieldError("p must be below 65536")

    def inv(self, a):
        return pow(int(a) % self.p, -1, self.p)

    def array(self, x):
        return np.asarray(x, dtype=np.int64) % self.p

    def zeros(self, *shape):
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n):
        return np.eye(n, dtype=np.int64)

    def random_matrix(self, rng, rows, cols):
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)

    def random_invertible(self, rng, n):
        while True:
            m = self.random_matrix(rng, n, n)
            if rank(m, self.p) == n:
                return m


def mat_mul(a, b, p):
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def rref(m, p):
    """Reduced row echelon form of ``m`` over F_p.

    Returns ``(r, pivots, rank)`` where ``r`` has the same shape as ``m``
    (zero rows at the bottom) and ``pivots`` lists the pivot column of
    each nonzero row.
    """
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank(m, p):
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return rref(m, p)[2]


def det(m, p):
    """Determinant over F_p by elimination."""
    a = np.array(m, dtype=np.int64) % p
    n = a.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        k = c + nz[0]
        if k != c:
            a[[c, k]] = a[[k, c]]
            d = -d
        piv = int(a[c, c])
        d = (d * piv) % p
        inv = pow(piv, -1, p)
        below = a[c + 1:, c]
        if below.any():
            a[c + 1:] = (a[c + 1:] - np.outer(below * inv % p, a[c])) % p
    return d % p


def inverse(m, p):
    n = m.shape[0]
    aug = np.concatenate([np.asarray(m, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    r, piv, rk = rref(aug, p)
    if rk < n or piv[n - 1] != n - 1:
        raise FieldError("matrix is singular")
    return r[:, n:]


def charpoly(m, p):
    """Characteristic polynomial of a square matrix, coefficients lowest degree first."""
    h = np.asarray(m, dtype=np.int64) % p
    n = h.shape[0]
    h = h.copy()
    # similarity transform to upper Hessenberg form
    for j in range(n - 2):
        nz = np.nonzero(h[j + 1:, j])[0]
        if not nz.size:
            continue
        i = j + 1 + nz[0]
        if i != j + 1:
            h[[i, j + 1]] = h[[j + 1, i]]
            h[:, [i, j + 1]] = h[:, [j + 1, i]]
        inv = pow(int(h[j + 1, j]), -1, p)
        for r in range(j + 2, n):
            if h[r, j]:
                c = int(h[r, j]) * inv % p
                h[r] = (h[r] - c * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + c * h[:, r]) % p
    # p_k = (x - h_kk) p_{k-1} - sum_i h_ik (h_{i+1,i} ... h_{k,k-1}) p_{i-1}
    polys = [np.array([1], dtype=np.int64)]
    for k in range(n):
        nxt = np.zeros(k + 2, dtype=np.int64)
        nxt[1:] = polys[k]
        nxt[:k + 1] -= h[k, k] * polys[k]
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = prod * int(h[i + 1, i]) % p
            if not prod:
                break
            nxt[:i + 1] -= (int(h[i, k]) * prod % p) * polys[i]
        polys.append(nxt % p)
    return polys[n]


def poly_at_matrix(coeffs, m, p):
    """Evaluate a polynomial (lowest degree first) at a square matrix by Horner's rule."""
    m = np.asarray(m, dtype=np.int64) % p
    n = m.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(list(coeffs)):
        out = (mat_mul(out, m, p) + int(c) * eye) % p
    return out


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of F_p^n held as a canonical RREF basis (no zero rows)."""

    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple

    @classmethod
    def span(cls, vectors, p, ambient_dim=None):
        v = np.asarray(vectors, dtype=np.int64)
        if v.ndim == 1:
            v = v.reshape(1, -1) if v.size else v.reshape(0, ambient_dim or 0)
        if ambient_dim is None:
            ambient_dim = v.shape[1]
        if v.shape[0] == 0:
            return cls.zero(p, ambient_dim)
        if v.shape[1] != ambient_dim:
            raise FieldError("vector length does not match ambient dimension")
        r, piv, rk = rref(v, p)
        return cls(p, ambient_dim, r[:rk].copy(), tuple(piv))

    @classmethod
    def zero(cls, p, n):
        return cls(p, n, np.zeros((0, n), dtype=np.int64), ())

    @classmethod
    def full(cls, p, n):
        return cls(p, n, np.eye(n, dtype=np.int64), tuple(range(n)))

    @property
    def dim(self):
        return self.basis.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.p == other.p and self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.pivots, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim or self.p != other.p:
            raise FieldError("ambient dimension or field mismatch")

    def __add__(self, other):
        return self.sum(other)

    def sum(self, other):
        self._check(other)
        return Subspace.span(np.concatenate([self.basis, other.basis]), self.p, self.ambient_dim)

    def intersect(self, other):
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.p, self.ambient_dim)
        # x A = y B  <=>  (x, -y) [A; B] = 0
        stacked = np.concatenate([self.basis, (-other.basis) % self.p])
        ker = kernel(stacked, self.p)
        vecs = mat_mul(ker.basis[:, :self.dim], self.basis, self.p)
        return Subspace.span(vecs, self.p, self.ambient_dim)

    def reduce(self, v):
        """Canonical representative of the coset ``v + self``."""
        v = np.array(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return v
        piv = list(self.pivots)
        if v.ndim == 1:
            return (v - v[piv] @ self.basis) % self.p
        return (v - v[:, piv] @ self.basis) % self.p

    def contains_vector(self, v):
        return not self.reduce(v).any()

    def contains(self, other):
        self._check(other)
        if other.dim == 0:
            return True
        return not self.reduce(other.basis).any()

    def coordinates(self, v):
        """Coordinates of ``v`` (assumed inside the subspace) in the RREF basis."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if v.ndim == 1:
            return v[list(self.pivots)]
        return v[:, list(self.pivots)]

    def complement_columns(self):
        piv = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]

    def image(self, m):
        """Image of the subspace under the right action of ``m``."""
        out = mat_mul(self.basis, m, self.p) if self.dim else np.zeros((0, m.shape[1]), dtype=np.int64)
        return Subspace.span(out, self.p, m.shape[1])

    def is_invariant(self, m):
        if self.dim == 0:
            return True
        return not self.reduce(mat_mul(self.basis, m, self.p)).any()

    def annihilator(self):
        """{v : v . w = 0 for all w in self}."""
        if self.dim == 0:
            return Subspace.full(self.p, self.ambient_dim)
        return kernel(self.basis.T, self.p)


def kernel(m, p):
    """Left null space ``{v : v @ m = 0}`` as a Subspace."""
    m = np.asarray(m, dtype=np.int64) % p
    rows, cols = m.shape
    if cols == 0:
        return Subspace.full(p, rows)
    # null space of m^T (column convention) via RREF of m^T
    r, piv, rk = rref(m.T, p)
    free = [j for j in range(rows) if j not in set(piv)]
    basis = np.zeros((len(free), rows), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = (-r[i, f]) % p
    return Subspace.span(basis, p, rows)


@dataclass
class LinearSolution:
    consistent: bool
    particular: np.ndarray = None
    kernel: Subspace = None


def solve_linear(a, b, p):
    """Solve ``x @ a = b`` over F_p.

    Returns a LinearSolution with a particular solution and the kernel of
    ``a``; ``consistent`` is False when no solution exists.
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    rows, cols = a.shape
    # column-convention system a^T x^T = b^T
    aug = np.concatenate([a.T, b.reshape(-1, 1)], axis=1)
    r, piv, rk = rref(aug, p)
    if rows in piv:
        return LinearSolution(False)
    x = np.zeros(rows, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, rows]
    return LinearSolution(True, x, kernel(a, p))
