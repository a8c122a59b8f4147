"""Coordinates for the Lie powers L^2 V and L^3 V of V = F_p^d.

L^2 V uses the basis e_i ^ e_j (i < j) in ascending lexicographic order,
identified with the brackets [e_i, e_j].  L^3 V is realised inside V (x) V (x) V
as the span of all [[e_i, e_j], e_k]; its basis is the reduced echelon basis
of that span and coordinates are read off at the pivot columns.

The opposite convention (descending order) is obtained by reversing the
index order of both pair lists.
"""

from functools import lru_cache
from itertools import combinations

import numpy as np

from .ff import Subspace, mat_mul


def pair_list(d):
    return list(combinations(range(d), 2))


def pair_index(d):
    return {pr: t for t, pr in enumerate(pair_list(d))}


def ext_square_matrix(g, p):
    """Matrix of g ^ g on the e_i ^ e_j basis (row-vector action)."""
    g = np.asarray(g, dtype=np.int64) % p
    d = g.shape[0]
    pairs = np.array(pair_list(d), dtype=np.int64).reshape(-1, 2)
    i, j = pairs[:, 0], pairs[:, 1]
    out = g[np.ix_(i, i)] * g[np.ix_(j, j)] - g[np.ix_(i, j)] * g[np.ix_(j, i)]
    return out % p


def a3_basis(d, p):
    """Rows spanning A^3 V inside A^2 V (x) V, index pair * d + k."""
    idx = pair_index(d)
    rows = []
    for i, j, k in combinations(range(d), 3):
        v = np.zeros(len(idx) * d, dtype=np.int64)
        v[idx[(i, j)] * d + k] += 1
        v[idx[(j, k)] * d + i] += 1
        v[idx[(i, k)] * d + j] -= 1
        rows.append(v % p)
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(idx) * d)


def a3_submodule(d, p):
    return Subspace.span(a3_basis(d, p), p, d * (d - 1) // 2 * d)


def triple_bracket_tensor(d, i, j, k):
    """[[e_i, e_j], e_k] as an integer vector of V (x) V (x) V."""
    t = np.zeros((d, d, d), dtype=np.int64)
    t[i, j, k] += 1
    t[j, i, k] -= 1
    t[k, i, j] -= 1
    t[k, j, i] += 1
    return t.reshape(-1)


class LiePowerBasis:
    """Bracket coordinates on L^2 V and L^3 V for V = F_p^d."""

    def __init__(self, d, p):
        self.d, self.p = d, p
        self.pairs = pair_list(d)
        self.pair_index = pair_index(d)
        self.n2 = len(self.pairs)
        self.n3 = (d ** 3 - d) // 3
        # map (e_i ^ e_j) (x) e_k  ->  [[e_i, e_j], e_k]
        self.bracket_map = np.array([triple_bracket_tensor(d, i, j, k)
                                     for (i, j) in self.pairs for k in range(d)], dtype=np.int64) % p
        self.l3 = Subspace.span(self.bracket_map, p, d ** 3)
        assert self.l3.dim == self.n3, "bracket span does not have the Witt dimension"
        self._piv = list(self.l3.pivots)

    # -- brackets -------------------------------------------------------

    def bracket_vv(self, a, f):
        """Coordinates of [a, f] in L^2 V; accepts batches along axis 0."""
        a = np.asarray(a, dtype=np.int64)
        f = np.asarray(f, dtype=np.int64)
        i = [pr[0] for pr in self.pairs]
        j = [pr[1] for pr in self.pairs]
        return (a[..., i] * f[..., j] - a[..., j] * f[..., i]) % self.p

    def l2_as_matrix(self, b):
        """Antisymmetric d x d matrix of b, i.e. sum b_ij (e_i e_j - e_j e_i)."""
        b = np.asarray(b, dtype=np.int64)
        m = np.zeros(b.shape[:-1] + (self.d, self.d), dtype=np.int64)
        for t, (i, j) in enumerate(self.pairs):
            m[..., i, j] = b[..., t]
            m[..., j, i] = -b[..., t]
        return m

    def bracket_l2_v(self, b, f):
        """Coordinates of [b, f] in L^3 V for b in L^2 V and f in V."""
        t = self.bracket_l2_v_tensor(b, f)
        return t[..., self._piv] % self.p

    def bracket_l2_v_tensor(self, b, f):
        m = self.l2_as_matrix(b)
        f = np.asarray(f, dtype=np.int64)
        d = self.d
        t = m[..., :, :, None] * f[..., None, None, :] - f[..., :, None, None] * m[..., None, :, :]
        return t.reshape(t.shape[:-3] + (d ** 3,)) % self.p

    def bracket_vvv(self, a, f, h):
        return self.bracket_l2_v(self.bracket_vv(a, f), h)

    def l3_coordinates(self, t):
        """Coordinates of a tensor that lies in L^3 V."""
        t = np.asarray(t, dtype=np.int64) % self.p
        assert not self.l3.reduce(t).any(), "tensor is not in the bracket span"
        return t[..., self._piv]

    def l3_vector(self, c):
        """Tensor of the L^3 element with coordinates c."""
        return mat_mul(c, self.l3.basis, self.p)

    # -- induced actions ------------------------------------------------

    def l2_action(self, g):
        return ext_square_matrix(g, self.p)

    def l3_action(self, g):
        g = np.asarray(g, dtype=np.int64) % self.p
        k = np.kron(np.kron(g, g), g) % self.p
        img = mat_mul(self.l3.basis, k, self.p)
        return img[:, self._piv]

    # -- the two realisations of L^3 V ------------------------------------

    def quotient_to_subspace(self):
        """Invertible map from (A^2 V (x) V)/A^3 V coordinates to L^3 coordinates.

        Quotient coordinates are the non-pivot columns of the A^3 basis;
        row r of the result is the image of the r-th quotient basis vector.
        """
        a3 = a3_submodule(self.d, self.p)
        cols = a3.complement_columns()
        return self.bracket_map[cols][:, self._piv] % self.p


@lru_cache(maxsize=None)
def lie_basis(d, p):
    return LiePowerBasis(d, p)
