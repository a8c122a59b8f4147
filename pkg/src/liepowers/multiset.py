"""Weight multisets and the operations that build them for tensor constructions."""

from collections import Counter
from math import comb

import numpy as np


class MultisetError(ValueError):
    pass


class WeightMultiset:
    """Finite multiset of weights of a fixed root system.

    ``counts`` maps weight tuples to positive integers.  Instances are
    treated as immutable values.
    """

    __slots__ = ("rs", "counts", "size")

    def __init__(self, rs, counts):
        counts = {tuple(int(c) for c in w): int(m) for w, m in dict(counts).items() if m}
        for w, m in counts.items():
            if m < 0:
                raise MultisetError(f"negative count {m} for weight {w}")
            if len(w) != rs.rank:
                raise MultisetError(f"weight {w} does not have rank {rs.rank}")
        self.rs = rs
        self.counts = counts
        self.size = sum(counts.values())

    def __len__(self):
        return self.size

    def __eq__(self, other):
        return isinstance(other, WeightMultiset) and self.rs == other.rs and self.counts == other.counts

    def __repr__(self):
        return f"WeightMultiset({self.rs.name}, size={self.size}, distinct={len(self.counts)})"

    def __add__(self, other):
        _same(self, other)
        return WeightMultiset(self.rs, Counter(self.counts) + Counter(other.counts))

    def items(self):
        """(weight, count) pairs in sorted lexicographic order."""
        return sorted(self.counts.items())

    def dominant(self):
        return {w: m for w, m in self.counts.items() if min(w) >= 0}

    def expanded(self):
        """Weights as an array with one row per element, sorted."""
        rows = [w for w, m in self.items() for _ in range(m)]
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.rs.rank)

    @classmethod
    def from_irreducible(cls, rs, lam, oracle=None):
        """Weight multiset of L(lam) according to ``oracle`` (Freudenthal by default)."""
        if oracle is None:
            return cls(rs, rs.weyl_module_weights(tuple(lam)))
        return oracle.irreducible_multiset(rs, lam)

    @classmethod
    def trivial(cls, rs):
        return cls(rs, {tuple([0] * rs.rank): 1})

    def scale_counts(self, k):
        return WeightMultiset(self.rs, {w: m * k for w, m in self.counts.items()})


def _same(u, v):
    if u.rs != v.rs:
        raise MultisetError(f"root system mismatch: {u.rs.name} vs {v.rs.name}")


def _group(rows, weights, rs):
    """Sum ``weights`` over identical rows of ``rows``."""
    if rows.shape[0] == 0:
        return WeightMultiset(rs, {})
    uniq, inv = np.unique(rows, axis=0, return_inverse=True)
    tot = np.bincount(inv.reshape(-1), weights=weights, minlength=uniq.shape[0])
    return WeightMultiset(rs, {tuple(u): int(round(t)) for u, t in zip(uniq.tolist(), tot)})


def tensor(u, v):
    _same(u, v)
    uw, um = _arrays(u)
    vw, vm = _arrays(v)
    rows = (uw[:, None, :] + vw[None, :, :]).reshape(-1, u.rs.rank)
    mult = (um[:, None] * vm[None, :]).reshape(-1).astype(np.float64)
    out = _group(rows, mult, u.rs)
    assert out.size == u.size * v.size
    return out


def _arrays(v):
    items = v.items()
    w = np.array([k for k, _ in items], dtype=np.int64).reshape(len(items), v.rs.rank)
    m = np.array([c for _, c in items], dtype=np.int64)
    return w, m


def exterior_power(v, n):
    """Weights of the n-th exterior power, n in {2, 3}."""
    if n not in (2, 3):
        raise MultisetError("only exterior squares and cubes are supported")
    if n > v.size:
        raise MultisetError(f"exterior power {n} exceeds multiset size {v.size}")
    x = v.expanded()
    size = x.shape[0]
    if n == 2:
        i, j = np.triu_indices(size, k=1)
        rows = x[i] + x[j]
        out = _group(rows, np.ones(len(i)), v.rs)
    else:
        # stream over the smallest index so memory stays at O(size^2)
        acc = Counter()
        for i in range(size - 2):
            rest = x[i + 1:]
            j, k = np.triu_indices(rest.shape[0], k=1)
            part = _group(x[i] + rest[j] + rest[k], np.ones(len(j)), v.rs)
            acc.update(part.counts)
        out = WeightMultiset(v.rs, acc)
    assert out.size == comb(v.size, n)
    return out


def frobenius_twist(v, n, p):
    """Scale every weight by p**n."""
    if n < 0:
        raise MultisetError("twist exponent must be nonnegative")
    f = p ** n
    return WeightMultiset(v.rs, {tuple(c * f for c in w): m for w, m in v.counts.items()})


def subtract(v, u):
    """v minus u; raises naming the first weight where u exceeds v."""
    _same(u, v)
    out = dict(v.counts)
    for w, m in sorted(u.counts.items()):
        have = out.get(w, 0)
        if have < m:
            raise MultisetError(f"not a sub-multiset: weight {w} needed {m}, available {have}")
        if have == m:
            del out[w]
        else:
            out[w] = have - m
    return WeightMultiset(v.rs, out)


def lie3_multiset(v):
    """Weights of (A^2 V (x) V) / A^3 V."""
    if v.size < 2:
        raise MultisetError("third Lie power needs at least two weights")
    cube = exterior_power(v, 3) if v.size >= 3 else WeightMultiset(v.rs, {})
    out = subtract(tensor(exterior_power(v, 2), v), cube)
    d = v.size
    assert out.size == (d ** 3 - d) // 3
    return out
