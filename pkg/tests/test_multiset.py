from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from liepowers.multiset import (MultisetError, WeightMultiset, exterior_power, frobenius_twist,
                                lie3_multiset, subtract, tensor)
from liepowers.roots import build_root_system

A2 = build_root_system("A", 2)
G2 = build_root_system("G", 2)
E7 = build_root_system("E", 7)
L7 = (0,) * 6 + (1,)


def ms(counts, rs=A2):
    return WeightMultiset(rs, counts)


weights = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
multisets = st.dictionaries(weights, st.integers(1, 3), min_size=1, max_size=5).map(ms)


def test_from_irreducible():
    assert WeightMultiset.from_irreducible(G2, (0, 0)).counts == {(0, 0): 1}
    v = WeightMultiset.from_irreducible(E7, L7)
    assert v.size == 56 and len(v.counts) == 56 and set(v.counts.values()) == {1}


def test_tensor_examples():
    a, b = (1, 0), (0, 1)
    u = ms({a: 1, b: 1})
    assert tensor(u, u).counts == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert tensor(u, WeightMultiset.trivial(A2)) == u
    with pytest.raises(MultisetError):
        tensor(u, WeightMultiset.trivial(G2))


def test_tensor_size_e7():
    v = WeightMultiset.from_irreducible(E7, L7)
    assert tensor(exterior_power(v, 2), v).size == 86240


def test_exterior_examples():
    assert exterior_power(ms({(1, 0): 1, (0, 1): 1}), 2).counts == {(1, 1): 1}
    v = WeightMultiset.from_irreducible(G2, (1, 0))
    assert exterior_power(v, 2).size == 21
    assert exterior_power(WeightMultiset.from_irreducible(E7, L7), 3).size == 27720
    with pytest.raises(MultisetError):
        exterior_power(ms({(1, 0): 1}), 2)
    with pytest.raises(MultisetError):
        exterior_power(v, 4)


def test_exterior_brute_force():
    rng = np.random.default_rng(0)
    rows = [tuple(int(x) for x in rng.integers(-2, 3, size=2)) for _ in range(7)]
    v = ms({w: rows.count(w) for w in set(rows)})
    x = v.expanded()
    for n in (2, 3):
        brute = {}
        import itertools
        for idx in itertools.combinations(range(len(x)), n):
            w = tuple(int(c) for c in x[list(idx)].sum(axis=0))
            brute[w] = brute.get(w, 0) + 1
        assert exterior_power(v, n).counts == brute


@settings(max_examples=40, deadline=None)
@given(multisets)
def test_sizes(v):
    for n in (2, 3):
        if v.size >= n:
            assert exterior_power(v, n).size == comb(v.size, n)
    assert frobenius_twist(v, 2, 3).size == v.size
    assert frobenius_twist(v, 0, 5) == v
    assert subtract(v, v).size == 0 and subtract(v, ms({})) == v
    if v.size >= 2:
        assert lie3_multiset(v).size == (v.size ** 3 - v.size) // 3


def test_twist():
    assert frobenius_twist(ms({(1, 0): 1}), 1, 3).counts == {(3, 0): 1}


def test_subtract_error_names_weight():
    with pytest.raises(MultisetError, match=r"\(0, 1\)"):
        subtract(ms({(1, 0): 1}), ms({(0, 1): 1}))


def test_lie3_sizes():
    v = WeightMultiset.from_irreducible(E7, L7)
    assert lie3_multiset(v).size == 58520 == 56 + 912 + 6480 + 51072
    e6 = build_root_system("E", 6)
    assert lie3_multiset(WeightMultiset.from_irreducible(e6, (1, 0, 0, 0, 0, 0))).size == 6552
    assert lie3_multiset(ms({(1, 0): 1, (0, 1): 1})).size == 2
