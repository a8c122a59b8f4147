"""Write generator files for G2(p) acting on its 7-dimensional module.

G2 is the automorphism group of the split octonions.  This script builds
the octonions as Zorn vector matrices, solves for the derivation algebra
over the rationals, picks root vectors for the positive and negative
simple roots, and exponentiates them:  x(1) = 1 + e + e^2/2  (e^3 = 0).
The four root elements generate G2(p) for each odd prime p.

Usage:  python tools/make_g2_generators.py OUTDIR [p ...]
"""

import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import sympy

# basis: u1=[[1,0],[0,0]], u2=[[0,0],[0,1]], x1..x3, y1..y3
N = 8


def split(v):
    return v[0], v[2:5], v[5:8], v[1]


def join(a, x, y, b):
    return [a, b, *x, *y]


def zorn_mul(u, v):
    a, x, y, b = split(np.asarray(u, dtype=np.int64))
    a2, x2, y2, b2 = split(np.asarray(v, dtype=np.int64))
    return join(a * a2 + x.dot(y2),
                a * x2 + b2 * x - np.cross(y, y2),
                a2 * y + b * y2 + np.cross(x, x2),
                b * b2 + y.dot(x2))


def structure_constants():
    e = np.eye(N, dtype=np.int64)
    return np.array([[zorn_mul(e[i], e[j]) for j in range(N)] for i in range(N)], dtype=np.int64)


def check_alternative(c, rng):
    def mul(u, v):
        return np.einsum("i,j,ijk->k", u, v, c)
    for _ in range(20):
        u, v = (rng.integers(-3, 4, size=N) for _ in range(2))
        assert np.array_equal(mul(mul(u, u), v), mul(u, mul(u, v)))
        assert np.array_equal(mul(mul(v, u), u), mul(v, mul(u, u)))


WEIGHTS = [(0, 0, 0), (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)]


def same_weight(a, b):
    d = [x - y for x, y in zip(a, b)]
    return d[0] == d[1] == d[2]


def root_derivation(c, root):
    """The derivation of the given torus weight, as an 8x8 column-action matrix."""
    unknowns = [(k, i) for k in range(N) for i in range(N)
                if same_weight([a - b for a, b in zip(WEIGHTS[k], WEIGHTS[i])], root)]
    rows = []
    for i in range(N):
        for j in range(N):
            # D(u_i u_j) - D(u_i) u_j - u_i D(u_j) = 0, one equation per output coordinate
            for out in range(N):
                row = []
                for (k, s) in unknowns:
                    coef = int(c[i, j, s]) if k == out else 0
                    if s == i:
                        coef -= int(c[k, j, out])
                    if s == j:
                        coef -= int(c[i, k, out])
                    row.append(coef)
                rows.append(row)
    null = sympy.Matrix(rows).nullspace()
    assert len(null) == 1, f"root {root}: derivation space has dimension {len(null)}"
    vec = null[0]
    den = sympy.ilcm(*[sympy.fraction(x)[1] for x in vec])
    vec = [int(x * den) for x in vec]
    g = sympy.igcd(*vec)
    d = np.zeros((N, N), dtype=object)
    for (k, s), val in zip(unknowns, vec):
        d[k, s] = val // g
    return d


def restrict_imaginary(d):
    """Matrix of d on (h, x1, x2, x3, y1, y2, y3) with h = u1 - u2."""
    basis = np.zeros((7, N), dtype=object)
    basis[0, 0], basis[0, 1] = 1, -1
    for t in range(6):
        basis[t + 1, t + 2] = 1
    images = [d.dot(b) for b in basis]
    out = np.zeros((7, 7), dtype=object)
    for col, img in enumerate(images):
        assert img[0] == -img[1], "derivation leaves the trace-zero part"
        out[0, col] = img[0]
        out[1:, col] = img[2:]
    return out


def exponentiate(e):
    e2 = e.dot(e)
    assert not e2.dot(e).any(), "root element is not cube-zero"
    return np.eye(7, dtype=object) + e + np.vectorize(lambda z: Fraction(z, 2))(e2)


def generators_over_q():
    c = structure_constants()
    check_alternative(c, np.random.default_rng(0))
    # alpha1 = eps2 (short), alpha2 = eps1 - eps2 (long)
    roots = [(0, 1, 0), (0, -1, 0), (1, -1, 0), (-1, 1, 0)]
    mats = []
    for r in roots:
        e = restrict_imaginary(root_derivation(c, r))
        # row-vector convention: v @ g
        mats.append(exponentiate(e).T)
    return mats


def reduce_mod(m, p):
    return [[int(Fraction(z).numerator * pow(Fraction(z).denominator, -1, p) % p) for z in row] for row in m]


def write(path, mats, p):
    with open(path, "w") as fh:
        fh.write(f"7 {p} {len(mats)}\n")
        for m in mats:
            for row in reduce_mod(m, p):
                fh.write(" ".join(str(x) for x in row) + "\n")


if __name__ == "__main__":
    outdir = Path(sys.argv[1])
    primes = [int(x) for x in sys.argv[2:]] or [3, 5, 7]
    mats = generators_over_q()
    for p in primes:
        write(outdir / f"g2_{p}.gens", mats, p)
        print(f"wrote {outdir / f'g2_{p}.gens'}")
