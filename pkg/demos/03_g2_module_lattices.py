"""Submodule lattices of the exterior square of the 7-dimensional G2(p) module.

For p = 5, 7 the exterior square is the direct sum of V and a 14-dimensional
irreducible; for p = 3 it is uniserial with three 7-dimensional layers.  The
invariant bilinear forms on V are computed as well.
"""

import numpy as np

from liepowers.modules import (bundled_g2, composition_factors_matrix, exterior_square, invariant_forms,
                               is_isomorphic, largest_maximal_submodule, quotient_module, socle_and_lattice)

for p in (3, 5, 7):
    rng = np.random.default_rng(p)
    v = bundled_g2(p)
    a2 = exterior_square(v)
    factors = composition_factors_matrix(a2, rng)
    lat = socle_and_lattice(a2, rng)
    top = quotient_module(a2, largest_maximal_submodule(a2, lat))
    forms = invariant_forms(v)
    print(f"G2({p}): A^2 V has factors {[f.dim for f in factors]}, lattice {lat.shape}")
    for a, b in lat.edges:
        print(f"    {lat.dims[a]:2} < {lat.dims[b]:2}")
    print(f"    top quotient isomorphic to V: {is_isomorphic(top, v, rng) is not None}")
    print(f"    invariant forms on V: {forms.dim}-dim, {forms.describe(p)}")
