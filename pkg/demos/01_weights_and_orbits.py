"""Root systems, Weyl orbits and weight multiplicities.

Builds the exceptional root systems, checks their root counts, and computes
the weights of a few minimal modules with Freudenthal's formula.
"""

from liepowers.factors import fundamental
from liepowers.report import format_weight
from liepowers.roots import build_root_system

MINIMAL = [("G", 2, (1, 0)), ("F", 4, (0, 0, 0, 1)), ("E", 6, fundamental(6, 1)),
           ("E", 7, fundamental(7, 7)), ("E", 8, fundamental(8, 8))]

print("group  roots  minimal module  dim  dominant weights with multiplicity")
for t, r, lam in MINIMAL:
    rs = build_root_system(t, r)
    dom = rs.freudenthal(lam)
    total = sum(rs.weyl_module_weights(lam).values())
    assert total == rs.weyl_dim(lam)
    shown = ", ".join(f"{format_weight(mu)}:{m}" for mu, m in sorted(dom.items(), key=lambda kv: -rs.height(kv[0])))
    print(f"{rs.name:5}  {2 * len(rs.positive_roots):5}  {format_weight(lam):14}  {total:4}  {shown}")

# the 56-dimensional module of E7 is minuscule: its weights form one Weyl orbit
e7 = build_root_system("E", 7)
print("\nE7 orbit of the highest weight of the 56-dimensional module:", e7.orbit_size(fundamental(7, 7)))
print("C28 orbit of the first fundamental weight:", build_root_system("C", 28).orbit_size(fundamental(28, 1)))
