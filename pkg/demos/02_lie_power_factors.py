"""Composition factors of exterior squares and third Lie powers from weights.

For each target the weight multiset of A^2 V or L^3 V is peeled into
irreducible highest-weight modules, once per prime regime.  Exceptional
primes use the bundled modular decomposition data.  Pass --with-e8 to
include the (slower) E8 exterior square.
"""

import sys

from liepowers.factors import TABLE_TARGETS, table_suite
from liepowers.report import format_weight

with_e8 = "--with-e8" in sys.argv

for (t, r, lam, power), regimes in TABLE_TARGETS.items():
    if t == "E" and r == 8 and not with_e8:
        continue
    name = "A^2" if power == "a2" else "L^3"
    print(f"\n{name} L({format_weight(lam)}) for {t}{r}")
    for row in table_suite(t, r, lam, power):
        if row.error:
            print(f"  {row.regime:24} error: {row.error}")
            continue
        cells = "  ".join(f"{format_weight(w)}:{d}" + (f" x{m}" if m > 1 else "") for w, d, m in row.factors.as_tuples())
        flag = "multiplicity free" if row.factors.multiplicity_free else ""
        print(f"  {row.regime:24} {cells}  {flag}")
