"""p-groups whose automorphism groups induce G2(p) on the Frattini quotient.

The normaliser variant is the class-2 quotient of Gamma2 by the 14-dimensional
submodule of A^2 V; the group-itself variant is a quotient of the p-covering
group E* by the graph of an epimorphism A^2 V -> V.  Both have order p^14.
"""

import numpy as np

from liepowers.pgroups import (EStar, Gamma2, Gamma3, build_optimal_g2, optimal_g2_checks, structure_report,
                               ucs_evidence)


def show(label, rep):
    print(f"{label:28} order p^{rep.order_exponent:<3} rank {rep.rank}  class {rep.nilpotency_class}  "
          f"exponent {rep.exponent}  exponent-p class {rep.exponent_p_class}")


rng = np.random.default_rng(0)
show("Gamma2, d = 7, p = 5", structure_report(Gamma2(7, 5), rng))
show("Gamma3, d = 3, p = 5", structure_report(Gamma3(3, 5), rng))
show("E*, d = 3, p = 5", structure_report(EStar(3, 5), rng))

for p in (3, 5, 7):
    for variant in ("normalizer", "group-itself"):
        opt = build_optimal_g2(p, variant)
        rep = structure_report(opt.group, rng)
        show(f"optimal G2({p}), {variant}", rep)
        failed = [name for name, ok in optimal_g2_checks(opt, rep, rng, 50) if not ok]
        if failed:
            print("    failed checks:", failed)
    print(f"    irreducibility evidence: {ucs_evidence(p)}")
