"""Command-line entry points: ``liepowers factors | module | pgroup``.

Exit codes: 0 when every check passes, 1 when a check fails or a
probabilistic step stays inconclusive, 2 for usage or data errors.
"""

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import roots
from .factors import (FactorError, ModularDataError, TABLE_TARGETS, load_modular, power_factors,
                      power_multiset, MultiplicityOracle)
from .ff import FieldError, Subspace
from .modules import (InconclusiveError, ModuleError, bundled_g2, composition_factors_matrix, exterior_square,
                      invariant_forms, is_isomorphic, largest_maximal_submodule, lie3_module, load_generators,
                      quotient_module, socle_and_lattice, validate_g2_generators)
from .multiset import MultisetError
from .pgroups import (PGroupError, build_optimal_g2, group_law_checks, make_group, optimal_g2_checks,
                      structure_checks, structure_report)
from .report import RunConfig, emit, format_weight, make_report, parse_weight
from .roots import RootSystemError, build_root_system


class UsageError(ValueError):
    pass


def _rng(config):
    return np.random.default_rng(config.seed % 2 ** 64)


# -- factors ---------------------------------------------------------------------


def _parse_prime_mode(text):
    if text in ("generic", "table"):
        return text
    if text.startswith("p="):
        try:
            return int(text[2:])
        except ValueError:
            pass
    raise UsageError(f"prime mode must be 'generic', 'table' or 'p=N', got {text!r}")


def _factor_row(type_label, rank, lam, power, label, p, table, tie_break):
    rs = build_root_system(type_label, rank)
    oracle = "freudenthal" if p is None else f"modular p={p}"
    row = {"regime": label, "p": p, "oracle": oracle}
    try:
        cf = power_factors(type_label, rank, lam, power, p, table, tie_break)
    except ModularDataError as exc:
        row["error"] = str(exc)
        return row
    row["entries"] = [{"weight": list(e.weight), "name": format_weight(e.weight), "dim": e.dim, "mult": e.mult}
                      for e in cf.entries]
    row["total_dim"] = cf.total_dim
    row["multiplicity_free"] = cf.multiplicity_free
    row["target_dim"] = power_multiset(rs, lam, power, MultiplicityOracle.freudenthal()).size
    return row


def _run_rows(jobs, tasks):
    if jobs == 1 or len(tasks) == 1:
        return [_factor_row(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_factor_row, *zip(*tasks)))


def cmd_factors(args, config):
    rs = build_root_system(args.type, args.rank)
    lam = parse_weight(args.weight, rs.rank)
    if not rs.is_dominant(lam):
        raise UsageError(f"weight {lam} is not dominant")
    mode = _parse_prime_mode(args.prime_mode)
    table = load_modular(args.modular_data) if (mode != "generic" or args.modular_data) else None
    if mode == "generic":
        regimes = [("generic", None)]
    elif mode == "table":
        key = (args.type, rs.rank, lam, args.power)
        regimes = TABLE_TARGETS.get(key)
        if regimes is None:
            regimes = [("generic", None)] + [(f"p = {q}", q) for q in table.primes(args.type, rs.rank)]
    else:
        if not table.has(args.type, rs.rank, mode):
            have = ", ".join(map(str, table.primes(args.type, rs.rank))) or "none"
            raise ModularDataError(f"no modular rows for {rs.name} at p={mode} (rows exist for p in: {have}); "
                                   "use --prime-mode generic when p is not exceptional")
        regimes = [(f"p = {mode}", mode)]
    tasks = [(args.type, rs.rank, lam, args.power, label, p, table, args.tie_break) for label, p in regimes]
    rows = _run_rows(config.jobs, tasks)
    if mode != "table" and rows[0].get("error"):
        raise ModularDataError(f"missing modular rows: {rows[0]['error']}")
    checks = []
    for row in rows:
        tag = f"[{row['regime']}]"
        if row["p"] is not None:
            checks.append((f"{tag} modular data available", "error" not in row))
        if "error" in row:
            continue
        checks.append((f"{tag} factor dimensions sum to the target dimension", row["total_dim"] == row["target_dim"]))
        if row["p"] is None:
            ok = all(rs.weyl_dim(tuple(e["weight"])) == e["dim"] for e in row["entries"])
            checks.append((f"{tag} Freudenthal totals equal Weyl dimensions", ok))
    params = {"type": args.type, "rank": rs.rank, "weight": format_weight(lam), "power": args.power,
              "prime_mode": args.prime_mode, "tie_break": args.tie_break,
              "modular_data": args.modular_data or "bundled"}
    return make_report("factors", config, params, {"rows": rows}, checks)


# -- module ----------------------------------------------------------------------


def _load_module(args):
    if (args.gens is None) == (args.g2 is None):
        raise UsageError("give exactly one of --gens FILE or --g2 P")
    return load_generators(args.gens) if args.gens else bundled_g2(args.g2)


def cmd_module(args, config):
    base = _load_module(args)
    rng = _rng(config)
    on = args.on or ("v" if args.task == "forms" else "a2")
    if on == "v":
        m = base
    elif on == "a2":
        m = exterior_square(base)
    else:
        if base.p <= 3:
            raise UsageError("the third Lie power module needs p > 3")
        m = lie3_module(base)
    results = {"module": f"{on}({base.label or 'V'})", "dim": m.dim}
    checks = []
    if args.task == "factors":
        fs = composition_factors_matrix(m, rng, config.retries)
        results["factors"] = [{"dim": f.dim, "class": f.cls} for f in fs]
        checks.append(("factor dimensions sum to module dimension", sum(f.dim for f in fs) == m.dim))
    elif args.task == "lattice":
        lat = socle_and_lattice(m, rng, config.retries)
        results["lattice"] = {"shape": lat.shape, "dims": lat.dims, "edges": [list(e) for e in lat.edges]}
        checks.append(("lattice edges increase dimension",
                       all(lat.nodes[a].dim < lat.nodes[b].dim for a, b in lat.edges)))
        if on != "v":
            top = quotient_module(m, largest_maximal_submodule(m, lat))
            results["top_quotient_isomorphic_to_base"] = is_isomorphic(top, base, rng) is not None
    else:
        fs = invariant_forms(m)
        desc = fs.describe(m.p)
        if fs.dim == 1:
            kind, nondeg = desc[0]
            summary = f"1-dim, {kind}, {'non-degenerate' if nondeg else 'degenerate'}"
        else:
            summary = (f"{fs.dim}-dim, {len(fs.symmetric)} symmetric and "
                       f"{len(fs.alternating)} alternating basis forms")
        results["forms"] = {"dim": fs.dim, "summary": summary,
                            "basis": [{"kind": k, "non_degenerate": nd} for k, nd in desc]}
    if args.validate_g2:
        battery = validate_g2_generators(base, _rng(config))
        results["validation"] = battery
        checks += [(f"G2 validation: {k}", v) for k, v in sorted(battery.items())]
    params = {"gens": args.gens or f"bundled G2({args.g2})", "task": args.task, "on": on}
    return make_report("module", config, params, results, checks)


# -- pgroup ----------------------------------------------------------------------


def _load_subspace(path, p, dim):
    with open(path) as fh:
        rows = [[int(t) for t in line.split()] for line in fh
                if line.strip() and not line.lstrip().startswith("#")]
    if any(len(r) != dim for r in rows):
        raise UsageError(f"subspace rows must have {dim} entries")
    return Subspace.span(np.array(rows, dtype=np.int64).reshape(len(rows), dim), p, dim)


def cmd_pgroup(args, config):
    rng = _rng(config)
    params = {"d": args.d, "p": args.p, "build": args.build, "subspace": args.subspace}
    if args.build.startswith("optimal-g2"):
        if args.d != 7 or args.subspace:
            raise UsageError("optimal G2 builds need --d 7 and take no --subspace")
        variant = "normalizer" if args.build.endswith("normalizer") else "group-itself"
        opt = build_optimal_g2(args.p, variant)
        rep = structure_report(opt.group, rng, config.samples)
        checks = optimal_g2_checks(opt, rep, rng, min(config.samples, 100))
    else:
        G = make_group(args.build, args.d, args.p)
        if args.subspace:
            G = make_group(args.build, args.d, args.p, _load_subspace(args.subspace, args.p, G.tail_dim))
        rep = structure_report(G, rng, config.samples)
        checks = group_law_checks(G, rng, config.samples) + structure_checks(G, rep)
    return make_report("pgroup", config, params, {"structure": rep.to_dict()}, checks)


# -- entry point -----------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="liepowers", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--retries", type=int, default=20, help="Norton test retry bound")
    common.add_argument("--samples", type=int, default=200, help="random samples per sampled check")
    common.add_argument("--cache-dir", default=None, help="on-disk cache for weight computations")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for table rows")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factors", parents=[common], help="composition factors of Lie powers from weights")
    f.add_argument("--type", required=True, choices=list("ABCDEFG"))
    f.add_argument("--rank", required=True, type=int)
    f.add_argument("--weight", required=True, help="'1,0' or 'λ1+λ7' (also 'l1+l7')")
    f.add_argument("--prime-mode", default="generic", help="generic, table, or p=N")
    f.add_argument("--power", choices=["a2", "l3"], default="a2")
    f.add_argument("--modular-data", default=None, help="modular decomposition file (default: bundled)")
    f.add_argument("--tie-break", choices=["lex-max", "lex-min"], default="lex-max")

    m = sub.add_parser("module", parents=[common], help="MeatAxe computations on matrix modules")
    m.add_argument("--gens", default=None, help="generator file")
    m.add_argument("--g2", type=int, default=None, help="use the bundled G2(p) generators")
    m.add_argument("--task", required=True, choices=["factors", "lattice", "forms"])
    m.add_argument("--on", choices=["v", "a2", "l3"], default=None,
                   help="module to analyse (default a2, or v for forms)")
    m.add_argument("--validate-g2", action="store_true", help="run the G2 generator validation battery")

    g = sub.add_parser("pgroup", parents=[common], help="build and verify a p-group")
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--build", required=True,
                   choices=["gamma2", "gamma3", "estar", "optimal-g2-normalizer", "optimal-g2-self"])
    g.add_argument("--subspace", default=None, help="file of tail vectors spanning the quotient subspace")
    return ap


COMMANDS = {"factors": cmd_factors, "module": cmd_module, "pgroup": cmd_pgroup}

DATA_ERRORS = (UsageError, FactorError, ModuleError, PGroupError, RootSystemError, MultisetError, FieldError,
               OSError, ValueError)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(args.seed, args.retries, args.samples, args.cache_dir, args.format, args.jobs)
        roots.set_cache_dir(config.cache_dir)
        report = COMMANDS[args.command](args, config)
    except InconclusiveError as exc:
        print(f"liepowers: inconclusive: {exc}", file=sys.stderr)
        return 1
    except ModularDataError as exc:
        print(f"liepowers: data error: {exc}", file=sys.stderr)
        return 2
    except FactorError as exc:
        # a peel inconsistency is a failed check rather than bad input
        if "inconsistent" in str(exc):
            print(f"liepowers: check failed: {exc}", file=sys.stderr)
            return 1
        print(f"liepowers: error: {exc}", file=sys.stderr)
        return 2
    except DATA_ERRORS as exc:
        print(f"liepowers: error: {exc}", file=sys.stderr)
        return 2
    finally:
        roots.set_cache_dir(None)
    sys.stdout.write(emit(report, config.format))
    return 0 if report["status"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
