"""Composition factors of weight multisets by repeatedly peeling off a maximal weight.

Two multiplicity oracles supply the weights of each irreducible L(lam):

* ``MultiplicityOracle.freudenthal()`` assumes L(lam) = V(lam), which holds
  for large characteristic.
* ``MultiplicityOracle.modular(p, table)`` uses a decomposition table of
  Weyl modules at the prime p and recovers
  Lambda(L(lam)) = Lambda(V(lam)) - sum mult * Lambda(L(mu)) recursively.
"""

from collections import Counter
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .multiset import MultisetError, WeightMultiset, exterior_power, lie3_multiset, subtract
from .roots import build_root_system


class FactorError(ValueError):
    pass


class ModularDataError(FactorError):
    pass


# -- modular decomposition data ------------------------------------------


def parse_weight_list(text):
    return tuple(int(c) for c in text.split(","))


@dataclass
class ModularTable:
    """Weyl-module decompositions keyed by (type, rank, p) then highest weight."""

    rows: dict = field(default_factory=dict)

    def primes(self, type_label, rank):
        return sorted(p for (t, n, p) in self.rows if (t, n) == (type_label, rank))

    def row(self, type_label, rank, p, lam):
        return self.rows.get((type_label, rank, p), {}).get(tuple(lam))

    def has(self, type_label, rank, p):
        return (type_label, rank, p) in self.rows


def parse_modular(text, source="<string>"):
    table = ModularTable()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        try:
            head, body = line.split(":", 1)
            type_label, rank, p = head.split()
            rank, p = int(rank), int(p)
            lhs, rhs = body.split("->", 1)
            lam = parse_weight_list(lhs.strip())
            factors = []
            for part in rhs.split(";"):
                w, m = part.split("*")
                factors.append((parse_weight_list(w.strip()), int(m)))
        except ValueError as exc:
            raise ModularDataError(f"{where}: malformed record ({exc})") from None
        key = (type_label, rank, p)
        bucket = table.rows.setdefault(key, {})
        if lam in bucket:
            raise ModularDataError(f"{where}: duplicate row for {lam}")
        bucket[lam] = factors
    validate_modular(table)
    return table


def load_modular(path=None):
    """Load a decomposition file; the bundled data when ``path`` is None."""
    if path is None:
        text = resources.files("liepowers").joinpath("data/modular.txt").read_text()
        return parse_modular(text, "modular.txt")
    with open(path) as fh:
        return parse_modular(fh.read(), str(path))


def validate_modular(table):
    """Reject rows whose bookkeeping cannot be right.

    Each row must contain (lam, 1), list dominant co-factors strictly below
    lam that have rows of their own, and leave a positive dimension for L(lam).
    """
    for (type_label, rank, p), bucket in table.rows.items():
        rs = build_root_system(type_label, rank)
        for lam, factors in bucket.items():
            tag = f"{type_label}{rank} p={p} row {lam}"
            if len(lam) != rank or any(len(w) != rank for w, _ in factors):
                raise ModularDataError(f"{tag}: weight length does not match rank")
            if (lam, 1) not in factors:
                raise ModularDataError(f"{tag}: row must contain the factor ({lam}, 1)")
            for w, m in factors:
                if w == lam:
                    continue
                if m <= 0 or not rs.is_dominant(w):
                    raise ModularDataError(f"{tag}: co-factor {w} must be dominant with positive multiplicity")
                if not rs.dominance_leq(w, lam):
                    raise ModularDataError(f"{tag}: co-factor {w} is not strictly below {lam}")
        for lam in bucket:
            _modular_dim(rs, p, table, lam, ())


def _modular_dim(rs, p, table, lam, stack):
    if lam in stack:
        raise ModularDataError(f"cyclic modular data at {lam}")
    if not any(lam):
        return 1
    row = table.row(rs.type_label, rs.rank, p, lam)
    if row is None:
        raise ModularDataError(f"{rs.name} p={p}: no row for co-factor {lam}")
    dim = rs.weyl_dim(lam)
    for w, m in row:
        if w != lam:
            dim -= m * _modular_dim(rs, p, table, w, stack + (lam,))
    if dim <= 0:
        raise ModularDataError(f"{rs.name} p={p}: row {lam} leaves dimension {dim}")
    return dim


# -- oracles --------------------------------------------------------------


class MultiplicityOracle:
    def __init__(self, p=None, table=None):
        if (p is None) != (table is None):
            raise FactorError("a modular oracle needs both a prime and a table")
        self.p = p
        self.table = table
        self._cache = {}

    @classmethod
    def freudenthal(cls):
        return cls()

    @classmethod
    def modular(cls, p, table=None):
        return cls(p, load_modular() if table is None else table)

    @property
    def mode(self):
        return "freudenthal" if self.p is None else f"modular p={self.p}"

    def irreducible_multiset(self, rs, lam, _stack=()):
        lam = tuple(int(c) for c in lam)
        if not rs.is_dominant(lam):
            raise FactorError(f"weight {lam} is not dominant")
        key = (rs.type_label, rs.rank, lam)
        if key in self._cache:
            return self._cache[key]
        weyl = WeightMultiset(rs, rs.weyl_module_weights(lam))
        if self.p is None or not any(lam):
            out = weyl
        else:
            if lam in _stack:
                raise ModularDataError(f"cyclic modular data at {lam}")
            row = self.table.row(rs.type_label, rs.rank, self.p, lam)
            if row is None:
                raise ModularDataError(f"no modular data for {rs.name} weight {lam} at p={self.p}")
            out = weyl
            for w, m in row:
                if w != lam:
                    sub = self.irreducible_multiset(rs, w, _stack + (lam,))
                    try:
                        out = subtract(out, sub.scale_counts(m))
                    except MultisetError as exc:
                        raise ModularDataError(f"row {lam} at p={self.p}: {exc}") from None
        self._cache[key] = out
        return out

    def dim(self, rs, lam):
        return self.irreducible_multiset(rs, lam).size


# -- peeling --------------------------------------------------------------


@dataclass(frozen=True)
class FactorEntry:
    weight: tuple
    dim: int
    mult: int


@dataclass
class CompositionFactors:
    group: str
    entries: list

    @property
    def total_dim(self):
        return sum(e.dim * e.mult for e in self.entries)

    @property
    def multiplicity_free(self):
        return all(e.mult == 1 for e in self.entries)

    def as_tuples(self):
        return [(e.weight, e.dim, e.mult) for e in self.entries]

    def to_dict(self):
        return {"group": self.group,
                "entries": [{"weight": list(e.weight), "dim": e.dim, "mult": e.mult} for e in self.entries],
                "multiplicity_free": self.multiplicity_free}


def _maximal_dominant(rs, counts, tie_break):
    dom = sorted(w for w in counts if min(w) >= 0)
    if not dom:
        raise FactorError("no dominant weight left in a nonempty multiset")
    inv = rs.cartan_inv_num
    coords = np.array(dom, dtype=np.int64) @ inv
    maximal = []
    for i, w in enumerate(dom):
        diff = coords - coords[i]
        above = np.all(diff >= 0, axis=1) & np.any(diff > 0, axis=1)
        if not above.any():
            maximal.append(w)
    lam = max(maximal) if tie_break == "lex-max" else min(maximal)
    # nothing in the whole multiset may sit strictly above the choice
    allw = np.array(list(counts), dtype=np.int64)
    diff = allw @ inv - coords[dom.index(lam)]
    above = np.all(diff >= 0, axis=1) & np.any(diff > 0, axis=1)
    if above.any():
        bad = tuple(int(c) for c in allw[np.argmax(above)])
        raise FactorError(f"non-dominant weight {bad} lies above every dominant candidate")
    return lam


def factor_order_key(rs, lam):
    return (-rs.height(lam), tuple(-c for c in lam))


def peel(target, oracle, tie_break="lex-max"):
    """Composition factors of a module from its weight multiset."""
    if tie_break not in ("lex-max", "lex-min"):
        raise FactorError(f"unknown tie-break {tie_break!r}")
    rs = target.rs
    if target.size == 0:
        raise FactorError("cannot peel an empty multiset")
    remaining = target
    found = Counter()
    pieces = WeightMultiset(rs, {})
    while remaining.size:
        lam = _maximal_dominant(rs, remaining.counts, tie_break)
        piece = oracle.irreducible_multiset(rs, lam)
        try:
            remaining = subtract(remaining, piece)
        except MultisetError as exc:
            raise FactorError(f"oracle ({oracle.mode}) inconsistent with target at L{lam}: {exc}") from None
        found[lam] += 1
        pieces = pieces + piece
    assert pieces == target, "peeled factors do not reconstruct the target"
    entries = [FactorEntry(lam, oracle.dim(rs, lam), m)
               for lam, m in sorted(found.items(), key=lambda kv: factor_order_key(rs, kv[0]))]
    out = CompositionFactors(rs.name, entries)
    assert out.total_dim == target.size
    return out


# -- Lie power targets ----------------------------------------------------


def power_multiset(rs, lam, power, oracle):
    """Weights of A^2 V or (A^2 V (x) V)/A^3 V for V = L(lam)."""
    v = oracle.irreducible_multiset(rs, lam)
    if power == "a2":
        return exterior_power(v, 2)
    if power == "l3":
        return lie3_multiset(v)
    raise FactorError(f"unknown power {power!r}")


def power_factors(type_label, rank, lam, power, p=None, table=None, tie_break="lex-max"):
    rs = build_root_system(type_label, rank)
    oracle = MultiplicityOracle.freudenthal() if p is None else MultiplicityOracle.modular(p, table)
    return peel(power_multiset(rs, tuple(lam), power, oracle), oracle, tie_break)


def fundamental(rank, *indices):
    """Weight sum of the listed fundamental weights (1-based)."""
    w = [0] * rank
    for i in indices:
        w[i - 1] += 1
    return tuple(w)


# The Lie power targets: (type, rank, module, power) -> prime regimes.
# A regime is (label, p) with p None for the generic Freudenthal regime.
TABLE_TARGETS = {
    ("G", 2, (1, 0), "a2"): [("p = 3", 3), ("p > 3", None)],
    ("G", 2, (0, 1), "a2"): [("p > 3", None)],
    ("F", 4, (1, 0, 0, 0), "a2"): [("p = 3", 3), ("p > 3", None)],
    ("F", 4, (0, 0, 0, 1), "a2"): [("p = 3", 3), ("p > 3", None)],
    ("E", 6, fundamental(6, 1), "a2"): [("p > 2", None)],
    ("E", 6, fundamental(6, 6), "a2"): [("p > 2", None)],
    ("E", 7, fundamental(7, 7), "a2"): [("p = 7", 7), ("p not in {2,7}", None)],
    ("E", 8, fundamental(8, 8), "a2"): [("p = 3", 3), ("p = 5", 5), ("p > 5", None)],
    ("E", 6, fundamental(6, 1), "l3"): [("p = 3", 3), ("p = 5", 5), ("p > 5", None)],
    ("E", 6, fundamental(6, 6), "l3"): [("p = 3", 3), ("p = 5", 5), ("p > 5", None)],
    ("E", 7, fundamental(7, 7), "l3"): [("p = 3", 3), ("p = 7", 7), ("p = 11", 11), ("p = 19", 19),
                                         ("p not in {2,3,7,11,19}", None)],
    ("C", 28, fundamental(28, 1), "a2"): [("generic p", None)],
    ("C", 28, fundamental(28, 1), "l3"): [("p = 19", 19), ("generic p", None)],
}


@dataclass
class SuiteRow:
    regime: str
    p: int
    factors: CompositionFactors = None
    error: str = None


def table_suite(type_label, rank, lam, power, regimes=None, table=None):
    """Composition factors for every prime regime of a Lie power target.

    Regimes whose modular data is missing are reported with an error
    string instead of factors.
    """
    key = (type_label, rank, tuple(lam), power)
    if regimes is None:
        if key not in TABLE_TARGETS:
            raise FactorError(f"no registered regimes for {key}")
        regimes = TABLE_TARGETS[key]
    if table is None and any(p is not None for _, p in regimes):
        table = load_modular()
    rows = []
    for label, p in regimes:
        if p is not None and not table.has(type_label, rank, p):
            rows.append(SuiteRow(label, p, error=f"no modular data for {type_label}{rank} at p={p}"))
            continue
        try:
            rows.append(SuiteRow(label, p, power_factors(type_label, rank, lam, power, p, table)))
        except ModularDataError as exc:
            rows.append(SuiteRow(label, p, error=str(exc)))
    return rows
