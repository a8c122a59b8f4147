"""Run configuration, weight syntax and deterministic report emission.

A report is a plain dict of JSON-native values:

    {"command": str, "config": {...}, "params": {...},
     "results": {...}, "checks": [{"name": str, "passed": bool}, ...],
     "status": "pass" | "fail"}

``emit(report, "json")`` is sorted, indented JSON and ``parse_report``
inverts it exactly.  ``emit(report, "text")`` is the human-readable view.
"""

import json
import re
from dataclasses import asdict, dataclass

FORMATS = ("text", "json")


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    retries: int = 20
    samples: int = 200
    cache_dir: str = None
    format: str = "text"
    jobs: int = 1

    def __post_init__(self):
        if not -2 ** 63 <= self.seed < 2 ** 63:
            raise ValueError("seed must be a 64-bit integer")
        if self.retries < 1 or self.samples < 0 or self.jobs < 1:
            raise ValueError("retries and jobs must be positive, samples nonnegative")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")

    def to_dict(self):
        return asdict(self)


# -- weights ---------------------------------------------------------------------

_TERM = re.compile(r"^(\d*)\s*(?:λ|l|L|lambda)_?(\d+)$")


def parse_weight(text, rank):
    """Coordinates from '1,0,0' or fundamental-weight sums like 'λ1+λ7', '2l1', '0'."""
    text = text.strip().replace("₀", "0").translate(str.maketrans("₁₂₃₄₅₆₇₈₉", "123456789"))
    if not text:
        raise ValueError("empty weight")
    if "," in text or re.fullmatch(r"\d+", text) and rank == 1:
        try:
            coords = tuple(int(c) for c in text.split(","))
        except ValueError:
            raise ValueError(f"bad weight coordinates {text!r}") from None
        if len(coords) != rank:
            raise ValueError(f"weight {text!r} has {len(coords)} coordinates, expected {rank}")
        return coords
    if text == "0":
        return (0,) * rank
    coords = [0] * rank
    for term in text.replace(" ", "").split("+"):
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"bad weight term {term!r}")
        k, i = int(m.group(1) or 1), int(m.group(2))
        if not 1 <= i <= rank:
            raise ValueError(f"fundamental weight index {i} out of range 1..{rank}")
        coords[i - 1] += k
    return tuple(coords)


def format_weight(w):
    """'λ1+2λ7' style name; '0' for the zero weight."""
    terms = [(f"{c}" if c != 1 else "") + f"λ{i + 1}" for i, c in enumerate(w) if c]
    return "+".join(terms) if terms else "0"


# -- emission --------------------------------------------------------------------


def make_report(command, config, params, results, checks):
    checks = [{"name": n, "passed": bool(ok)} for n, ok in checks]
    return {"command": command, "config": config.to_dict(), "params": params, "results": results,
            "checks": checks, "status": "pass" if all(c["passed"] for c in checks) else "fail"}


def emit(report, fmt="text"):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(text):
    return json.loads(text)


def _kv(d):
    return " ".join(f"{k}={'-' if v is None else v}" for k, v in sorted(d.items()))


def _table(header, rows):
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return ["  " + "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]


def _factor_lines(res):
    lines = []
    for row in res["rows"]:
        lines.append(f"regime {row['regime']} ({row['oracle']})")
        if row.get("error"):
            lines.append(f"  error: {row['error']}")
            continue
        lines += _table(["weight", "dim", "mult"],
                        [[e["name"], e["dim"], e["mult"]] for e in row["entries"]])
        lines.append(f"  total dim {row['total_dim']}, multiplicity free: "
                     f"{'yes' if row['multiplicity_free'] else 'no'}")
    return lines


def _module_lines(res):
    lines = [f"module {res['module']} dim {res['dim']}"]
    if "factors" in res:
        lines += _table(["dim", "class"], [[f["dim"], f["class"]] for f in res["factors"]])
    if "lattice" in res:
        lat = res["lattice"]
        lines.append(f"lattice shape {lat['shape']}, node dims {lat['dims']}")
        lines += [f"  {lat['dims'][a]} < {lat['dims'][b]}  (node {a} < node {b})" for a, b in lat["edges"]]
        if "top_quotient_isomorphic_to_base" in res:
            lines.append(f"quotient by largest maximal submodule isomorphic to base module: "
                         f"{'yes' if res['top_quotient_isomorphic_to_base'] else 'no'}")
    if "forms" in res:
        lines.append(f"invariant forms: {res['forms']['summary']}")
    return lines


def _pgroup_lines(res):
    s = res["structure"]
    lines = [f"group {s['kind']} d={s['d']} p={s['p']} quotient dim {s['quotient_dim']}"]
    lines.append(f"  order p^{s['order_exponent']}, rank {s['rank']}, exponent {s['exponent']}")
    lines.append(f"  nilpotency class {s['nilpotency_class']}, exponent-p class {s['exponent_p_class']}")
    lines.append(f"  derived dim {s['derived_dim']}, gamma3 dim {s['gamma3_dim']}, "
                 f"Frattini dim {s['frattini_dim']}")
    return lines


_RENDERERS = {"factors": _factor_lines, "module": _module_lines, "pgroup": _pgroup_lines}


def render_text(report):
    lines = [f"liepowers {report['command']}",
             f"config: {_kv(report['config'])}",
             f"params: {_kv(report['params'])}"]
    lines += _RENDERERS[report["command"]](report["results"])
    if report["checks"]:
        lines.append("checks:")
        lines += [f"  {'PASS' if c['passed'] else 'FAIL'} {c['name']}" for c in report["checks"]]
    lines.append(f"status: {report['status']}")
    return "\n".join(lines) + "\n"
