import json

import numpy as np
import pytest

from liepowers import roots
from liepowers.cache import cache_path, load_or_compute, read_entry, write_entry
from liepowers.cli import main
from liepowers.report import RunConfig, emit, format_weight, make_report, parse_report, parse_weight


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, (parse_report(out) if out else None), err


def entries(report, k=0):
    return [(e["name"], e["dim"], e["mult"]) for e in report["results"]["rows"][k]["entries"]]


@pytest.mark.parametrize("text,rank,expected", [
    ("1,0", 2, (1, 0)), ("λ1", 2, (1, 0)), ("l2", 2, (0, 1)), ("λ₁+λ₇", 7, (1, 0, 0, 0, 0, 0, 1)),
    ("2λ1+λ2", 2, (2, 1)), ("0", 3, (0, 0, 0)), ("3", 1, (3,)), ("lambda_1 + L3", 3, (1, 0, 1)),
])
def test_parse_weight(text, rank, expected):
    assert parse_weight(text, rank) == expected


@pytest.mark.parametrize("text,rank", [("1,0,0", 2), ("λ3", 2), ("mu1", 2), ("", 2), ("1,a", 2)])
def test_parse_weight_errors(text, rank):
    with pytest.raises(ValueError):
        parse_weight(text, rank)


def test_format_weight():
    assert format_weight((1, 0, 2)) == "λ1+2λ3"
    assert format_weight((0, 0)) == "0"


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(seed=2 ** 64)
    with pytest.raises(ValueError):
        RunConfig(format="xml")


def test_report_round_trip():
    rep = make_report("pgroup", RunConfig(seed=-3), {"d": 3}, {"structure": {"kind": "gamma2", "d": 3, "p": 5,
                      "quotient_dim": 0, "order_exponent": 6, "rank": 3, "exponent": 5, "nilpotency_class": 2,
                      "exponent_p_class": 2, "derived_dim": 3, "gamma3_dim": 0, "frattini_dim": 3}},
                      [("a", True), ("b", False)])
    assert parse_report(emit(rep, "json")) == rep
    assert rep["status"] == "fail"
    assert "FAIL b" in emit(rep, "text")


def test_factors_g2(capsys):
    code, rep, _ = run_json(capsys, "factors", "--type", "G", "--rank", "2", "--weight", "1,0",
                            "--prime-mode", "generic", "--power", "a2")
    assert code == 0
    assert entries(rep) == [("λ2", 14, 1), ("λ1", 7, 1)]
    assert rep["results"]["rows"][0]["multiplicity_free"]


def test_factors_e7_p19_l3(capsys):
    code, rep, _ = run_json(capsys, "factors", "--type", "E", "--rank", "7", "--weight", "λ7",
                            "--prime-mode", "p=19", "--power", "l3")
    assert code == 0
    assert ("λ7", 56, 2) in entries(rep)


def test_factors_table_mode(capsys):
    code, rep, _ = run_json(capsys, "factors", "--type", "F", "--rank", "4", "--weight", "λ1",
                            "--prime-mode", "table", "--power", "a2")
    assert code == 0
    assert [r["regime"] for r in rep["results"]["rows"]] == ["p = 3", "p > 3"]
    assert entries(rep, 0) == [("λ2", 1222, 1), ("λ1", 52, 2)]


def test_factors_report_is_deterministic(capsys):
    argv = ("factors", "--type", "G", "--rank", "2", "--weight", "λ2", "--power", "a2", "--seed", "11")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_factors_errors(capsys):
    assert run(capsys, "factors", "--type", "E", "--rank", "7", "--weight", "λ7", "--prime-mode", "p=13")[0] == 2
    assert run(capsys, "factors", "--type", "G", "--rank", "2", "--weight", "λ3")[0] == 2
    assert run(capsys, "factors", "--type", "G", "--rank", "2", "--weight", "1,0", "--prime-mode", "p3")[0] == 2
    assert run(capsys, "factors", "--type", "G", "--rank", "9", "--weight", "λ1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["factors", "--type", "G"])
    assert exc.value.code == 2


def test_factors_bad_modular_file(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("G 2 3 : 1,0 -> 1,0 * 1 ; 0,0 * 5\n")
    code, _, err = run(capsys, "factors", "--type", "G", "--rank", "2", "--weight", "λ1",
                       "--prime-mode", "p=3", "--modular-data", str(path))
    assert code == 2 and "error" in err


@pytest.mark.parametrize("p,shape,dims", [(5, "multiplicity-free", [0, 7, 14, 21]),
                                          (3, "uniserial", [0, 7, 14, 21])])
def test_module_lattice(capsys, p, shape, dims):
    code, rep, _ = run_json(capsys, "module", "--g2", str(p), "--task", "lattice")
    assert code == 0
    lat = rep["results"]["lattice"]
    assert lat["shape"] == shape and lat["dims"] == dims
    if p == 5:
        assert lat["edges"] == [[0, 1], [0, 2], [1, 3], [2, 3]]
    assert rep["results"]["top_quotient_isomorphic_to_base"]


def test_module_forms(capsys):
    code, rep, _ = run_json(capsys, "module", "--g2", "7", "--task", "forms")
    assert code == 0 and rep["results"]["forms"]["summary"] == "1-dim, symmetric, non-degenerate"


def test_module_validation_failure_exit_code(capsys, tmp_path):
    cyc = np.roll(np.eye(7, dtype=np.int64), 1, axis=1)
    path = tmp_path / "cyc.gens"
    path.write_text("7 5 1\n" + "\n".join(" ".join(map(str, r)) for r in cyc) + "\n")
    code, rep, _ = run_json(capsys, "module", "--gens", str(path), "--task", "factors", "--validate-g2")
    assert code == 1 and rep["status"] == "fail"


def test_module_usage_errors(capsys, tmp_path):
    assert run(capsys, "module", "--task", "forms")[0] == 2
    assert run(capsys, "module", "--g2", "3", "--task", "factors", "--on", "l3")[0] == 2
    bad = tmp_path / "bad.gens"
    bad.write_text("2 5 1\n1 1\n1 1\n")
    assert run(capsys, "module", "--gens", str(bad), "--task", "forms")[0] == 2


@pytest.mark.parametrize("build,exponent", [("optimal-g2-normalizer", 5), ("optimal-g2-self", 25)])
def test_pgroup_optimal(capsys, build, exponent):
    code, rep, _ = run_json(capsys, "pgroup", "--d", "7", "--p", "5", "--build", build, "--samples", "30")
    s = rep["results"]["structure"]
    assert code == 0
    assert (s["order_exponent"], s["nilpotency_class"], s["exponent"], s["rank"]) == (14, 2, exponent, 7)


def test_pgroup_gamma3(capsys):
    code, rep, _ = run_json(capsys, "pgroup", "--d", "3", "--p", "5", "--build", "gamma3", "--samples", "30")
    s = rep["results"]["structure"]
    assert code == 0 and (s["order_exponent"], s["nilpotency_class"]) == (14, 3)


def test_pgroup_subspace_file(capsys, tmp_path):
    path = tmp_path / "u.txt"
    path.write_text("# one relation\n1 0 0\n")
    code, rep, _ = run_json(capsys, "pgroup", "--d", "3", "--p", "5", "--build", "gamma2", "--subspace", str(path))
    assert code == 0 and rep["results"]["structure"]["order_exponent"] == 5


def test_pgroup_errors(capsys, tmp_path):
    assert run(capsys, "pgroup", "--d", "3", "--p", "3", "--build", "gamma3")[0] == 2
    assert run(capsys, "pgroup", "--d", "3", "--p", "4", "--build", "gamma2")[0] == 2
    assert run(capsys, "pgroup", "--d", "5", "--p", "5", "--build", "optimal-g2-self")[0] == 2
    path = tmp_path / "u.txt"
    path.write_text("1 0\n")
    assert run(capsys, "pgroup", "--d", "3", "--p", "5", "--build", "gamma2", "--subspace", str(path))[0] == 2


def test_cache_round_trip_and_corruption(tmp_path):
    calls = []

    def compute():
        calls.append(1)
        return {"x": [1, 2]}

    assert load_or_compute(tmp_path, "demo", "G2", (1, 0), compute) == {"x": [1, 2]}
    assert load_or_compute(tmp_path, "demo", "G2", (1, 0), compute) == {"x": [1, 2]}
    assert len(calls) == 1
    path = cache_path(tmp_path, "demo", "G2", (1, 0))
    entry = json.loads(path.read_text())
    entry["payload"] = {"x": [9]}
    path.write_text(json.dumps(entry))
    assert read_entry(path, ["demo", "G2", [1, 0]]) is None
    assert load_or_compute(tmp_path, "demo", "G2", (1, 0), compute) == {"x": [1, 2]}
    assert len(calls) == 2
    path.write_text("not json")
    assert load_or_compute(tmp_path, "demo", "G2", (1, 0), compute) == {"x": [1, 2]}
    assert not [f for f in tmp_path.iterdir() if f.name.startswith(".tmp")]


def test_cache_key_mismatch_is_a_miss(tmp_path):
    path = tmp_path / "entry.json"
    write_entry(path, ["a"], [1])
    assert read_entry(path, ["a"]) == [1]
    assert read_entry(path, ["b"]) is None


def test_freudenthal_cache_matches_direct(tmp_path):
    roots.set_cache_dir(tmp_path)
    try:
        rs = roots.build_root_system("F", 4)
        cached = rs.freudenthal((0, 0, 0, 1))
        again = rs.freudenthal((0, 0, 0, 1))
        assert any(f.name.startswith("freudenthal-") for f in tmp_path.iterdir())
        assert any(f.name.startswith("orbit-") for f in tmp_path.iterdir())
    finally:
        roots.set_cache_dir(None)
    assert cached == again == rs.freudenthal((0, 0, 0, 1))
    assert sum(rs.weyl_module_weights((0, 0, 0, 1)).values()) == 26
