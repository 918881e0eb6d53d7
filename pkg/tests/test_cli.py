"""Command-line interface: formats, exit codes, determinism."""

import csv
import io
import json

from rghw.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


TABLE_ARGS = ("table", "--q", "2", "--k1", "2", "--k2", "3", "--workers", "1")


def test_table_pretty(capsys):
    code, out, err = run_cli(capsys, *TABLE_ARGS)
    assert code == 0 and err == ""
    assert "j=1" in out and "M=10" in out and "M=15" in out and "DISAGREE" not in out


def test_table_json_document(capsys):
    code, out, _ = run_cli(capsys, *TABLE_ARGS, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["spec"] == {
        "q": 2, "k1": 2, "k2": 3, "e1": 1, "e2": 1, "n1": 3, "n2": 7, "n": 21,
    }
    ms = [row["routes"]["bruteforce"]["m"] for row in doc["results"]]
    assert ms == [10, 15]
    assert all(row["agree"] for row in doc["results"])
    assert all("millis" not in row for row in doc["results"])


def test_table_timings_flag(capsys):
    code, out, _ = run_cli(capsys, *TABLE_ARGS, "--format", "json", "--timings")
    doc = json.loads(out)
    assert all("millis" in row for row in doc["results"])


def test_csv_and_json_carry_identical_numbers(capsys):
    _, out_json, _ = run_cli(capsys, *TABLE_ARGS, "--format", "json")
    _, out_csv, _ = run_cli(capsys, *TABLE_ARGS, "--format", "csv")
    doc = json.loads(out_json)
    rows = list(csv.DictReader(io.StringIO(out_csv)))
    flat = {
        (int(r["j"]), r["route"]): (
            int(r["m"]),
            int(r["n_j"]) if r["n_j"] else None,
            r["agree"] == "True",
        )
        for r in rows
    }
    for result in doc["results"]:
        for route, payload in result["routes"].items():
            m, n_j, agree = flat[(result["j"], route)]
            assert m == payload["m"]
            assert n_j == payload.get("n_j")
            assert agree == result["agree"]
    spec_row = rows[0]
    for key, value in doc["spec"].items():
        assert int(spec_row[key]) == value


def test_output_byte_stable(capsys):
    _, first, _ = run_cli(capsys, *TABLE_ARGS, "--format", "json", "--seed", "7")
    _, second, _ = run_cli(capsys, *TABLE_ARGS, "--format", "json", "--seed", "7")
    assert first == second
    _, v1, _ = run_cli(capsys, "verify", "--suite", "charsum", "--samples", "5",
                       "--seed", "3", "--format", "json", "--workers", "1")
    _, v2, _ = run_cli(capsys, "verify", "--suite", "charsum", "--samples", "5",
                       "--seed", "3", "--format", "json", "--workers", "1")
    assert v1 == v2


def test_bad_index_exits_2(capsys):
    code, out, err = run_cli(
        capsys, "table", "--q", "3", "--k1", "2", "--k2", "3", "--e2", "5",
        "--workers", "1",
    )
    assert code == 2
    payload = json.loads(err)
    assert payload["error"]["code"] == "BadIndex"


def test_cap_exits_3(capsys):
    code, _, err = run_cli(capsys, *TABLE_ARGS, "--cap", "5")
    assert code == 3
    assert json.loads(err)["error"]["code"] == "CapExceeded"


def test_cap_env_override(capsys, monkeypatch):
    monkeypatch.setenv("RGHW_CAP", "5")
    code, _, err = run_cli(capsys, *TABLE_ARGS)
    assert code == 3
    monkeypatch.delenv("RGHW_CAP")


def test_j_selection_and_validation(capsys):
    code, out, _ = run_cli(capsys, *TABLE_ARGS, "--j", "2", "--format", "json")
    doc = json.loads(out)
    assert [r["j"] for r in doc["results"]] == [2]
    code2, _, err = run_cli(capsys, *TABLE_ARGS, "--j", "9")
    assert code2 == 2 and json.loads(err)["error"]["code"] == "RangeError"


def test_explicit_closed_form_on_foreign_spec_exits_2(capsys):
    code, _, err = run_cli(
        capsys, "table", "--q", "3", "--k1", "2", "--k2", "2", "--e2", "2",
        "--routes", "closed_form", "--workers", "1",
    )
    assert code == 2
    assert json.loads(err)["error"]["code"] == "HypothesisViolated"


def test_routes_subset(capsys):
    code, out, _ = run_cli(
        capsys, *TABLE_ARGS, "--routes", "dual_count", "--format", "json"
    )
    doc = json.loads(out)
    assert code == 0
    for row in doc["results"]:
        assert set(row["routes"]) == {"dual_count"}


def test_gauss_gf5(capsys):
    code, out, _ = run_cli(capsys, "gauss", "--size", "5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["rows"]) == 4
    nontrivial = [r for r in doc["rows"] if r["lam"] != 0]
    assert all(abs(r["modulus"] - 5**0.5) < 1e-9 for r in nontrivial)


def test_gauss_gf2_single_trivial_character(capsys):
    code, out, _ = run_cli(
        capsys, "gauss", "--size", "2", "--beta", "0", "--format", "json"
    )
    doc = json.loads(out)
    assert len(doc["rows"]) == 1
    assert doc["rows"][0]["re"] == 1.0 and doc["rows"][0]["im"] == 0.0


def test_gauss_gf9_trivial_at_zero(capsys):
    code, out, _ = run_cli(
        capsys, "gauss", "--size", "9", "--lam", "0", "--beta", "0",
        "--format", "json",
    )
    doc = json.loads(out)
    assert doc["rows"] == [
        {"lam": 0, "beta": 0, "re": 8.0, "im": 0.0, "modulus": 8.0}
    ]


def test_gauss_rejects_non_prime_power(capsys):
    code, _, err = run_cli(capsys, "gauss", "--size", "12")
    assert code == 2
    assert json.loads(err)["error"]["code"] == "NonPrime"


def test_verify_single_suite(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--suite", "gauss", "--workers", "1"
    )
    assert code == 0
    assert "gauss: PASS" in out and "all suites passed" in out


def test_bench_runs(capsys):
    code, out, _ = run_cli(
        capsys, "bench", "--q", "2", "--k1", "2", "--k2", "3", "--j", "1",
        "--routes", "closed_form", "--repeat", "2", "--format", "json",
        "--workers", "1",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"][0]["m"] == 10 and doc["rows"][0]["best_ms"] >= 0


def test_out_file(tmp_path, capsys):
    target = tmp_path / "table.json"
    code, out, _ = run_cli(capsys, *TABLE_ARGS, "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["spec"]["n"] == 21
