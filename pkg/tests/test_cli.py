import csv
import io
import json

import pytest

from critlab.cli import main


@pytest.fixture
def specs(tmp_path):
    files = {
        "h3r": {"dim": 4, "label": "H3xR", "brackets": [[1, 2, 3, 1.0]]},
        "su2": {"dim": 4, "brackets": [[2, 3, 1, 1.0], [1, 3, 2, -1.0], [1, 2, 3, 2.0]]},
        "bad": {"dim": 4, "brackets": [[1, 2]]},
    }
    out = {}
    for name, data in files.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(data))
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_check_heisenberg_times_line(capsys, specs):
    code, out, _ = run(capsys, "check", specs["h3r"])
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == 1 and rep["command"] == "check"
    item = rep["items"][0]
    assert item["kind"] == "Unique" and item["t"] == pytest.approx(-3.0)
    assert item["energy"] == pytest.approx(0.0, abs=1e-14)
    assert item["soliton"] and item["soliton_lambda"] == pytest.approx(-1.5)


def test_check_not_critical_exit_code(capsys, specs):
    code, out, _ = run(capsys, "check", specs["su2"])
    rep = json.loads(out)
    assert code == 1 and rep["items"][0]["kind"] == "NotCritical" and rep["failures"]


def test_check_at_given_t(capsys, specs):
    assert run(capsys, "check", specs["h3r"], "--t", "-3")[0] == 0
    assert run(capsys, "check", specs["h3r"], "--t", "-1")[0] == 1


@pytest.mark.parametrize("argv, needle", [
    (["check", "/no/such/file.json"], "file not found"),
    (["verify", "--family", "X.9"], "UnknownFamily"),
    (["symbolic", "--family", "H.5"], "NotSymbolicallyVerifiable"),
])
def test_errors_are_one_line(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2 and needle in err and err.count("\n") == 1


def test_parse_error(capsys, specs):
    code, _, err = run(capsys, "solve-t", specs["bad"])
    assert code == 2 and "SpecParseError" in err


def test_small_commands(capsys, specs):
    code, out, _ = run(capsys, "solve-t", specs["h3r"])
    assert code == 0 and json.loads(out)["items"][0]["t"] == pytest.approx(-3)
    code, out, _ = run(capsys, "energy", specs["h3r"], "--t", "1")
    assert json.loads(out)["items"][0]["energy"] == pytest.approx(1.0)
    code, out, _ = run(capsys, "invariants", specs["h3r"])
    assert json.loads(out)["items"][0]["fingerprint"]["r3"] == pytest.approx(-8)
    code, out, _ = run(capsys, "soliton", specs["h3r"])
    item = json.loads(out)["items"][0]
    assert item["lam"] == pytest.approx(-1.5) and item["critical_ok"]


def test_verify_and_determinism(capsys):
    code, out1, _ = run(capsys, "verify", "--family", "H.5", "--samples", "4", "--seed", "3")
    code2, out2, _ = run(capsys, "verify", "--family", "H.5", "--samples", "4", "--seed", "3", "--threads", "2")
    assert code == code2 == 0 and out1 == out2
    rep = json.loads(out1)
    assert rep["seed"] == 3 and len(rep["items"]) == 4 and all(i["pass"] for i in rep["items"])


def test_report_csv(capsys, tmp_path):
    out_file = tmp_path / "r.csv"
    code, _, _ = run(capsys, "report", "--format", "csv", "--samples", "1", "--out", str(out_file))
    assert code == 0
    rows = list(csv.reader(io.StringIO(out_file.read_text())))
    head = rows[0]
    assert head[0] == "id" and head[-9:] == ["t", "residual", "energy", "soliton", "r1", "r2", "r3", "r4", "pass"]
    assert {r[0] for r in rows[1:]} >= {"SYM.1", "R.7", "SOLV.4"}
    assert all(r[-1] == "true" for r in rows[1:])


def test_symbolic_and_list(capsys):
    code, out, _ = run(capsys, "symbolic", "--family", "H.2")
    assert code == 0 and json.loads(out)["items"][0]["passed"]
    code, out, _ = run(capsys, "list-families")
    assert code == 0 and "R.5" in out
    code, out, _ = run(capsys, "list-families", "--json")
    assert len(json.loads(out)["families"]) == 28


def test_search_command(capsys):
    code, out, _ = run(capsys, "search", "--template", "R_diag", "--starts", "4", "--threads", "1")
    rep = json.loads(out)
    assert code == 0 and rep["items"][0]["starts"] == 4
