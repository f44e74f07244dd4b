import csv
import io
import json
import subprocess
import sys

from cayley_spectra import corpus
from cayley_spectra.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_z5(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "cyclic:5", "--set", "1,4", "--kind", "cayley_sum")
    rep = json.loads(out)
    assert code == 0
    assert rep["cheeger"]["h"] == "1/2" and rep["graphs"]["bipartite"] is False
    assert {c["check"]: c["verdict"] for c in rep["checks"]}["theorem_main"] == "pass"


def test_analyze_z4_bipartite(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "cyclic:4", "--set", "1,3")
    rep = json.loads(out)
    assert code == 0 and rep["graphs"]["bipartite"] is True
    assert {c["check"]: c["verdict"] for c in rep["checks"]}["theorem_main"] == "vacuous"


def test_analyze_csv_and_out(tmp_path, capsys):
    out_file = tmp_path / "r.csv"
    code, out, _ = run(capsys, "analyze", "--family", "cyclic:5", "--set", "1,4", "--format", "csv",
                       "--out", str(out_file))
    assert code == 0 and out == ""
    head, checks = out_file.read_text().split("\n\n")
    summary = next(csv.DictReader(io.StringIO(head)))
    assert summary["cheeger.h"] == "1/2"
    assert any(row["check"] == "theorem_main" for row in csv.DictReader(io.StringIO(checks)))


def test_analyze_set_file(tmp_path, capsys):
    s = tmp_path / "s.txt"
    s.write_text("1 -1\n")
    code, out, _ = run(capsys, "analyze", "--family", "cyclic:5", "--set-file", str(s))
    assert code == 0 and json.loads(out)["instance"]["set"] == [1, 4]


def test_non_associative_table_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.tbl"
    bad.write_text("5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n")
    code, _, err = run(capsys, "analyze", "--group-file", str(bad), "--set", "1")
    assert code == 2 and "NotAGroup" in err and "non-associative" in err


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "analyze", "--family", "cyclic:6", "--set", "1,2")[0] == 3
    assert run(capsys, "analyze", "--family", "dihedral:4", "--set", "1,3,4")[0] == 3
    assert run(capsys, "analyze", "--family", "symmetric:5", "--set", "1,2,6,24", "--kind", "cayley")[0] == 4
    assert run(capsys, "analyze", "--family", "cyclic:5", "--set", "1,4", "--epsilon", "3")[0] == 3
    assert run(capsys, "analyze", "--family", "wat:3", "--set", "1")[0] == 2
    assert run(capsys, "analyze", "--group-file", str(tmp_path / "missing"), "--set", "1")[0] == 2
    assert run(capsys, "gen", "--family", "cyclic:4", "--d", "9")[0] == 5


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "--family", "cyclic:7", "--d", "2", "--seed", "0")
    s = json.loads(out)["set"]
    assert code == 0 and len(s) == 2 and sum(s) == 7
    code, out, _ = run(capsys, "gen", "--family", "cyclic:7", "--d", "2", "--format", "csv")
    assert out.strip() == ",".join(map(str, s))
    code, _, err = run(capsys, "gen", "--family", "cyclic:4", "--d", "2", "--require", "non_bipartite")
    assert code == 5 and "infeasible" in err


def test_scan_cycles(capsys):
    code, out, _ = run(capsys, "scan", "--family", "cyclic:3..15", "--set", "1,-1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 13
    assert tuple(rows[0]) == corpus.SCAN_COLUMNS
    for row in rows:
        if row["bipartite"] == "false":
            assert float(row["margin"]) > 0
            assert float(row["tightness_ratio"]) >= 1
        else:
            assert row["main_verdict"] == "vacuous"


def test_scan_random_rows_and_errors(capsys):
    code, out, _ = run(capsys, "scan", "--family", "cyclic:4;dihedral:3;bogus:2", "--d", "2", "--count", "2",
                       "--seed", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert rows[-1]["family"] == "bogus:2" and rows[-1]["error"].startswith("ParseError")
    assert all(r["error"] == "" for r in rows if r["family"] == "cyclic:4")


def test_scan_is_deterministic(capsys):
    argv = ("scan", "--family", "dihedral:3..5", "--d", "3", "--count", "2", "--seed", "0")
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_verify_empty_manifest(tmp_path, capsys):
    manifest = tmp_path / "empty.json"
    manifest.write_text(json.dumps({"schema_version": 1, "instances": []}))
    code, out, err = run(capsys, "verify", str(manifest))
    assert code == 0 and json.loads(out)["totals"] == {"pass": 0, "fail": 0, "vacuous": 0}
    assert "empty manifest" in err


def test_verify_bad_manifest(tmp_path, capsys):
    manifest = tmp_path / "bad.json"
    manifest.write_text("{not json")
    assert run(capsys, "verify", str(manifest))[0] == 2


def test_verify_corrupted_fixture(tmp_path, capsys):
    instances = [corpus.Instance("cyclic:5", (1, 4), "cayley_sum", {"h": "1/2", "bipartite": False}),
                 corpus.Instance("cyclic:4", (1, 3), "cayley_sum", {"h": "1/3"})]
    manifest = tmp_path / "m.json"
    corpus.save_manifest(instances, manifest)
    code, out, err = run(capsys, "verify", str(manifest))
    summary = json.loads(out)
    assert code == 1
    assert summary["totals"]["fail"] == 1
    assert summary["checks"]["fixture"] == {"pass": 1, "fail": 1, "vacuous": 0}
    assert summary["failures"][0]["witness"]["h"] == {"expected": "1/3", "actual": "1"}
    assert "FAIL fixture" in err


def test_corpus_command(tmp_path, capsys):
    out_file = tmp_path / "c.json"
    assert run(capsys, "corpus", "--out", str(out_file))[0] == 0
    loaded = corpus.load_manifest(out_file)
    assert len(loaded) >= 200 and len({i.id for i in loaded}) == len(loaded)
    assert any(i.set == (1, 8, 15) for i in loaded)


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "cayley_spectra.cli", "analyze", "--family", "cyclic:3",
                           "--set", "1,2", "--kind", "cayley"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["cheeger"]["h"] == "2"
