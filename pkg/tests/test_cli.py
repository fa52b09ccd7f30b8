from __future__ import annotations

import json

from multicross.cli import main
from multicross.constructions import construct_family
from multicross.geometry import load_drawing, total_crossings


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_formula(capsys):
    code, out, err = run(capsys, "formula", "--family", "K122n", "--n", "5")
    assert code == 0
    assert "Z(5,5)+7 = 23" in out and "proved" in out and not err


def test_formula_conjectured_warns(capsys):
    code, out, err = run(capsys, "formula", "--family", "K24n", "--n", "3")
    assert code == 0 and "12" in out and "conjectur" in err


def test_formula_table(capsys):
    code, out, _ = run(capsys, "formula", "--table", "--family", "K1111n", "--max-n", "6")
    rows = out.strip().splitlines()
    assert rows[0] == "family,n,value,status"
    assert [int(r.split(",")[2]) for r in rows[1:]] == [1, 2, 5, 8, 13, 18]


def test_formula_usage(capsys):
    code, _, err = run(capsys, "formula", "--family", "K122n")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "formula", "--family", "K77n", "--n", "1")
    assert code == 2 and "invalid choice" in err


def test_construct_and_count(capsys, tmp_path):
    path, svg = tmp_path / "d.json", tmp_path / "d.svg"
    code, out, _ = run(capsys, "construct", "--family", "K122n", "--n", "4", "--out", str(path), "--svg", str(svg))
    assert code == 0 and "14 crossings" in out
    assert svg.read_bytes().startswith(b"<svg") or b"<svg" in svg.read_bytes()[:200]
    code, out, _ = run(capsys, "count", str(path))
    assert (code, out.strip()) == (0, "14")
    code, out, _ = run(capsys, "count", str(path), "--between", "XY+XU+YU", "Z")
    code2, out2, _ = run(capsys, "count", str(path), "--within", "XY+XU+YU")
    code3, out3, _ = run(capsys, "count", str(path), "--within", "Z")
    assert int(out) + int(out2) + int(out3) == 14
    code, out, _ = run(capsys, "count", str(path), "--between", "z1", "z2")
    assert code == 0 and int(out) >= 0


def test_count_selector_errors(capsys, tmp_path):
    path = tmp_path / "d.json"
    run(capsys, "construct", "--family", "K13n", "--n", "3", "--out", str(path))
    code, _, err = run(capsys, "count", str(path), "--between", "QQ", "Z")
    assert code == 2 and "selector" in err


def test_count_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "crossing-drawing/1", "parts": [["a"], ["b"]],\n "positions": {')
    code, _, err = run(capsys, "count", str(bad))
    assert code == 2 and "line 2" in err
    path = tmp_path / "d.json"
    run(capsys, "construct", "--family", "K13n", "--n", "2", "--out", str(path))
    obj = json.loads(path.read_text())
    obj["edges"][2]["bends"] = [["1/2", "x"]]
    bad.write_text(json.dumps(obj))
    code, _, err = run(capsys, "count", str(bad))
    assert code == 2 and "edges[2].bends[0][1]" in err


def test_count_not_good(capsys, tmp_path):
    path = tmp_path / "d.json"
    run(capsys, "construct", "--family", "K13n", "--n", "2", "--out", str(path))
    obj = json.loads(path.read_text())
    # pull a Z vertex onto the spine axis so edges pass through it
    obj["positions"]["z1"] = ["0", "0"]
    path.write_text(json.dumps(obj))
    code, _, err = run(capsys, "count", str(path))
    assert code == 2 and "not good" in err


def test_round_trip_all_families(tmp_path, capsys):
    for fam in ("K1111n", "K122n", "K1112n", "K14n", "K13n"):
        for n in range(1, 13):
            path = tmp_path / f"{fam}-{n}.json"
            run(capsys, "construct", "--family", fam, "--n", str(n), "--out", str(path))
            assert total_crossings(load_drawing(str(path))) == total_crossings(construct_family(fam, n))


def test_exact(capsys):
    code, out, _ = run(capsys, "exact", "--graph", "1,2,2,2")
    assert code == 0 and out.startswith("cr = 3")
    code, out, _ = run(capsys, "exact", "--graph", "1,2,2,2", "--json", "--threads", "2")
    rep = json.loads(out)
    assert rep["format"] == "crossing-report/1" and rep["k"] == 3 and len(rep["witness"]["pairs"]) == 3


def test_exact_budget(capsys):
    code, out, _ = run(capsys, "exact", "--graph", "1,1,1,2,2", "--budget", "1ms")
    assert code == 3 and "bounds only" in out
    code, _, _ = run(capsys, "exact", "--graph", "1,x")
    assert code == 2


def test_exact_deterministic_output(capsys):
    a = json.loads(run(capsys, "exact", "--graph", "1,3,3", "--json")[1])
    b = json.loads(run(capsys, "exact", "--graph", "1,3,3", "--json", "--threads", "3")[1])
    for rep in (a, b):
        rep.pop("seconds")
        rep.pop("nodes")
    assert a == b


def test_census(capsys, tmp_path):
    out_path = tmp_path / "c.json"
    code, out, _ = run(capsys, "census", "--graph", "2,3", "--out", str(out_path))
    assert code == 0 and out.startswith("6 classes")
    rep = json.loads(out_path.read_text())
    assert rep["format"] == "crossing-report/1" and len(rep["classes"]) == 6
    assert sorted(c["crossings"] for c in rep["classes"]) == [0, 1, 2, 2, 3, 3]
    code, _, err = run(capsys, "census", "--graph", "3,3,1")
    assert code == 2 and "too large" in err


def test_verify(capsys, tmp_path):
    rep_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--family", "K1111n", "--max-n", "6", "--report", str(rep_path))
    assert code == 0
    rep = json.loads(rep_path.read_text())
    assert rep["format"] == "crossing-report/1" and rep["pass"]
    assert [c["count"] for c in rep["checks"]] == [1, 2, 5, 8, 13, 18]
    assert [c.get("solver") for c in rep["checks"][:2]] == [1, 2]
    assert rep["census"]["k23_classes"] == 6


def test_verify_usage(capsys):
    code, _, err = run(capsys, "verify", "--max-n", "0", "--no-census")
    assert code == 2
