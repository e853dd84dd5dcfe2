import csv
import io
import json
import xml.etree.ElementTree as ET

import pytest

from oreindex.cli import main
from oreindex.scan import CSV_FIELDS, ScanConfig, csv_text, json_text, row_from_csv, run_scan


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_polygon_text_and_svg(capsys, tmp_path):
    svg = tmp_path / "p.svg"
    code, out, _ = run(capsys, "polygon", "x^5+3x^2+144", "-p", "2", "--phi", "x", "--svg", str(svg))
    assert code == 0
    assert "(0,4) - (2,0)" in out and "ind_phi = 2" in out
    assert ET.parse(svg).getroot().tag.endswith("svg")


def test_polygon_json(capsys):
    code, out, _ = run(capsys, "polygon", "x^5+7x^2+21", "-p", "3", "--phi", "x+7", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "oreindex.polygon/1"
    assert doc["principal_vertices"] == [[0, 4], [2, 1], [3, 0]]


def test_polygon_rejects_reducible_phi(capsys):
    code, _, err = run(capsys, "polygon", "x^5+1", "-p", "2", "--phi", "x^2+1")
    assert code == 2 and "irreducible" in err


@pytest.mark.parametrize("argv,code", [
    (["dedekind", "x^5+3x^2+144", "-p", "2"], 0),
    (["dedekind", "x^5+3x^2+144", "-p", "4"], 2),
    (["ore", "2x^5+1", "-p", "2"], 2),
    (["ore", "x^5 + y", "-p", "2"], 2),
    (["ore", "x^5+3x^2+144", "-p", "2"], 0),
    (["index-divisor", "x^5+3x^2+144"], 0),
    (["index-divisor", "x^5+1", "-p", "2"], 2),
    (["quintic", "0", "1"], 2),
    (["quintic", "3", "144"], 0),
    (["families", "mono", "-p", "3", "--r", "1", "--v", "2", "--u", "2", "--m", "1", "--a", "1", "--b", "1"], 0),
    (["families", "mono", "-p", "3", "--r", "1", "--v", "2", "--u", "2", "--m", "1", "--a", "3", "--b", "1"], 2),
    (["families", "dpr", "-p", "3", "--r", "2", "--m", "1", "--a", "81", "--b", "80"], 2),
    (["scan", "--a-range", "3..1"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_unknown_flag_is_input_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["ore", "x^2+1"])
    assert exc.value.code == 2


def test_internal_error_code(capsys, monkeypatch):
    import oreindex.cli as cli

    def boom(*_):
        raise RuntimeError("boom")

    monkeypatch.setattr(cli, "dedekind_divides_index", boom)
    code, _, err = run(capsys, "dedekind", "x^2+3", "-p", "2")
    assert code == 1 and "boom" in err


def test_undetermined_exit_code(capsys, monkeypatch):
    import oreindex.cli as cli
    from oreindex.ore import IndexDivisorVerdict

    monkeypatch.setattr(cli, "index_divisor_verdict", lambda F, p: IndexDivisorVerdict(p, "undetermined"))
    assert run(capsys, "index-divisor", "x^5+3x^2+144", "-p", "2")[0] == 3


def test_index_divisor_trace(capsys):
    code, out, _ = run(capsys, "index-divisor", "x^5+3x^2+144", "-p", "2", "--trace")
    assert code == 0 and "p = 2: yes" in out and "N_" in out


def test_quintic_json(capsys):
    code, out, _ = run(capsys, "quintic", "3", "144", "--json")
    doc = json.loads(out)
    assert doc["schema"] == "oreindex.quintic/1" and doc["consistent"]


def test_ore_json_schema(capsys):
    doc = json.loads(run(capsys, "ore", "x^5+3x^2+144", "-p", "2", "--json")[1])
    assert doc["schema"] == "oreindex.ore/1"
    assert doc["index_lower_bound"] == 2


def test_families_json(capsys):
    out = run(capsys, "families", "dpr", "-p", "3", "--r", "3", "--m", "1", "--a", "81",
              "--b", "80", "--json")[1]
    doc = json.loads(out)
    assert doc["common_index_divisor"] and doc["P1"] >= 4


def _scan_files(capsys, tmp_path, tag, *extra):
    paths = {k: tmp_path / f"{tag}.{k}" for k in ("csv", "json", "ledger")}
    code = main(["scan", "--a-range=-12..12", "--b-range=-40..40", "--csv", str(paths["csv"]),
                 "--json", str(paths["json"]), "--ledger", str(paths["ledger"]), *extra])
    capsys.readouterr()
    assert code == 0
    return {k: p.read_bytes() for k, p in paths.items()}


def test_scan_deterministic_across_jobs(capsys, tmp_path):
    one = _scan_files(capsys, tmp_path, "one", "--jobs", "1", "--seed", "5")
    two = _scan_files(capsys, tmp_path, "two", "--jobs", "2", "--seed", "5")
    assert one == two


def test_scan_csv_json_round_trip():
    res = run_scan(ScanConfig(a_range=(-6, 6), b_range=(-30, 30)))
    text = csv_text(res.rows)
    assert text.splitlines()[0] == ",".join(CSV_FIELDS)
    rows = [row_from_csv(r) for r in csv.DictReader(io.StringIO(text))]
    doc = json.loads(json_text(res))
    assert doc["schema"] == "oreindex.scan/1"
    for mine, theirs in zip(rows, doc["rows"]):
        for key in ("a", "b", "irreducible", "consistent", "t2_condition", "t3_condition", "notes"):
            assert mine[key] == theirs[key]
        for key in ("t2_engine", "t3_engine"):
            assert mine[key] == theirs[key]


def test_scan_config_file(capsys, tmp_path):
    cfg = tmp_path / "scan.cfg"
    out = tmp_path / "out.csv"
    cfg.write_text(f"# small\na_range = 1..3\nb_values = 144, 48, 72\nprimes = 2\ncsv = {out}\n")
    assert main(["scan", "--config", str(cfg)]) == 0
    capsys.readouterr()
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert {(r["a"], r["b"]) for r in rows} >= {("3", "144"), ("3", "48")}
    assert all(r["t3_condition"] == "" for r in rows)


@pytest.mark.parametrize("text", ["a_range = 5..1\n", "primes = 7\n", "colour = red\n", "jobs = two\n"])
def test_scan_config_errors(capsys, tmp_path, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    code, _, err = run(capsys, "scan", "--config", str(cfg))
    assert code == 2 and err.startswith("error:")


def test_missing_config_file(capsys, tmp_path):
    assert run(capsys, "scan", "--config", str(tmp_path / "nope.cfg"))[0] == 2
