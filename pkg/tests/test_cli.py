import csv
import io
import json
import math
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from paulivol import FR_TOTAL, RegionExpr, contains, EigenvalueTriple

jsonschema = pytest.importorskip("jsonschema")

ROOT = Path(__file__).resolve().parents[1]
SCHEMA_DIR = ROOT / "src" / "paulivol" / "schemas"


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "paulivol", *args],
        capture_output=True,
        text=True,
    )


def _schema(name):
    return json.loads((SCHEMA_DIR / name).read_text())


def test_version_flag():
    proc = run_cli("--version")
    assert proc.returncode == 0
    assert "paulivol" in proc.stdout


def test_classify_json():
    proc = run_cli("classify", "0.5", "0.5", "0.5", "--format", "json")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, _schema("output.schema.json"))
    assert doc["command"] == "classify"
    regions = doc["results"]["regions"]
    assert regions == {
        "PT": True,
        "CPT": True,
        "EBC": False,
        "TLG": True,
        "PDIV": True,
        "CPDIV": True,
    }
    assert math.fsum(doc["results"]["p"]) == pytest.approx(1.0, abs=1e-12)
    assert min(doc["results"]["choi_spectrum"]) >= 0.0


def test_classify_text():
    proc = run_cli("classify", "0.5", "0.5", "0.5")
    assert proc.returncode == 0
    assert "CPT: true" in proc.stdout
    assert "EBC: false" in proc.stdout


def test_classify_csv():
    proc = run_cli("classify", "1", "0", "0", "--format", "csv")
    assert proc.returncode == 0
    rows = list(csv.reader(io.StringIO(proc.stdout)))
    assert rows[0] == ["quantity", "value"]
    record = {row[0]: row[1:] for row in rows[1:]}
    assert record["EBC"] == ["true"]


def test_volume_exact_json():
    proc = run_cli("volume", "--region", "CPT", "--format", "json")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, _schema("output.schema.json"))
    assert doc["results"]["method"] == "exact"
    assert doc["results"]["value"] == [1, 3]


def test_volume_exact_text():
    proc = run_cli("volume", "--region", "CPT")
    assert proc.returncode == 0
    assert "1/3" in proc.stdout
    assert "0.3333" in proc.stdout


def test_volume_mc_deterministic():
    args = (
        "volume", "--region", "CPT", "--method", "mc",
        "--samples", "20000", "--seed", "7", "--format", "json",
    )
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    doc = json.loads(first.stdout)
    assert doc["results"]["samples"] == 20000
    err = doc["results"]["std_error"]
    assert abs(doc["results"]["value"] - 1 / 3) < 4 * err


def test_volume_fr_full_region():
    proc = run_cli(
        "volume", "--region", "CPT", "--method", "fr",
        "--samples", "1000", "--format", "json",
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["results"]["method"] == "mc-fr"
    assert doc["results"]["value"] == FR_TOTAL


def test_out_flag_writes_file(tmp_path):
    out = tmp_path / "vol.json"
    proc = run_cli("volume", "--region", "PT", "--format", "json", "--out", str(out))
    assert proc.returncode == 0
    assert proc.stdout == ""
    doc = json.loads(out.read_text())
    assert doc["results"]["value"] == [1, 1]


def test_mesh_document():
    proc = run_cli("mesh", "--region", "CPT,EBC", "--format", "json")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, _schema("mesh.schema.json"))
    assert doc["region"] == "CPT,EBC"
    assert len(doc["pieces"][0]["vertices"]) == 6


def test_sample_csv_members_and_determinism():
    args = ("sample", "--region", "CPT", "-n", "3", "--seed", "5")
    first = run_cli(*args)
    assert first.returncode == 0
    rows = list(csv.reader(io.StringIO(first.stdout)))
    assert rows[0] == ["l1", "l2", "l3"]
    assert len(rows) == 4
    expr = RegionExpr.parse("CPT")
    for row in rows[1:]:
        lam = EigenvalueTriple(*(float(x) for x in row))
        assert contains(expr, lam)
    assert run_cli(*args).stdout == first.stdout


def test_sample_json():
    proc = run_cli(
        "sample", "--region", "CPT,EBC", "-n", "4", "--seed", "1",
        "--format", "json",
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, _schema("output.schema.json"))
    assert len(doc["results"]["rows"]) == 4


def test_evolve_target_with_a_negative_rate():
    # this triple needs a transiently negative rate, yet the constant
    # schedule still lands on it exactly
    proc = run_cli(
        "evolve", "--target", "0.9", "0.8", "0.95", "--t-star", "2.0",
        "--format", "json",
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, _schema("output.schema.json"))
    assert doc["results"]["max_error"] < 1e-12
    assert doc["results"]["semigroup_reachable"] is False
    assert min(doc["results"]["rates"]) < 0
    reached = doc["results"]["reached"]
    assert reached == pytest.approx([0.9, 0.8, 0.95], abs=1e-12)


def test_evolve_target_semigroup_reachable():
    proc = run_cli(
        "evolve", "--target", "0.9", "0.85", "0.8", "--format", "json",
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["results"]["semigroup_reachable"] is True
    assert min(doc["results"]["rates"]) >= 0


def _write_schedule(tmp_path, segments):
    path = tmp_path / "schedule.json"
    path.write_text(json.dumps(segments))
    return str(path)


def test_evolve_single_time(tmp_path):
    path = _write_schedule(
        tmp_path, [{"duration": 1.0, "rates": [1.0, 1.0, 1.0]}]
    )
    proc = run_cli("evolve", "--schedule", path, "--t", "1.0", "--format", "json")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, _schema("output.schema.json"))
    (point,) = doc["results"]["trajectory"]
    assert point["eigenvalues"] == pytest.approx([math.exp(-2.0)] * 3, rel=1e-14)
    assert point["regions"]["CPT"] is True


def test_evolve_trajectory_csv(tmp_path):
    path = _write_schedule(
        tmp_path, [{"duration": 2.0, "rates": [0.0, 0.0, 0.5]}]
    )
    proc = run_cli("evolve", "--schedule", path, "--steps", "5", "--format", "csv")
    assert proc.returncode == 0
    rows = list(csv.reader(io.StringIO(proc.stdout)))
    assert rows[0] == ["t", "l1", "l2", "l3", "PT", "CPT", "EBC", "TLG", "PDIV", "CPDIV"]
    assert len(rows) == 6
    assert float(rows[-1][0]) == 2.0
    assert all(row[3] == "1.0" for row in rows[1:])


def test_exit_codes_unsupported_combinations():
    assert run_cli("volume", "--region", "CPT,CPDIV").returncode == 1
    assert run_cli("volume", "--region", "TLG").returncode == 1
    assert run_cli("volume", "--region", "PT", "--method", "fr").returncode == 1
    assert run_cli("mesh", "--region", "CPDIV").returncode == 1


def test_exit_codes_malformed_input(tmp_path):
    assert run_cli("classify", "0.5", "abc", "0.5").returncode == 2
    assert run_cli("volume", "--region", "CPT,BOGUS").returncode == 2
    assert run_cli("volume", "--region", "CPT", "--method", "bogus").returncode == 2
    assert run_cli("evolve", "--t", "1.0").returncode == 2
    missing = str(tmp_path / "nope.json")
    assert run_cli("evolve", "--schedule", missing, "--t", "1.0").returncode == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"duration": 1.0}))
    assert run_cli("evolve", "--schedule", str(bad), "--t", "1.0").returncode == 2


def test_error_messages_go_to_stderr():
    proc = run_cli("volume", "--region", "TLG")
    assert proc.stdout == ""
    assert "error:" in proc.stderr


_TABLE_ARGS = ("table", "--samples", "100000", "--seed", "42")


def test_table_golden_csv():
    proc = run_cli(*_TABLE_ARGS, "--format", "csv")
    assert proc.returncode == 0
    got = list(csv.reader(io.StringIO(proc.stdout)))
    golden = list(
        csv.reader(io.StringIO((Path(__file__).parent / "data" / "table_golden.csv").read_text()))
    )
    assert got[0] == ["quantity", "reference", "exact", "mc", "mc_stderr"]
    assert len(got) == len(golden) == 12
    # the deterministic columns must match the golden file byte for byte
    assert [row[:3] for row in got] == [row[:3] for row in golden]
    # Monte Carlo columns are pinned only statistically, so a numpy
    # upgrade that reshuffles the stream does not break the test
    for row in got[1:]:
        reference = float(Fraction(row[1]))
        mc = float(row[3])
        stderr = float(row[4])
        if stderr == 0.0:
            assert mc == reference
        else:
            assert abs(mc - reference) < 5 * stderr, row[0]


def test_table_exact_column_matches_reference():
    proc = run_cli(*_TABLE_ARGS, "--format", "csv")
    rows = list(csv.reader(io.StringIO(proc.stdout)))[1:]
    for quantity, reference, exact, _mc, _stderr in rows:
        if exact:
            assert Fraction(exact) == Fraction(reference), quantity
        else:
            assert "CPDIV" in quantity
    assert sum(1 for row in rows if not row[2]) == 2


def test_table_json():
    proc = run_cli(*_TABLE_ARGS, "--format", "json")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, _schema("output.schema.json"))
    rows = doc["results"]["rows"]
    assert len(rows) == 11
    quantities = [row["quantity"] for row in rows]
    assert "memory-kernel-only" in quantities
    by_name = {row["quantity"]: row for row in rows}
    assert by_name["V(CPT)"]["reference"] == [1, 3]
    assert by_name["V(CPT,CPDIV)/V(CPT)"]["exact"] is None


def test_table_text_aligned():
    proc = run_cli("table", "--samples", "2000", "--seed", "0")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert len(lines) == 12
    assert lines[0].startswith("quantity")
    assert "13/16" in proc.stdout
