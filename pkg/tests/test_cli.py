import io
import json

import pytest

from threshold_spectra.cli import EXIT_ANOMALY, EXIT_INVALID, EXIT_OK, EXIT_USAGE, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_spectrum_json():
    code, out, _ = call("spectrum", "0011100011", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["n"] == 10 and doc["string"] == "0011100011"
    assert sum(e["multiplicity"] for e in doc["spectrum"]) == 10
    sixth = [e for e in doc["spectrum"] if e.get("exact") == "-1/6"]
    assert sum(e["multiplicity"] for e in sixth) == 2
    assert any("-0.2" in n for n in doc["notes"])


def test_spectrum_exact_has_no_floats():
    code, out, _ = call("spectrum", "0011100011", "--format", "json", "--exact")
    assert code == EXIT_OK
    for e in json.loads(out)["spectrum"]:
        assert "value" not in e
        assert all(not isinstance(v, float) for v in e.values())


def test_spectrum_text_and_csv():
    code, out, _ = call("spectrum", "0111", "--precision", "3")
    assert code == EXIT_OK
    # one line per provenance: the repeated -1/3 comes from both sources
    assert out.splitlines()[0].split() == ["-0.333", "x2", "direct-string", "-1/3"]
    assert out.splitlines()[1].split() == ["-0.333", "x1", "quotient", "-1/3"]
    code, out, _ = call("spectrum", "0111", "--format", "csv")
    # exact values print as rationals, not rounded floats
    assert out.splitlines() == ["value,multiplicity", "-0.3333,3", "1,1"]


def test_env_default_format(monkeypatch):
    monkeypatch.setenv("THRESHOLD_SPECTRA_FORMAT", "json")
    code, out, _ = call("classify", "0111")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert (doc["distinct_count"], doc["family"]) == (2, "complete")
    code, out, _ = call("classify", "0111", "--format", "text")
    assert out.startswith("distinct eigenvalues: 2")


def test_classify_flags_inconsistency():
    code, out, _ = call("classify", "0000001101", "--format", "text")
    assert code == EXIT_OK
    assert "family: balanced-k2" in out and "predicts 5" in out


def test_analyze():
    code, out, _ = call("analyze", "0011100011", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["randic_index"] == "1343/1620"
    assert doc["distinct_count"] == 7
    code, out, _ = call("analyze", "0011100011", "--exact", "--format", "json")
    assert "energy" not in json.loads(out)


def test_quotient_and_charpoly():
    code, out, _ = call("quotient", "0011100011", "--format", "json")
    assert json.loads(out)["D_pi"] == [5, 6, 2, 9]
    code, out, _ = call("charpoly", "0111")
    assert out.split() == ["1", "0", "-2/3", "-8/27", "-1/27"]
    code, out, _ = call("charpoly", "0111", "--format", "json")
    assert json.loads(out)["distinct_count"] == 2


def test_export_dot():
    code, out, _ = call("export-dot", "0011")
    assert code == EXIT_OK
    assert out.startswith("graph t0011 {") and out.count("--") == 5


def test_enumerate():
    code, out, _ = call("enumerate", "--n", "4")
    assert out.split() == ["0001", "0011", "0101", "0111"]
    code, out, _ = call("enumerate", "--n", "3", "--format", "json")
    assert json.loads(out) == ["001", "011"]


@pytest.mark.parametrize(
    "argv",
    [
        ("spectrum", "0110"),
        ("spectrum", "1001"),
        ("spectrum", "0a1"),
        ("analyze", "0"),
        ("enumerate", "--n", "1"),
        ("cospectral", "--n-max", "1"),
        ("verify", "--n-max", "0"),
    ],
)
def test_invalid_input_exit_2(argv):
    code, out, err = call(*argv)
    assert code == EXIT_INVALID
    assert out == "" and err.startswith("invalid input:")


@pytest.mark.parametrize(
    "argv",
    [
        (),
        ("frobnicate",),
        ("spectrum",),
        ("spectrum", "01", "--precision", "0"),
        ("spectrum", "01", "--precision", "x"),
        ("spectrum", "01", "--format", "xml"),
        ("enumerate",),
    ],
)
def test_usage_exit_1(argv):
    assert call(*argv)[0] == EXIT_USAGE


def test_cospectral_files(tmp_path):
    js, cs = tmp_path / "r.json", tmp_path / "r.csv"
    code, out, _ = call("cospectral", "--n-max", "6", "--output", str(js), "--csv", str(cs), "--format", "json")
    assert code == EXIT_OK
    assert js.read_text().strip() == out.strip()
    rows = cs.read_text().splitlines()
    assert rows[0] == "string,fingerprint_hash,distinct_count,family"
    assert len(rows) == 1 + sum(2 ** (n - 2) for n in range(2, 7))


def test_cospectral_text():
    code, out, _ = call("cospectral", "--n-max", "5")
    assert code == EXIT_OK
    assert "n=5: 8 strings, 8 spectra, 0 cospectral pairs" in out


def test_verify_clean(tmp_path):
    path = tmp_path / "v.json"
    code, out, _ = call("verify", "--n-max", "6", "--output", str(path))
    assert code == EXIT_OK
    assert out.strip().endswith("0 violations across 31 strings")
    assert json.loads(path.read_text())["theorem_violations"] == []


@pytest.mark.slow
def test_verify_anomaly_exit_3():
    code, out, _ = call("verify", "--n-max", "10", "--workers", "2")
    assert code == EXIT_ANOMALY
    assert "2 violations across 511 strings" in out
