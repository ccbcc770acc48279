import csv
import io
import json

import pytest

import torusrep.cli as cli
from torusrep.cli import main
from torusrep.glrep import exterior_power


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_n1_degree3(capsys):
    code, out, _ = run(["verify", "--n", "1", "--degree", "3"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    names = [s["suite"] for s in rep["suites"]]
    assert {"heisenberg", "clifford", "relvir", "glbrak", "embed_virasoro", "structure_constants"} <= set(names)
    assert all(s["failed"] == 0 and s["cases"] > 0 for s in rep["suites"])
    assert all("seconds" not in s for s in rep["suites"])


def test_verify_fermionic_includes_chiral_checks(capsys):
    code, out, _ = run(["verify", "--n", "2", "--degree", "2", "--realization", "fermionic:1"], capsys)
    rep = json.loads(out)
    assert code == 0
    names = [s["suite"] for s in rep["suites"]]
    assert "chiral_d_squared" in names and "chiral_homomorphism" in names
    assert rep["config"]["realization"] == "fermionic:1"


def test_verify_reports_failure(capsys, monkeypatch):
    monkeypatch.setattr(cli, "embed_virasoro_check", lambda N: False)
    code, out, _ = run(["verify", "--n", "1", "--degree", "1", "--format", "text"], capsys)
    assert code == 1
    assert out.rstrip().endswith("FAIL")


def test_timing_flag(capsys):
    code, out, _ = run(["verify", "--n", "1", "--degree", "1", "--timing"], capsys)
    assert code == 0
    assert all("seconds" in s for s in json.loads(out)["suites"])


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "-1"],
    ["verify", "--n", "1", "--degree", "-2"],
    ["critical", "--n", "1", "--h", "1/0"],
    ["critical", "--n", "1", "--h", "1", "--beta", "0"],
    ["critical", "--n", "2", "--gamma", "1,2,3"],
    ["critical", "--n", "1", "--w", "ext:3"],
    ["critical", "--n", "1", "--realization", "bosonic"],
    ["critical", "--n", "1", "--m", "0"],
    ["cohomology", "--n", "1", "--window", "2..0"],
    ["frobnicate"],
    ["critical", "--n", "x"],
    ["verify", "--n", "1", "--workers", "0"],
])
def test_usage_errors(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2
    assert out == ""
    assert err


def test_critical_examples(capsys):
    code, out, _ = run(["critical", "--n", "1", "--alpha", "0", "--h", "0", "--m", "1"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["exceptional"] is True
    assert [r["dim"] for r in rep["rows"]] == [1]
    code, out, _ = run(["critical", "--n", "1", "--alpha", "1/97", "--h", "1/97", "--m", "1..3"], capsys)
    rep = json.loads(out)
    assert [r["dim"] for r in rep["rows"]] == [0, 0, 0]
    assert rep["exceptional"] is False


def test_cohomology_example(capsys):
    code, out, _ = run(["cohomology", "--n", "2", "--gamma", "0", "--window", "0..2", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    low = {int(r["k"]): int(r["betti"]) for r in rows if r["m"] == "0"}
    assert [low[k] for k in (0, 1, 2)] == [1, 2, 1]
    assert all(int(r["betti"]) == 0 for r in rows if r["m"] != "0")
    assert set(rows[0]) == {"k", "m", "mu", "dim", "dim_ker", "dim_im", "betti"}


def test_character_generic_and_exceptional(capsys):
    code, out, _ = run(["character", "--n", "1", "--alpha", "1/97", "--h", "1/97", "--window", "0..1"], capsys)
    rep = json.loads(out)
    assert code == 0 and all(r["certified"] for r in rep["rows"])
    assert all(r["gram_rank"] == 1 for r in rep["rows"] if r["m"] == 0)
    code, out, _ = run(["character", "--n", "1", "--realization", "fermionic:0", "--window", "0..1",
                        "--mu-window", "0..0"], capsys)
    rows = json.loads(out)["rows"]
    assert rows[0]["certified"] is True
    assert rows[1]["certified"] is False and rows[1]["status"] == "refuted" and "witness" in rows[1]


def test_probe(capsys):
    code, out, _ = run(["probe", "--n", "2", "--w", "ext:1", "--alpha", "1"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["dim"] == 1 and rep["closed"] is True
    code, out, _ = run(["probe", "--n", "2", "--w", "ext:1", "--alpha", "1/2"], capsys)
    assert json.loads(out)["dim"] == 0


def test_output_is_deterministic(capsys, tmp_path):
    argv = ["cohomology", "--n", "1", "--gamma", "1/3", "--window", "0..1"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second
    path = tmp_path / "out.json"
    assert main(argv + ["--out", str(path)]) == 0
    assert path.read_text() == first


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 1, "gamma": ["1/3"], "alpha": "0", "h": "0", "m": "1"}))
    _, from_file, _ = run(["critical", "--config", str(cfg)], capsys)
    _, from_flags, _ = run(["critical", "--n", "1", "--gamma", "1/3", "--alpha", "0", "--h", "0", "--m", "1"], capsys)
    assert from_file == from_flags
    # flags override the file
    _, out, _ = run(["critical", "--config", str(cfg), "--alpha", "1/97", "--h", "1/97"], capsys)
    assert json.loads(out)["rows"][0]["dim"] == 0


@pytest.mark.parametrize("content", ['{"n": 1, "colour": 3}', '{"n": "one"}', '[1, 2]', '{"n": 1,'])
def test_bad_config(content, capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(content)
    code, _, err = run(["critical", "--config", str(cfg)], capsys)
    assert code == 2 and "config" in err


def test_module_file(capsys, tmp_path):
    path = tmp_path / "w.json"
    path.write_text(json.dumps(exterior_power(2, 1, 3).to_json()))
    code, out, _ = run(["critical", "--n", "2", "--w", str(path), "--h", "0", "--m", "1"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["config"]["alpha"] == "3" and rep["exceptional"] is True
    code, _, err = run(["critical", "--n", "1", "--w", str(path)], capsys)
    assert code == 2 and "rank" in err


def test_beta_determines_h(capsys):
    _, out, _ = run(["critical", "--n", "1", "--alpha", "1/97", "--beta", "-49/9409", "--m", "1"], capsys)
    assert json.loads(out)["config"]["h"] == "1/97"
