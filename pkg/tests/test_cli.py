import json

import numpy as np
import pytest

from starwalk import serialization as ser
from starwalk.cli import EX_DATAERR, EX_OK, EX_SOFTWARE, EX_USAGE, RunConfig, main, run


def test_walk_csv_matches_trig_form(capsys):
    code = main(["walk", "--graph", "star-p3", "--n", "3", "--t-max", "6.2832", "--steps", "64",
                 "--format", "csv"])
    assert code == EX_OK
    series = ser.series_from_csv(capsys.readouterr().out)
    t = series.times
    assert len(t) == 64 and t[-1] == 6.2832
    np.testing.assert_allclose(series.amplitudes[:, 0], (1 + 3 * np.cos(2 * t)) / 4, atol=1e-12)


def test_measure_line_graph_is_arcsine(capsys):
    assert main(["measure", "--graph", "star-lattice", "--n", "2"]) == EX_OK
    d = json.loads(capsys.readouterr().out)
    assert d["density"]["kind"] == "arcsine" and d["atoms"] == []


def test_measure_truncated_lattice_is_atomic(capsys):
    assert main(["measure", "--graph", "star-lattice", "--n", "3", "--ray-length", "4"]) == EX_OK
    d = json.loads(capsys.readouterr().out)
    assert d["density"] is None and len(d["atoms"]) == 5


def test_verify_star_c4(capsys):
    assert main(["verify", "--graph", "star-c4", "--n", "4"]) == EX_OK
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] and report["max_deviation"] < 1e-8


def test_verify_fails_with_impossible_tolerance(capsys):
    assert main(["verify", "--graph", "star-c4", "--n", "4", "--verify-tolerance", "1e-30"]) == EX_SOFTWARE


def test_graph_and_jacobi_commands(capsys):
    assert main(["graph", "--graph", "cycle", "--n", "4"]) == EX_OK
    g = ser.graph_from_dict(json.loads(capsys.readouterr().out))
    assert g.vertex_count == 4
    assert main(["jacobi", "--graph", "k2"]) == EX_OK
    assert json.loads(capsys.readouterr().out) == {"omega": [1.0], "alpha": [0.0, 0.0], "tail": None}
    assert main(["jacobi", "--graph", "star-lattice", "--n", "4"]) == EX_OK
    assert json.loads(capsys.readouterr().out)["tail"] == "unit"


def test_qclt_command(capsys):
    assert main(["qclt", "--graph", "star-lattice", "--n", "10000", "--t-max", "3.1416",
                 "--steps", "9", "--format", "json"]) == EX_OK
    s = ser.series_from_dict(json.loads(capsys.readouterr().out))
    assert s.method == "qclt" and s.k_max == 2
    np.testing.assert_allclose(s.amplitudes[:, 0], np.cos(s.times), atol=1e-3)


def test_usage_errors(capsys):
    assert main(["walk", "--graph", "petersen", "--n", "2"]) == EX_USAGE
    assert main(["walk"]) == EX_USAGE
    assert main(["walk", "--graph", "star-p3"]) == EX_USAGE
    assert main(["walk", "--graph", "star-p3", "--n", "2", "--steps", "0"]) == EX_USAGE
    assert main(["walk", "--graph", "star-p3", "--n", "2", "--t-max", "-1"]) == EX_USAGE
    assert main(["walk", "--graph", "star-p3", "--n", "0"]) == EX_USAGE
    assert main(["qclt", "--graph", "path", "--n", "3"]) == EX_USAGE
    assert main(["verify"]) == EX_USAGE
    assert main(["frobnicate"]) == EX_USAGE


def test_usage_error_computes_nothing(tmp_path, monkeypatch):
    monkeypatch.setenv("STARWALK_OUTPUT_DIR", str(tmp_path))
    assert main(["walk", "--steps", "3"]) == EX_USAGE
    assert list(tmp_path.iterdir()) == []


def test_non_invariant_graph_is_domain_error(tmp_path):
    path = tmp_path / "tree.json"
    path.write_text(json.dumps({"label": "tree", "vertex_count": 6, "root": 0,
                                "edges": [[0, 1], [0, 2], [1, 3], [1, 4], [2, 5]]}))
    assert main(["walk", "--graph-file", str(path)]) == EX_DATAERR
    assert main(["graph", "--graph-file", str(path)]) == EX_OK


def test_output_file_and_determinism(tmp_path):
    args = ["walk", "--graph", "star-c4", "--n", "2", "--steps", "32", "--format", "csv"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--output", str(a)]) == EX_OK
    assert main(args + ["--output", str(b)]) == EX_OK
    assert a.read_bytes() == b.read_bytes()


def test_output_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("STARWALK_OUTPUT_DIR", str(tmp_path))
    assert main(["measure", "--graph", "star-lattice", "--n", "5"]) == EX_OK
    out = tmp_path / "measure-star-lattice-n5.json"
    m = ser.measure_from_dict(json.loads(out.read_text()))
    assert m.atom_mass == pytest.approx(0.75)


def test_probability_table_output(tmp_path):
    probs = tmp_path / "p.csv"
    assert main(["walk", "--graph", "star-p3", "--n", "2", "--steps", "5",
                 "--output", str(tmp_path / "q.json"), "--probabilities", str(probs)]) == EX_OK
    rows = probs.read_text().splitlines()
    assert rows[0] == "t,vertex,probability" and len(rows) == 1 + 5 * 5


def test_json_artifacts_reparse_equal(tmp_path):
    out = tmp_path / "walk.json"
    assert main(["walk", "--graph", "star-lattice", "--n", "3", "--steps", "8", "--k-max", "4",
                 "--output", str(out)]) == EX_OK
    s = ser.series_from_dict(json.loads(out.read_text()))
    assert ser.dumps(ser.series_to_dict(s)) == out.read_text()


def test_run_config_validation():
    with pytest.raises(Exception):
        run(RunConfig("walk", family="star-p3", n=2, steps=0))


def test_verify_all_reports_every_check(capsys):
    code = main(["verify", "--all"])
    summary = json.loads(capsys.readouterr().out)
    assert len(summary["checks"]) == 13
    assert code == (EX_OK if summary["passed"] else EX_SOFTWARE)
