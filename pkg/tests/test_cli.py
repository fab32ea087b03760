import csv
import json
from pathlib import Path

import pytest

from schlicht.cli import main


def run(args, tmp_path, name="out"):
    """Run the CLI into a file; return (exit_code, path)."""
    path = tmp_path / name
    code = main([*args, "--output", str(path), "--no-timestamp"])
    return code, path


def load_json(path):
    return json.loads(Path(path).read_text())


class TestExtremal:
    def test_beta_half_k2(self, tmp_path):
        code, path = run(["extremal", "--line", "beta", "--beta", "0.5", "--k", "2"],
                         tmp_path)
        assert code == 0
        data = load_json(path)
        assert data["header"]["tool"] == "schlicht"
        assert data["header"]["seed"] == 0
        assert data["header"]["trunc"] == 96
        assert data["result"]["a3"][0] == pytest.approx(0.375, abs=1e-12)
        assert data["result"]["a2"] == [0.0, 0.0]

    def test_alpha_line_k1(self, tmp_path):
        code, path = run(["extremal", "--line", "alpha", "--alpha", "0.75",
                          "--k", "1"], tmp_path)
        assert code == 0
        data = load_json(path)
        assert data["result"]["a2"][0] == pytest.approx(1.0, abs=1e-10)
        assert data["result"]["a3"][0] == pytest.approx(1.0, abs=1e-10)

    def test_missing_value_is_usage_error(self, tmp_path):
        code, _ = run(["extremal", "--line", "beta"], tmp_path)
        assert code == 2


class TestMembership:
    def test_neglog_generator_passes(self, tmp_path):
        code, path = run(["membership", "--class", "generator",
                          "--function", "neglog"], tmp_path)
        assert code == 0
        assert load_json(path)["result"]["verdict"] == "pass"

    def test_koebe_starlike_half_fails(self, tmp_path):
        code, path = run(["membership", "--class", "starlike-half",
                          "--function", "koebe"], tmp_path)
        assert code == 1
        assert load_json(path)["result"]["verdict"] == "fail"

    def test_m_class_requires_params(self, tmp_path):
        code, _ = run(["membership", "--class", "m", "--function", "id"], tmp_path)
        assert code == 2

    def test_empty_class_rejected_with_constraint(self, tmp_path, capsys):
        code, _ = run(["membership", "--class", "m", "--function", "id",
                       "--alpha", "1.5", "--beta", "0.5"], tmp_path)
        assert code == 2
        assert "alpha+beta must be < 2" in capsys.readouterr().err

    def test_csv_has_ring_margins(self, tmp_path):
        code, path = run(["membership", "--class", "generator", "--function",
                          "neglog", "--format", "csv"], tmp_path)
        assert code == 0
        lines = path.read_text().splitlines()
        header = [ln for ln in lines if ln.startswith("#")]
        assert any("trunc" in ln for ln in header)
        rows = list(csv.DictReader(ln for ln in lines if not ln.startswith("#")))
        assert rows[0]["ring"] == "0.1"
        assert float(rows[-1]["margin"]) > 0.3

    def test_json_function_input(self, tmp_path):
        series = {"n": 4, "coeffs": [[0, 0], [1, 0], [0.1, 0], [0, 0], [0, 0]]}
        fpath = tmp_path / "f.json"
        fpath.write_text(json.dumps(series))
        code, path = run(["membership", "--class", "generator",
                          "--function", str(fpath)], tmp_path)
        assert code == 0
        assert load_json(path)["result"]["verdict"] == "pass"

    def test_unknown_function_rejected(self, tmp_path):
        code, _ = run(["membership", "--class", "generator",
                       "--function", "nope"], tmp_path)
        assert code == 2


class TestRegion:
    def test_point_classification(self, tmp_path):
        code, path = run(["region", "--alpha", "1", "--beta", "0",
                          "--w", "1,0"], tmp_path)
        assert code == 0
        assert load_json(path)["result"]["in_delta"] is True

    def test_point_in_excluded_set(self, tmp_path):
        # negative components need the --flag=value form with argparse
        code, path = run(["region", "--alpha", "1", "--beta", "0",
                          "--w=-1,0"], tmp_path)
        assert code == 0
        assert load_json(path)["result"]["in_delta"] is False

    def test_function_audit(self, tmp_path):
        code, path = run(["region", "--alpha", "1", "--beta", "0",
                          "--function", "id"], tmp_path)
        assert code == 0
        res = load_json(path)["result"]
        assert res["all_in_delta"] is True
        assert res["consistent"] is True

    def test_requires_w_or_function(self, tmp_path):
        code, _ = run(["region", "--alpha", "1", "--beta", "0"], tmp_path)
        assert code == 2


class TestSweep:
    def test_alpha_one_bound_column(self, tmp_path):
        code, path = run(["sweep", "--line", "alpha", "--alpha", "1",
                          "--format", "csv"], tmp_path)
        assert code == 0
        lines = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]
        for row in csv.DictReader(lines):
            lam = complex(float(row["lambda_re"]), float(row["lambda_im"]))
            assert float(row["bound"]) == pytest.approx(max(1.0, abs(1 - lam)),
                                                        abs=1e-12)


class TestSemigroup:
    def test_trajectory_csv(self, tmp_path):
        code, path = run(["semigroup", "--function", "neglog", "--z0", "0.5,0.2",
                          "--t-end", "1.0", "--times", "0.5,1.0",
                          "--format", "csv"], tmp_path)
        assert code == 0
        lines = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]
        rows = list(csv.DictReader(lines))
        assert [r["t"] for r in rows] == ["0.0", "0.5", "1.0"]
        assert float(rows[-1]["abs_u"]) < abs(complex(0.5, 0.2))

    def test_non_generator_exit_code(self, tmp_path):
        series = {"n": 4, "coeffs": [[0, 0], [1, 0], [5, 0], [0, 0], [0, 0]]}
        fpath = tmp_path / "bad.json"
        fpath.write_text(json.dumps(series))
        code, _ = run(["semigroup", "--function", str(fpath), "--t-end", "1"],
                      tmp_path)
        assert code == 1

    def test_growth_audit(self, tmp_path):
        code, path = run(["semigroup", "--function", "id", "--audit", "growth",
                          "--alpha", "1.0", "--trials", "5", "--t-end", "2"],
                         tmp_path)
        assert code == 0
        assert load_json(path)["result"]["violations"] == 0

    def test_property_audit(self, tmp_path):
        code, path = run(["semigroup", "--function", "id", "--audit", "property",
                          "--s", "0.5", "--t-end", "2", "--trials", "5"], tmp_path)
        assert code == 0
        assert load_json(path)["result"]["max_deviation"] < 1e-9


class TestAudits:
    def test_filtration_beta(self, tmp_path):
        code, path = run(["audit-filtration", "--line", "beta", "--beta", "0.6",
                          "--trials", "10", "--seed", "9"], tmp_path)
        assert code == 0
        res = load_json(path)["result"]
        assert res["violations"] == 0
        assert res["to"] == [0.7, 0.8, 0.9, 1.0]

    def test_schwarz(self, tmp_path):
        code, path = run(["audit-schwarz", "--trials", "200", "--seed", "4"],
                         tmp_path)
        assert code == 0
        assert load_json(path)["result"]["violations"] == 0

    def test_bound_beta(self, tmp_path):
        code, path = run(["audit-bound", "--line", "beta", "--beta", "0.5",
                          "--trials", "20", "--seed", "2"], tmp_path)
        assert code == 0
        res = load_json(path)["result"]
        assert res["violations"] == 0
        assert res["mu"] == pytest.approx(0.375)


class TestDeterminism:
    @pytest.mark.parametrize("args", [
        ["audit-schwarz", "--trials", "100", "--seed", "7"],
        ["extremal", "--line", "beta", "--beta", "0.25", "--k", "2"],
        ["sweep", "--line", "beta", "--beta", "0.5", "--format", "csv"],
        ["audit-bound", "--line", "alpha", "--alpha", "0.75", "--trials", "10",
         "--seed", "3"],
    ])
    def test_reruns_byte_identical(self, args, tmp_path):
        _, a = run(args, tmp_path, "a")
        _, b = run(args, tmp_path, "b")
        assert a.read_bytes() == b.read_bytes()

    def test_timestamp_present_unless_suppressed(self, tmp_path):
        path = tmp_path / "ts"
        main(["extremal", "--line", "beta", "--beta", "0", "--k", "1",
              "--output", str(path)])
        assert "timestamp" in load_json(path)["header"]

    def test_trunc_env_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SCHLICHT_TRUNC", "48")
        code, path = run(["extremal", "--line", "beta", "--beta", "0.5",
                          "--k", "2"], tmp_path)
        assert code == 0
        assert load_json(path)["header"]["trunc"] == 48

    def test_trunc_flag_beats_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SCHLICHT_TRUNC", "48")
        code, path = run(["extremal", "--line", "beta", "--beta", "0.5",
                          "--k", "2", "--trunc", "64"], tmp_path)
        assert load_json(path)["header"]["trunc"] == 64


class TestUsage:
    def test_unknown_command(self):
        assert main(["frobnicate"]) == 2

    def test_no_command(self):
        assert main([]) == 2
