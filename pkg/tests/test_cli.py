import json
import math

import pytest

from robkit.cli import CSV_HEADER, main, parse_config


def layered_config(tmp_path, **overrides):
    cfg = {
        "system": {"kind": "layered", "m_layers": 20, "i": 11, "j": 19, "d": 10},
        "norm": "l2",
        "grid": {"scheme": "geometric", "lambda": 2.5, "a": 1.0, "m": 25},
        "sample": {"n": 200},
        "algorithm": "hsra",
        "seed": 1,
    }
    cfg.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    return path


def read_outputs(out_dir):
    csv = (out_dir / "curve.csv").read_text()
    report = json.loads((out_dir / "report.json").read_text())
    return csv, report


class TestRun:
    def test_layered_run_produces_curve_and_report(self, tmp_path):
        # N large enough that the sampled m_eq sits inside the mean bound
        cfg = layered_config(tmp_path, sample={"n": 4000})
        out = tmp_path / "out"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
        csv, report = read_outputs(out)
        lines = csv.strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1 + 25
        # trailing transform columns stay empty without --emit-bbp
        assert lines[1].endswith(",,")
        assert report["measured_meq"] < 1 + math.log(2.5)
        assert report["N"] == 4000
        assert report["decomposition"] == [32, 128, 256, 512, 1024, 2048]

    def test_determinism_excluding_wall_time(self, tmp_path):
        cfg = layered_config(tmp_path)
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["run", "--config", str(cfg), "--out", str(out1)]) == 0
        assert main(["run", "--config", str(cfg), "--out", str(out2)]) == 0
        csv1, rep1 = read_outputs(out1)
        csv2, rep2 = read_outputs(out2)
        assert csv1 == csv2
        rep1.pop("wall_time_s")
        rep2.pop("wall_time_s")
        assert rep1 == rep2

    def test_emit_bbp_fills_transform_columns(self, tmp_path):
        cfg = layered_config(tmp_path)
        out = tmp_path / "out"
        code = main(["run", "--config", str(cfg), "--out", str(out), "--emit-bbp"])
        assert code == 0
        csv, _ = read_outputs(out)
        last = csv.strip().split("\n")[-1].split(",")
        assert last[4] != "" and last[5] != ""
        assert 0.0 <= float(last[4]) <= 1.0

    def test_seed_override_changes_output(self, tmp_path):
        cfg = layered_config(tmp_path)
        out1, out2 = tmp_path / "a", tmp_path / "b"
        main(["run", "--config", str(cfg), "--out", str(out1)])
        main(["run", "--config", str(cfg), "--out", str(out2), "--seed", "99"])
        assert read_outputs(out1)[0] != read_outputs(out2)[0]

    def test_algo_override(self, tmp_path):
        cfg = layered_config(tmp_path)
        out = tmp_path / "out"
        main(["run", "--config", str(cfg), "--out", str(out), "--algo", "ssra"])
        _, report = read_outputs(out)
        assert report["algorithm"] == "ssra"

    def test_both_sample_plans_is_config_error(self, tmp_path):
        cfg = layered_config(
            tmp_path, sample={"n": 100, "epsilon": 0.05, "delta": 0.05}
        )
        assert main(["run", "--config", str(cfg)]) == 2

    def test_missing_config_file(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "nope.json")]) == 2

    def test_runtime_error_exit_code(self, tmp_path):
        cfg = layered_config(tmp_path, system={"kind": "unheard_of"})
        assert main(["run", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 3

    def test_chernoff_sizing_from_eps_delta(self, tmp_path):
        cfg = layered_config(tmp_path, sample={"epsilon": 0.2, "delta": 0.2})
        out = tmp_path / "out"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
        _, report = read_outputs(out)
        assert report["N"] == math.floor(math.log(10.0) / 0.08) + 1


class TestValidate:
    def test_ok_config(self, tmp_path, capsys):
        cfg = layered_config(tmp_path)
        assert main(["validate", "--config", str(cfg)]) == 0
        assert "config ok" in capsys.readouterr().out

    def test_missing_seed_warns(self, tmp_path, capsys):
        cfg = layered_config(tmp_path)
        raw = json.loads(cfg.read_text())
        del raw["seed"]
        cfg.write_text(json.dumps(raw))
        main(["validate", "--config", str(cfg)])
        assert "seed" in capsys.readouterr().out

    def test_bad_lambda_and_m_reported(self, tmp_path, capsys):
        cfg = layered_config(
            tmp_path, grid={"scheme": "geometric", "lambda": 0.9, "a": 1.0, "m": 1}
        )
        assert main(["validate", "--config", str(cfg)]) == 0
        out = capsys.readouterr().out
        assert "lambda" in out and "m" in out

    def test_parse_config_requires_one_grid_sizing(self):
        raw = {
            "system": {"kind": "layered", "m_layers": 20, "i": 11, "j": 19},
            "grid": {"scheme": "geometric", "lambda": 2.0, "a": 1.0},
            "sample": {"n": 10},
            "seed": 0,
        }
        cfg, report = parse_config(raw)
        assert cfg is None
        assert any("grid" in e for e in report.errors)
