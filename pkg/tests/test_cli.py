import json
import subprocess
import sys

import pytest

from jetstress.cli import (
    EXIT_CONFIG,
    EXIT_FAIL,
    EXIT_INTERNAL,
    EXIT_PASS,
    build_config,
    emit_report,
    load_config_file,
    main,
    report_to_dict,
)
from jetstress.scenarios import (
    Check,
    ConfigError,
    Report,
    ScenarioConfig,
    UnknownScenarioError,
    run_scenario,
)


def strip_seconds(payload: dict) -> dict:
    out = dict(payload)
    out["checks"] = [{k: v for k, v in c.items() if k != "seconds"}
                     for c in payload["checks"]]
    return out


class TestConfig:
    def test_build_minimal(self):
        cfg = build_config({"scenario": "stokes"})
        assert cfg.scenario == "stokes"
        assert cfg.seed == 0

    def test_missing_scenario(self):
        with pytest.raises(ConfigError):
            build_config({"seed": 3})

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            build_config({"scenario": "stokes", "bogus": 1})

    def test_tolerance_prefix_collected(self):
        cfg = build_config({"scenario": "stokes", "tolerance.residual_0": 1e-5})
        assert cfg.tolerances == {"residual_0": 1e-5}

    def test_nonpositive_tolerance_rejected(self):
        with pytest.raises(ConfigError):
            ScenarioConfig("stokes", tolerances={"default": 0.0})

    def test_config_file_parsing(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(
            "# residual sweep\n"
            "scenario = weak_strong\n"
            "seed = 12   # override later if needed\n"
            "q = 6\n"
            "fd_step = 1e-2\n"
            "tolerance.default = 1e-5\n")
        values = load_config_file(str(path))
        cfg = build_config(values)
        assert cfg.scenario == "weak_strong"
        assert cfg.seed == 12
        assert cfg.q == 6
        assert cfg.fd_step == 1e-2
        assert cfg.tolerances["default"] == 1e-5

    def test_config_file_bad_line(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("scenario weak_strong\n")
        with pytest.raises(ConfigError):
            load_config_file(str(path))

    def test_missing_file(self):
        with pytest.raises(ConfigError):
            load_config_file("/nonexistent/run.cfg")


class TestScenarioRunner:
    def test_unknown_scenario(self):
        with pytest.raises(UnknownScenarioError):
            run_scenario(ScenarioConfig("not_a_scenario"))

    def test_deterministic_given_config_and_seed(self):
        cfg1 = ScenarioConfig("stokes", seed=5)
        cfg2 = ScenarioConfig("stokes", seed=5)
        r1 = run_scenario(cfg1)
        r2 = run_scenario(cfg2)
        assert strip_seconds(report_to_dict(r1)) == strip_seconds(report_to_dict(r2))

    def test_seed_changes_values(self):
        v1 = [c.value for c in run_scenario(ScenarioConfig("stokes", seed=0)).checks]
        v2 = [c.value for c in run_scenario(ScenarioConfig("stokes", seed=1)).checks]
        assert v1 != v2

    def test_config_echoed_in_report(self):
        r = run_scenario(ScenarioConfig("stokes", seed=2, q=6))
        assert r.config["seed"] == 2
        assert r.config["q"] == 6
        assert r.scenario == "stokes"

    def test_tolerance_override_fails_run(self):
        r = run_scenario(ScenarioConfig("stokes", tolerances={"default": 1e-300}))
        assert not r.passed


class TestEmit:
    def sample_report(self):
        checks = [Check("residual", 1.0 / 3.0, 1e-6, "le", True, 0.125),
                  Check("magnitude", 0.7, 0.1, "ge", True, 0.5)]
        return Report("demo", {"seed": 4, "fd_step": 1e-3}, checks, True)

    def test_json_round_trip_is_exact(self):
        r = self.sample_report()
        parsed = json.loads(emit_report(r, "json"))
        assert parsed == report_to_dict(r)
        assert parsed["checks"][0]["value"] == 1.0 / 3.0
        assert parsed["config"]["fd_step"] == 1e-3

    def test_json_schema_keys(self):
        parsed = json.loads(emit_report(self.sample_report(), "json"))
        assert set(parsed) == {"scenario", "config", "checks", "pass"}
        assert set(parsed["checks"][0]) == {"name", "value", "tolerance",
                                            "comparator", "pass", "seconds"}

    def test_empty_checks(self):
        parsed = json.loads(emit_report(Report("demo", {}, [], True), "json"))
        assert parsed["checks"] == []

    def test_text_format(self):
        out = emit_report(self.sample_report(), "text")
        assert out.startswith("scenario: demo\n")
        assert "[pass] residual" in out
        assert out.rstrip().endswith("overall: pass")

    def test_text_marks_failure(self):
        r = Report("demo", {}, [Check("residual", 1.0, 1e-6, "le", False, 0.1)], False)
        out = emit_report(r, "text")
        assert "[FAIL] residual" in out
        assert "overall: FAIL" in out

    def test_unknown_format(self):
        with pytest.raises(ConfigError):
            emit_report(self.sample_report(), "yaml")


class TestMain:
    def test_pass_exit_code(self, capsys):
        assert main(["--scenario", "stokes", "--seed", "1"]) == EXIT_PASS
        parsed = json.loads(capsys.readouterr().out)
        assert parsed["pass"] is True

    def test_fail_exit_code(self, capsys):
        code = main(["--scenario", "stokes", "--tolerance", "default=1e-300"])
        assert code == EXIT_FAIL
        assert json.loads(capsys.readouterr().out)["pass"] is False

    def test_config_error_exit_code(self, capsys):
        assert main(["--scenario", "no_such_scenario"]) == EXIT_CONFIG
        assert "config error" in capsys.readouterr().err

    def test_bad_tolerance_spec(self, capsys):
        assert main(["--scenario", "stokes", "--tolerance", "oops"]) == EXIT_CONFIG

    def test_internal_error_exit_code(self, monkeypatch, capsys):
        import jetstress.cli as cli_mod

        def boom(cfg):
            raise RuntimeError("solver blew up")

        monkeypatch.setattr(cli_mod, "run_scenario", boom)
        assert main(["--scenario", "stokes"]) == EXIT_INTERNAL
        assert "internal error" in capsys.readouterr().err

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["--scenario", "stokes", "--out", str(out)]) == EXIT_PASS
        assert capsys.readouterr().out == ""
        assert json.loads(out.read_text())["scenario"] == "stokes"

    def test_flags_override_config_file(self, tmp_path, capsys):
        path = tmp_path / "run.cfg"
        path.write_text("scenario = stokes\nseed = 1\n")
        assert main(["--config", str(path), "--seed", "9"]) == EXIT_PASS
        assert json.loads(capsys.readouterr().out)["config"]["seed"] == 9


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "jetstress", "--scenario", "stokes", "--format", "text"],
        capture_output=True, text=True)
    assert proc.returncode == EXIT_PASS
    assert proc.stdout.startswith("scenario: stokes")
