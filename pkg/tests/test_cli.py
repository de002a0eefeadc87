#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""配置管理与命令行入口"""

import json
import os

import pytest

from config_manager import ConfigManager, config_hash, parse_config
from core.errors import ConfigError, FieldError, ParamError
from fracbody_app import build_parser, collect_overrides, main
from run_controller import EXIT_ASSERTION, EXIT_COMPUTATION, EXIT_CONFIG, EXIT_OK, exit_code_for


def _write(tmp_path, document, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(document), encoding="utf-8")
    return str(path)


class TestConfigManager:
    def test_defaults(self):
        run = ConfigManager().to_run_config()
        assert run.command == "selftest"
        assert run.n == 2
        assert run.params.ps == pytest.approx(1.0)
        assert run.formats == ("json", "csv")

    def test_unknown_key_is_named(self, tmp_path):
        path = _write(tmp_path, {"quadrature": {"sphre_level": 4}})
        with pytest.raises(ConfigError, match="quadrature.sphre_level"):
            ConfigManager(path)

    def test_unknown_top_level_key(self, tmp_path):
        with pytest.raises(ConfigError, match="colour"):
            ConfigManager(_write(tmp_path, {"colour": "red"}))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            ConfigManager(str(tmp_path / "missing.json"))

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError):
            ConfigManager(str(path))

    def test_file_is_merged_with_defaults(self, tmp_path):
        manager = ConfigManager(_write(tmp_path, {"command": "chain", "quadrature": {"t_points": 150}}))
        assert manager.get_value("quadrature.t_points") == 150
        assert manager.get_value("quadrature.t_min") == 1.0e-4
        assert manager.get_value("output.dir") == "results"

    def test_overrides(self):
        manager = ConfigManager()
        manager.apply_override("s=0.25")
        manager.apply_override("field=ramp_bump")
        manager.apply_override("quadrature.box_points=40")
        assert manager.get_value("s") == 0.25
        assert manager.get_value("field") == "ramp_bump"
        assert manager.to_run_config().quad.box_points == 40

    @pytest.mark.parametrize("assignment", ["s", "bogus=1", "quadrature.level=3", "tolerances.bogus=0.1"])
    def test_invalid_overrides(self, assignment):
        with pytest.raises(ConfigError):
            ConfigManager().apply_override(assignment)

    @pytest.mark.parametrize("assignment", [
        "s=1.2", "p=0.5", "n=4", "variant=\"both\"", "command=\"plot\"", "threads=0",
        "tolerance=-1", "shear_count=-1", "output.formats=[\"xml\"]", "field=\"blob\"",
    ])
    def test_invalid_values(self, assignment):
        manager = ConfigManager()
        manager.apply_override(assignment)
        with pytest.raises(ConfigError):
            manager.to_run_config()

    def test_limits_allow_large_ps(self):
        manager = ConfigManager()
        for assignment in ("command=limits", "n=1", "s=0.9", "s_list=[0.5, 0.9, 0.99]"):
            manager.apply_override(assignment)
        run = manager.to_run_config()
        assert run.params.ps > run.n

    def test_tolerance_overrides(self):
        manager = ConfigManager()
        manager.apply_override("tolerances.chain=0.05")
        run = manager.to_run_config()
        assert run.tol("chain") == 0.05
        assert run.tol("ps") == run.tolerance

    def test_hash_ignores_output_and_threads(self, tmp_path):
        first = ConfigManager()
        second = ConfigManager()
        second.apply_override(f"output.dir={json.dumps(str(tmp_path))}")
        second.apply_override("threads=1")
        assert first.to_run_config().config_hash == second.to_run_config().config_hash
        second.apply_override("s=0.3")
        assert first.to_run_config().config_hash != second.to_run_config().config_hash

    def test_get_value_unknown_path(self):
        with pytest.raises(ConfigError, match="quadrature.bogus"):
            ConfigManager().get_value("quadrature.bogus")

    def test_save_and_reload(self, tmp_path):
        manager = ConfigManager()
        manager.apply_override("command=chain")
        path = str(tmp_path / "nested" / "saved.json")
        assert manager.save_config(path) == path
        reloaded = ConfigManager(path)
        assert reloaded.get_value("command") == "chain"
        assert reloaded.to_run_config().config_hash == manager.to_run_config().config_hash

    def test_hash_is_key_order_free(self):
        assert config_hash({"a": 1, "b": [1, 2]}) == config_hash({"b": [1, 2], "a": 1})

    def test_fields_are_canonical(self):
        run = ConfigManager().to_run_config()
        assert run.document["fields"] == [run.primary_field.to_dict()]

    def test_parse_config_minimal_file(self, tmp_path):
        path = _write(tmp_path, {"command": "chain", "field": "gaussian", "n": 2, "s": 0.5, "p": 2})
        run = parse_config(path, ["seed=3"])
        assert run.command == "chain"
        assert run.seed == 3
        assert run.quad.t_points == 200

    @pytest.mark.parametrize("document", [{"s": 1.2}, {"sphre_level": 8}])
    def test_parse_config_errors(self, tmp_path, document):
        with pytest.raises(ConfigError):
            parse_config(_write(tmp_path, document))


class TestParser:
    def test_flags_win_over_set(self):
        args = build_parser().parse_args(["--set", "seed=1", "--seed", "4", "--out", "x"])
        overrides = collect_overrides(args)
        assert overrides == ["seed=1", "output.dir=\"x\"", "seed=4"]

    def test_exit_codes(self):
        assert exit_code_for(ConfigError("x")) == EXIT_CONFIG
        assert exit_code_for(ParamError("x", "s_range")) == EXIT_CONFIG
        assert exit_code_for(FieldError("x")) == EXIT_COMPUTATION


class TestMain:
    def test_selftest_writes_deterministic_files(self, tmp_path):
        out = str(tmp_path / "out")
        assert main(["--command", "selftest", "--out", out, "-q"]) == EXIT_OK
        names = sorted(os.listdir(out))
        stems = {name.split(".")[0] for name in names}
        assert len(stems) == 1
        stem = stems.pop()
        assert stem.startswith("selftest-")
        assert {f"{stem}.json", f"{stem}.csv", f"{stem}.meta.json"} <= set(names)

        with open(os.path.join(out, f"{stem}.json"), "rb") as f:
            first = f.read()
        assert main(["--command", "selftest", "--out", out, "-q"]) == EXIT_OK
        with open(os.path.join(out, f"{stem}.json"), "rb") as f:
            assert f.read() == first
        assert json.loads(first)["passed"] is True

    def test_saved_config_reruns_with_same_hash(self, tmp_path):
        out = str(tmp_path / "out")
        assert main(["--command", "selftest", "--seed", "5", "--out", out, "-q"]) == EXIT_OK
        saved = [name for name in os.listdir(out) if name.endswith(".config.json")]
        assert len(saved) == 1
        rerun = str(tmp_path / "rerun")
        assert main(["--config", os.path.join(out, saved[0]), "--out", rerun, "-q"]) == EXIT_OK
        assert saved[0] in os.listdir(rerun)

    def test_help(self):
        assert main(["--help"]) == EXIT_OK

    @pytest.mark.parametrize("argv", [
        ["--set", "s=1.2"],
        ["--bogus"],
        ["--threads", "many"],
        ["--set", "nokey"],
        ["--set", "quadrature.sphre_level=3"],
        ["--command", "plot"],
    ])
    def test_config_errors(self, tmp_path, argv):
        assert main(argv + ["--out", str(tmp_path), "-q"]) == EXIT_CONFIG

    def test_config_file_errors(self, tmp_path):
        path = _write(tmp_path, {"command": "selftest", "sphere": 3})
        assert main(["--config", path, "--out", str(tmp_path), "-q"]) == EXIT_CONFIG

    def test_failed_assertion(self, tmp_path):
        argv = [
            "--command", "chain", "--tolerance", "1e-12",
            "--set", "field={\"kind\": \"ramp_bump\", \"slope\": 0.6}",
            "--set", "shear_count=0",
            "--set", "quadrature.box_points=32",
            "--out", str(tmp_path), "-q",
        ]
        assert main(argv) == EXIT_ASSERTION

    def test_computation_error(self, tmp_path):
        argv = ["--command", "limits", "--set", "n=1", "--set", "field=ball_indicator", "--out", str(tmp_path), "-q"]
        assert main(argv) == EXIT_COMPUTATION
