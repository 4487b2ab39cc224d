import json
import math
import subprocess
import sys

import pytest

from zenosim.cli import build_parser, main

from test_engine import FROZEN_W_ZENO


def write_config(tmp_path, **keys):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(keys), encoding="utf-8")
    return str(path)


class TestParser:
    def test_all_modes_have_subcommands(self):
        parser = build_parser()
        for command in ("two-level-zeno", "three-level-zeno", "no-zeno",
                        "tunneling", "ghz", "sweep", "ncrit"):
            args = parser.parse_args([command])
            assert args.mode == command.replace("-", "_")

    def test_requires_a_subcommand(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_g_tilde_flag(self):
        args = build_parser().parse_args(["ghz", "--g", "0.02", "--g-tilde", "0.005"])
        assert args.g_tilde == 0.005

    def test_underscore_aliases(self):
        args = build_parser().parse_args(["three_level_zeno"])
        assert args.mode == "three_level_zeno"


class TestMain:
    def test_ghz_from_flags_only(self, capsys):
        assert main(["ghz", "--g", "0.02", "--g-tilde", "0.005"]) == 0
        out = capsys.readouterr().out
        assert float(out.strip().split("W=")[1]) >= 1.0 - 1e-9

    def test_config_plus_overrides(self, tmp_path, capsys):
        path = write_config(tmp_path, mode="three_level_zeno", omega=0.05, n=50, dt=0.1)
        assert main(["three-level-zeno", "--config", path, "--n", "25", "--dt", "0.2"]) == 0
        w = float(capsys.readouterr().out.strip().split("W=")[1])
        assert abs(w - FROZEN_W_ZENO[25]) <= 1e-12

    def test_deterministic_csv(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        base = ["three-level-zeno", "--omega", "0.05", "--eta", "-0.2",
                "--n", "50", "--dt", "0.1"]
        assert main(base + ["--out", str(out1)]) == 0
        assert main(base + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_malformed_config_exits_one_without_output(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        out = tmp_path / "never.csv"
        assert main(["ghz", "--config", str(bad), "--out", str(out)]) == 1
        assert not out.exists()
        assert "config error" in capsys.readouterr().err

    def test_override_not_accepted_by_mode(self, capsys):
        assert main(["ghz", "--g", "0.02", "--g-tilde", "0.005", "--gamma", "40"]) == 1
        assert "gamma" in capsys.readouterr().err

    def test_physics_error_exit_code(self, tmp_path, capsys):
        path = write_config(tmp_path, mode="two_level_zeno", v=1.0, n=1, dt=math.pi / 2)
        assert main(["two-level-zeno", "--config", path]) == 2

    def test_io_error_exit_code(self, tmp_path, capsys):
        out = tmp_path / "missing" / "x.csv"
        assert main(["ghz", "--g", "0.02", "--g-tilde", "0.005", "--out", str(out)]) == 3

    def test_usage_errors_are_config_errors(self, capsys):
        assert main(["three-level-zeno", "--omega", "abc"]) == 1
        assert main(["bogus-mode"]) == 1
        capsys.readouterr()

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "MODE" in capsys.readouterr().out

    def test_tunneling_run(self, tmp_path, capsys):
        path = write_config(
            tmp_path, mode="tunneling", omega=0.05, gamma=40.0, t_total=5.0, steps=2000
        )
        assert main(["tunneling", "--config", path]) == 0
        assert "mode=tunneling" in capsys.readouterr().out


def test_module_entry_point(tmp_path):
    # end-to-end: separate interpreter, real exit code and stdout
    result = subprocess.run(
        [sys.executable, "-m", "zenosim.cli", "ghz", "--g", "0.02", "--g-tilde", "0.005"],
        capture_output=True, text=True, timeout=60,
    )
    assert result.returncode == 0
    assert result.stdout.startswith("mode=ghz")
