"""End-to-end checks of the command-line interface.

Commands run in-process through main(argv) so stdout/stderr can be
captured cheaply; exit codes follow the documented contract
(0 success, 1 validation, 2 I/O).
"""

import csv
import io
import math

import numpy as np
import pytest

from sourcefft.cli import RunConfig, main, parse_config, serialize_config

TWO_PI = 2.0 * math.pi


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header = rows[0]
    cols = [
        np.asarray([float(v) for v in col]) for col in zip(*rows[1:])
    ]
    return header, cols


class TestForward:
    def test_cosine_to_stdout(self, capsys):
        code, out, err = run_cli(capsys, "forward", "--source", "cosine")
        assert code == 0
        header, cols = parse_csv(out)
        assert header == ["x", "f", "g"]
        assert len(cols[0]) == 256
        assert np.max(cols[2]) == pytest.approx(-math.expm1(-1.0), abs=1e-5)
        assert np.max(cols[2]) == pytest.approx(0.63212, abs=1e-5)

    def test_row_count_follows_n(self, capsys):
        code, out, _ = run_cli(capsys, "forward", "--source", "cosine", "--n", "8")
        assert code == 0
        assert len(out.strip().splitlines()) == 9  # header + 8 samples

    def test_writes_file(self, capsys, tmp_path):
        dest = tmp_path / "fwd.csv"
        code, out, _ = run_cli(
            capsys, "forward", "--source", "cosine", "--out", str(dest)
        )
        assert code == 0
        assert out == ""
        assert dest.read_text().startswith("x,f,g\n")

    def test_jittered_input_grid_rejected(self, capsys, tmp_path):
        grid_x = np.linspace(0.0, TWO_PI, 64, endpoint=False)
        grid_x[10] += 1e-3
        bad = tmp_path / "bad.csv"
        lines = ["x,f"] + [f"{float(x)!r},{math.cos(x)!r}" for x in grid_x]
        bad.write_text("\n".join(lines) + "\n")
        code, _, err = run_cli(capsys, "forward", "--input", str(bad))
        assert code == 1
        assert "max deviation" in err

    def test_hat_source(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "forward",
            "--source", "hat",
            "--hat-center", str(math.pi),
            "--hat-half-width", "1.0",
        )
        assert code == 0
        header, cols = parse_csv(out)
        assert abs(float(np.mean(cols[1]))) < 1e-12


class TestSimulate:
    def test_zero_delta_copies_g(self, capsys):
        code, out, _ = run_cli(capsys, "simulate", "--delta", "0")
        assert code == 0
        rows = [line.split(",") for line in out.strip().splitlines()]
        assert rows[0] == ["x", "g", "g_delta"]
        for row in rows[1:]:
            assert row[1] == row[2]  # identical down to the printed digits

    def test_calibrated_noise_norm(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "simulate",
            "--delta", "0.05",
            "--noise-mode", "norm-calibrated",
        )
        assert code == 0
        _, cols = parse_csv(out)
        dx = TWO_PI / 256
        achieved = math.sqrt(dx * float(np.sum((cols[2] - cols[1]) ** 2)))
        assert abs(achieved - 0.05) < 1e-12

    def test_same_seed_same_bytes(self, capsys):
        args = ("simulate", "--delta", "0.05", "--seed", "7")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2
        _, out3, _ = run_cli(capsys, "simulate", "--delta", "0.05", "--seed", "8")
        assert out1 != out3


class TestInvert:
    @pytest.fixture
    def forward_file(self, capsys, tmp_path):
        dest = tmp_path / "data.csv"
        code, _, _ = run_cli(
            capsys, "forward", "--source", "cosine", "--out", str(dest)
        )
        assert code == 0
        return dest

    def test_round_trip_recovers_cosine(self, capsys, forward_file):
        code, out, _ = run_cli(
            capsys, "invert", "--input", str(forward_file), "--mu", "0"
        )
        assert code == 0
        header, cols = parse_csv(out)
        assert header == ["x", "f_estimate"]
        expected = np.cos(cols[0])
        rel = np.linalg.norm(cols[1] - expected) / np.linalg.norm(expected)
        assert rel < 1e-8

    def test_rule_prints_provenance(self, capsys, forward_file):
        code, out, err = run_cli(
            capsys,
            "invert",
            "--input", str(forward_file),
            "--rule", "1",
            "--delta", "0.015",
        )
        assert code == 0
        assert err.startswith("rule:")
        fields = dict(
            part.split("=") for part in err.strip().split(" ")[1:]
        )
        assert float(fields["mu"]) == pytest.approx(0.24662, abs=1e-5)
        assert float(fields["bound"]) > 0
        assert "x,f_estimate" in out

    def test_rule_requires_delta(self, capsys, forward_file):
        code, _, err = run_cli(
            capsys, "invert", "--input", str(forward_file), "--rule", "1"
        )
        assert code == 1
        assert "delta" in err

    def test_negative_mu_rejected(self, capsys, forward_file):
        code, _, err = run_cli(
            capsys, "invert", "--input", str(forward_file), "--mu", "-1"
        )
        assert code == 1

    def test_missing_input_is_io_error(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "invert", "--input", str(tmp_path / "absent.csv")
        )
        assert code == 2
        assert "absent.csv" in err

    def test_accepts_g_delta_column(self, capsys, tmp_path):
        noisy = tmp_path / "noisy.csv"
        code, _, _ = run_cli(
            capsys,
            "simulate",
            "--delta", "0.05",
            "--seed", "3",
            "--out", str(noisy),
        )
        assert code == 0
        code, out, _ = run_cli(
            capsys, "invert", "--input", str(noisy), "--mu", "3"
        )
        assert code == 0
        _, cols = parse_csv(out)
        assert np.all(np.isfinite(cols[1]))


class TestSweep:
    @pytest.fixture
    def tiny_config(self, tmp_path):
        cfg = RunConfig(
            n=64,
            deltas=(0.05, 0.1),
            mus=(0.0, 1.0, 3.0),
            p_values=(1.0,),
            replicates=2,
        )
        path = tmp_path / "sweep.cfg"
        path.write_text(serialize_config(cfg))
        return path

    def test_emits_mean_error_schema(self, capsys, tiny_config):
        code, out, _ = run_cli(capsys, "sweep", "--config", str(tiny_config))
        assert code == 0
        header, cols = parse_csv(out)
        assert header == ["mu", "delta", "mean_rel_error", "stderr_rel_error"]
        assert len(cols[0]) == 3 * 2  # mus x deltas
        assert np.all(np.isfinite(cols[2]))

    def test_deterministic(self, capsys, tiny_config):
        args = ("sweep", "--config", str(tiny_config), "--replicates", "1")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_rule_config_keeps_schema(self, capsys, tmp_path):
        cfg = RunConfig(
            n=64, deltas=(0.05,), mus="rule", p_values=(1.0, 2.0), replicates=2
        )
        path = tmp_path / "rule.cfg"
        path.write_text(serialize_config(cfg))
        code, out, _ = run_cli(capsys, "sweep", "--config", str(path))
        assert code == 0
        header, cols = parse_csv(out)
        assert header == ["mu", "delta", "mean_rel_error", "stderr_rel_error"]
        assert len(cols[0]) == 2  # one row per (delta, p)

    def test_empty_mus_rejected(self, capsys, tmp_path):
        path = tmp_path / "empty.cfg"
        lines = [
            "mus =" if line.startswith("mus") else line
            for line in serialize_config(RunConfig()).splitlines()
        ]
        path.write_text("\n".join(lines) + "\n")
        code, _, err = run_cli(capsys, "sweep", "--config", str(path))
        assert code == 1
        assert "mus" in err

    def test_workers_match_serial(self, capsys, tiny_config):
        _, out1, _ = run_cli(capsys, "sweep", "--config", str(tiny_config))
        _, out4, _ = run_cli(
            capsys, "sweep", "--config", str(tiny_config), "--workers", "4"
        )
        assert out1 == out4


class TestFigures:
    @pytest.fixture
    def small_config(self, tmp_path):
        cfg = RunConfig(
            deltas=(0.015, 0.05, 0.1),
            mus=tuple(np.linspace(0.0, 40.0, 11)),
            p_values=(1.0, 2.0),
            replicates=2,
        )
        path = tmp_path / "figs.cfg"
        path.write_text(serialize_config(cfg))
        return path

    def test_manifest_and_determinism(self, capsys, tmp_path, small_config):
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        for dest in (out_a, out_b):
            code, _, _ = run_cli(
                capsys,
                "figures",
                "--config", str(small_config),
                "--out", str(dest),
            )
            assert code == 0
        names = sorted(p.name for p in out_a.iterdir())
        assert names == [
            "fig1.csv", "fig1.gp", "fig2.csv", "fig2.gp", "fig3.csv",
            "fig3.gp", "fig4.csv", "fig4.gp", "fig5.csv", "fig5.gp",
        ]
        for name in names:
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes()

    def test_unwritable_out_is_io_error(self, capsys, tmp_path, small_config):
        blocker = tmp_path / "not-a-dir"
        blocker.write_text("occupied")
        code, _, err = run_cli(
            capsys,
            "figures",
            "--config", str(small_config),
            "--out", str(blocker),
        )
        assert code == 2
        assert "not-a-dir" in err


class TestConfigFile:
    def test_dump_parses_back_to_defaults(self, capsys):
        code, out, _ = run_cli(capsys, "dump-config")
        assert code == 0
        assert parse_config(out) == RunConfig()

    def test_serialize_parse_fixed_point(self):
        for cfg in (
            RunConfig(),
            RunConfig(n=64, source="hat", hat_center=2.5, mus="rule"),
            RunConfig(deltas=(0.3,), mus=(0.0, 0.25), noise_mode="norm_calibrated"),
        ):
            text = serialize_config(cfg)
            assert parse_config(text) == cfg
            assert serialize_config(parse_config(text)) == text

    def test_unknown_key_rejected(self, capsys, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text(serialize_config(RunConfig()) + "typo_key = 3\n")
        code, _, err = run_cli(capsys, "sweep", "--config", str(path))
        assert code == 1
        assert "typo_key" in err

    def test_duplicate_key_rejected(self, capsys, tmp_path):
        path = tmp_path / "dup.cfg"
        path.write_text(serialize_config(RunConfig()) + "n = 64\n")
        code, _, err = run_cli(capsys, "sweep", "--config", str(path))
        assert code == 1
        assert "duplicate" in err.lower()

    def test_comments_and_blanks_ignored(self):
        text = "# leading comment\n\n" + serialize_config(RunConfig())
        assert parse_config(text) == RunConfig()


class TestTopLevel:
    def test_no_command_is_error(self, capsys):
        code, _, err = run_cli(capsys)
        assert code == 1

    def test_unknown_command_is_error(self, capsys):
        code, _, _ = run_cli(capsys, "frobnicate")
        assert code == 1

    def test_oracle_hidden_from_help(self, capsys):
        with pytest.raises(SystemExit):
            main(["--help"])
        out = capsys.readouterr().out
        assert "oracle" not in out
        for cmd in ("forward", "simulate", "invert", "sweep", "figures"):
            assert cmd in out


class TestOracleCommand:
    @pytest.fixture
    def forward_file(self, capsys, tmp_path):
        dest = tmp_path / "data.csv"
        code, _, _ = run_cli(
            capsys,
            "forward", "--source", "cosine", "--n", "64", "--out", str(dest),
        )
        assert code == 0
        return dest

    def test_aligned_run_agrees_with_pipeline(self, capsys, forward_file):
        code, out, err = run_cli(
            capsys, "oracle", "--input", str(forward_file), "--mu", "1"
        )
        assert code == 0
        assert err.startswith("oracle:")
        rel = float(err.strip().rsplit("=", 1)[1])
        assert rel < 1e-6
        header, cols = parse_csv(out)
        assert header == ["x", "f_oracle", "f_pipeline"]
        assert np.allclose(cols[1], cols[2], atol=1e-6)

    def test_explicit_truncation_flags(self, capsys, forward_file):
        code, _, err = run_cli(
            capsys,
            "oracle",
            "--input", str(forward_file),
            "--mu", "1",
            "--no-aligned",
            "--xi-max", "32",
            "--nodes", "257",
        )
        assert code == 0
        assert "nodes=257" in err
