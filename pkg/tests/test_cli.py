"""Command-line front end: scenarios, subcommands, exit codes."""

import subprocess
import sys

import pytest

from dsapf.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, load_scenario, main
from dsapf.system import ConfigError

TINY = """
# toy scenario, fast enough for tests
n_users = 4
n_bands = 3
max_bands_per_user = 1
n_particles = 5
n_slots = 6
seed = 2
"""


@pytest.fixture
def scenario(tmp_path):
    path = tmp_path / "tiny.scn"
    path.write_text(TINY)
    return str(path)


# ---------------------------------------------------------------- scenarios


def test_load_scenario_defaults_and_overrides(scenario):
    cfg = load_scenario(None)
    assert cfg.n_users == 200
    cfg = load_scenario(scenario)
    assert (cfg.n_users, cfg.n_bands, cfg.seed) == (4, 3, 2)
    assert cfg.objective == "sum"


def test_load_scenario_parses_every_field_kind(tmp_path):
    path = tmp_path / "kinds.scn"
    path.write_text("objective = proportional_fair\n"
                    "pu_busy_prob = 0.25\n"
                    "rate_threshold_range_bps = 0, 5e3\n")
    cfg = load_scenario(str(path))
    assert cfg.objective == "proportional_fair"
    assert cfg.pu_busy_prob == 0.25
    assert cfg.rate_threshold_range_bps == (0.0, 5e3)


def test_load_scenario_errors_carry_line_numbers(tmp_path):
    bad_syntax = tmp_path / "a.scn"
    bad_syntax.write_text("n_users = 4\nnot a setting\n")
    with pytest.raises(ConfigError, match="a.scn:2"):
        load_scenario(str(bad_syntax))

    unknown = tmp_path / "b.scn"
    unknown.write_text("\n\nn_userz = 4\n")
    with pytest.raises(ConfigError, match="b.scn:3.*n_userz"):
        load_scenario(str(unknown))

    bad_value = tmp_path / "c.scn"
    bad_value.write_text("n_users = many\n")
    with pytest.raises(ConfigError, match="c.scn:1.*n_users"):
        load_scenario(str(bad_value))


# ---------------------------------------------------------------- run


def test_run_writes_outputs_and_prints_summary(scenario, tmp_path, capsys):
    out = tmp_path / "results"
    assert main(["run", "--config", scenario, "--out", str(out)]) == EXIT_OK
    assert (out / "slots.csv").exists()
    assert (out / "summary.csv").exists()
    line = capsys.readouterr().out.strip()
    assert line.startswith("seed=2 objective=sum")
    assert "avg_throughput_bps=" in line


def test_run_seed_override(scenario, tmp_path):
    out = tmp_path / "o"
    main(["run", "--config", scenario, "--seed", "7", "--out", str(out)])
    row = (out / "summary.csv").read_text().splitlines()[1]
    assert row.startswith("7,")


def test_run_rejects_invalid_config(tmp_path, capsys):
    path = tmp_path / "bad.scn"
    path.write_text("n_users = 0\n")
    assert main(["run", "--config", str(path),
                 "--out", str(tmp_path / "x")]) == EXIT_CONFIG
    assert "n_users" in capsys.readouterr().err


def test_run_missing_scenario_is_io_error(tmp_path, capsys):
    missing = tmp_path / "nope.scn"
    assert main(["run", "--config", str(missing),
                 "--out", str(tmp_path / "x")]) == EXIT_IO
    assert "nope.scn" in capsys.readouterr().err


def test_out_dir_env_default(scenario, tmp_path, monkeypatch, capsys):
    target = tmp_path / "from-env"
    monkeypatch.setenv("DSA_PF_OUT", str(target))
    assert main(["run", "--config", scenario]) == EXIT_OK
    assert (target / "summary.csv").exists()


def test_run_outputs_are_byte_identical(scenario, tmp_path):
    main(["run", "--config", scenario, "--out", str(tmp_path / "a")])
    main(["run", "--config", scenario, "--out", str(tmp_path / "b")])
    for name in ("slots.csv", "summary.csv"):
        assert ((tmp_path / "a" / name).read_bytes()
                == (tmp_path / "b" / name).read_bytes())


# ---------------------------------------------------------------- sweep


def test_sweep_grid_outputs(scenario, tmp_path, capsys):
    out = tmp_path / "sweep"
    code = main(["sweep", "--config", scenario, "--param", "n_particles",
                 "--values", "2,4", "--seeds", "0,1", "--out", str(out)])
    assert code == EXIT_OK
    assert "cells=4" in capsys.readouterr().out
    lines = (out / "sweep.csv").read_text().splitlines()
    assert len(lines) == 1 + 2 * 3
    for value in (2, 4):
        for seed in (0, 1):
            cell = out / f"n_particles-{value}" / f"seed-{seed}"
            assert (cell / "slots.csv").exists()


def test_sweep_handles_negative_values(scenario, tmp_path):
    out = tmp_path / "p"
    code = main(["sweep", "--config", scenario, "--param", "p_total_max_dbm",
                 "--values=-3,3", "--seeds", "0", "--out", str(out)])
    assert code == EXIT_OK
    rows = (out / "sweep.csv").read_text().splitlines()[1:]
    assert rows[0].startswith("p_total_max_dbm,-3.0,")


def test_sweep_unknown_parameter(scenario, tmp_path, capsys):
    code = main(["sweep", "--config", scenario, "--param", "n_bandz",
                 "--values", "2", "--seeds", "0", "--out", str(tmp_path / "x")])
    assert code == EXIT_CONFIG
    err = capsys.readouterr().err
    assert "n_bandz" in err and "n_bands" in err


def test_sweep_bad_values(scenario, tmp_path, capsys):
    code = main(["sweep", "--config", scenario, "--param", "n_particles",
                 "--values", "2,x", "--seeds", "0", "--out", str(tmp_path / "x")])
    assert code == EXIT_CONFIG
    assert "bad sweep values" in capsys.readouterr().err


def test_sweep_parallel_matches_serial(scenario, tmp_path):
    serial = tmp_path / "serial"
    parallel = tmp_path / "parallel"
    main(["sweep", "--config", scenario, "--param", "pu_busy_prob",
          "--values", "0.0,0.5", "--seeds", "0", "--out", str(serial)])
    main(["sweep", "--config", scenario, "--param", "pu_busy_prob",
          "--values", "0.0,0.5", "--seeds", "0", "--out", str(parallel),
          "--jobs", "2"])
    assert ((serial / "sweep.csv").read_bytes()
            == (parallel / "sweep.csv").read_bytes())


def test_sweeping_the_seed_is_rejected(scenario, tmp_path, capsys):
    code = main(["sweep", "--config", scenario, "--param", "seed",
                 "--values", "3,4", "--seeds", "0",
                 "--out", str(tmp_path / "x")])
    assert code == EXIT_CONFIG
    assert "--seeds" in capsys.readouterr().err


# ---------------------------------------------------------------- oracle


def test_oracle_check_reports_ratios(scenario, capsys):
    code = main(["oracle-check", "--config", scenario, "--slots", "5"])
    assert code == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    slot_lines = [l for l in out if l.startswith("slot=")]
    assert len(slot_lines) == 5
    assert all("ratio=" in l for l in slot_lines)
    final = [l for l in out if l.startswith("final_ratio=")]
    assert len(final) == 1
    assert float(final[0].split("=")[1]) > 0.0


def test_oracle_check_rejects_large_instances(tmp_path, capsys):
    path = tmp_path / "big.scn"
    path.write_text("n_users = 7\nn_bands = 3\nmax_bands_per_user = 1\n"
                    "n_particles = 4\nn_slots = 2\n")
    code = main(["oracle-check", "--config", str(path), "--slots", "2"])
    assert code == EXIT_CONFIG
    assert "6 users" in capsys.readouterr().err


# ---------------------------------------------------------------- module


def test_module_entry_point(scenario, tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "dsapf", "run", "--config", scenario,
         "--out", str(tmp_path / "m")],
        capture_output=True, text=True)
    assert result.returncode == 0
    assert "avg_jain=" in result.stdout
