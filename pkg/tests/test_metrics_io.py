"""CSV writers: exact headers, repr round-trips, byte-stable reruns."""

import numpy as np
import pytest

from dsapf.engine import run
from dsapf.metrics_io import (SLOT_COLUMNS, SUMMARY_COLUMNS, SWEEP_COLUMNS,
                              _cell, summary_row, sweep_table, write_run,
                              write_sweep)
from dsapf.system import SystemConfig, validate


def tiny_run(**kw):
    base = dict(n_users=4, n_bands=3, max_bands_per_user=1, n_particles=5,
                n_slots=6, seed=2)
    base.update(kw)
    return run(validate(SystemConfig(**base)))


def test_cell_formatting():
    assert _cell(3) == "3"
    assert _cell(np.int64(-2)) == "-2"
    assert _cell(True) == "1"
    assert _cell(np.bool_(False)) == "0"
    assert _cell(0.1) == "0.1"
    assert _cell("sum") == "sum"
    third = 1.0 / 3.0
    assert float(_cell(third)) == third


def test_write_run_layout(tmp_path):
    summary, records = tiny_run()
    slots_path, summary_path = write_run(records, summary, str(tmp_path))
    slots = (tmp_path / "slots.csv").read_text().splitlines()
    head = (tmp_path / "summary.csv").read_text().splitlines()
    assert slots_path.endswith("slots.csv")
    assert summary_path.endswith("summary.csv")
    assert slots[0] == ",".join(SLOT_COLUMNS)
    assert len(slots) == 1 + 6
    assert head[0] == ",".join(SUMMARY_COLUMNS)
    assert len(head) == 2


def test_written_values_round_trip(tmp_path):
    summary, records = tiny_run()
    write_run(records, summary, str(tmp_path))
    rows = (tmp_path / "slots.csv").read_text().splitlines()[1:]
    for rec, row in zip(records, rows):
        cells = row.split(",")
        assert int(cells[0]) == rec.slot
        assert float(cells[2]) == rec.jain
        assert float(cells[4]) == rec.realized_rates.mean()
    srow = (tmp_path / "summary.csv").read_text().splitlines()[1].split(",")
    assert int(srow[0]) == 2
    assert srow[1] == "sum"
    assert float(srow[7]) == summary.per_user_avg_throughput
    assert float(srow[8]) == summary.avg_jain


def test_reruns_are_byte_identical(tmp_path):
    s1, r1 = tiny_run()
    s2, r2 = tiny_run()
    write_run(r1, s1, str(tmp_path / "a"))
    write_run(r2, s2, str(tmp_path / "b"))
    for name in ("slots.csv", "summary.csv"):
        assert ((tmp_path / "a" / name).read_bytes()
                == (tmp_path / "b" / name).read_bytes())


def test_summary_row_mirrors_config():
    summary, _ = tiny_run(objective="maxmin", pu_busy_prob=0.25)
    row = summary_row(summary)
    assert row[:7] == [2, "maxmin", 4, 3, 1, 5, 0.25]
    assert row[7] == summary.per_user_avg_throughput
    assert row[9] == summary.total_messages


def test_sweep_table_sorted_and_aggregated():
    groups = []
    for ns in (8, 5):   # deliberately unsorted
        summaries = [tiny_run(n_particles=ns, seed=s)[0] for s in (0, 1)]
        groups.append((ns, summaries))
    rows = sweep_table(groups, "n_particles")
    assert [r[1] for r in rows] == [5, 5, 5, 8, 8, 8]
    assert [r[2] for r in rows[:3]] == ["avg_throughput_bps", "avg_jain",
                                        "total_messages"]
    five = [s.per_user_avg_throughput
            for ns, summaries in groups if ns == 5 for s in summaries]
    assert rows[0][3] == pytest.approx(np.mean(five), rel=1e-12)
    assert rows[0][4] == pytest.approx(np.std(five), rel=1e-12)
    assert all(r[0] == "n_particles" for r in rows)


def test_sweep_table_rejects_mixed_configs():
    a = tiny_run(n_particles=5)[0]
    b = tiny_run(n_particles=8, n_bands=4)[0]   # second difference
    with pytest.raises(ValueError, match="n_particles"):
        sweep_table([(5, [a]), (8, [b])], "n_particles")


def test_write_sweep_file(tmp_path):
    summaries = [tiny_run(seed=s)[0] for s in (0, 1)]
    rows = sweep_table([(5, summaries)], "n_particles")
    path = write_sweep(rows, str(tmp_path))
    lines = (tmp_path / "sweep.csv").read_text().splitlines()
    assert path.endswith("sweep.csv")
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    assert len(lines) == 1 + 3
