import json

import pytest

from satlab import (
    ExperimentConfig,
    RngHandle,
    convergence_table,
    records_to_csv,
    records_to_json,
    run,
    wsat_formula,
)
from satlab.experiment import BASE_COLUMNS, ExperimentRecord


def weak_config(**kw):
    base = dict(mode="weak", n_values=[30], p=0.5, s=3, trials=3, master_seed=6)
    base.update(kw)
    return ExperimentConfig(**base)


def synthetic_records(ratios_by_n):
    return [
        ExperimentRecord(
            mode="strong",
            n=n,
            p=0.5,
            s=3,
            trial_index=i,
            seed=0,
            edge_count=1,
            formula_baseline=1.0,
            ratio=r,
            verified=True,
        )
        for n, ratios in ratios_by_n.items()
        for i, r in enumerate(ratios)
    ]


# -- config validation -------------------------------------------------------


def test_config_rejects_unknown_mode():
    with pytest.raises(ValueError):
        ExperimentConfig(mode="bogus", n_values=[10]).validate()


def test_config_rejects_empty_n_and_bad_counts():
    with pytest.raises(ValueError):
        ExperimentConfig(mode="weak", n_values=[]).validate()
    with pytest.raises(ValueError):
        ExperimentConfig(mode="weak", n_values=[10], trials=0).validate()
    with pytest.raises(ValueError):
        ExperimentConfig(mode="weak", n_values=[10], out_format="xml").validate()
    with pytest.raises(ValueError):
        ExperimentConfig(mode="naive-compare", n_values=[300], s=4).validate()


# -- runs ---------------------------------------------------------------------


def test_weak_mode_records_shape_and_order():
    records, summary = run(weak_config())
    assert [r.trial_index for r in records] == [0, 1, 2]
    assert all(r.mode == "weak" and r.n == 30 for r in records)
    assert all(r.formula_baseline == wsat_formula(30, 3) for r in records)
    assert summary["records"] == 3
    verified = [r for r in records if r.verified]
    assert all(r.edge_count == wsat_formula(30, 3) for r in verified)


def test_rerun_reproduces_records():
    a, _ = run(weak_config())
    b, _ = run(weak_config())
    for x, y in zip(a, b):
        assert (x.seed, x.edge_count, x.verified, x.aux) == (y.seed, y.edge_count, y.verified, y.aux)


def test_growing_trials_keeps_earlier_records():
    a, _ = run(weak_config(trials=2))
    b, _ = run(weak_config(trials=4))
    for x, y in zip(a, b):
        assert (x.trial_index, x.seed, x.edge_count) == (y.trial_index, y.seed, y.edge_count)


def test_jobs_do_not_change_results():
    a, _ = run(weak_config(trials=4, jobs=1))
    b, _ = run(weak_config(trials=4, jobs=2))
    assert [(r.seed, r.edge_count, r.verified) for r in a] == [
        (r.seed, r.edge_count, r.verified) for r in b
    ]


def test_oracle_sweep_matches_formula():
    cfg = ExperimentConfig(mode="oracle-sweep", n_values=[4, 5], master_seed=0)
    records, summary = run(cfg)
    assert summary["all_verified"]
    for r in records:
        assert r.edge_count == r.aux["wsat_value"] == wsat_formula(r.n, r.s)


def test_edgecover_mode_records_bound_and_measurement():
    cfg = ExperimentConfig(
        mode="edgecover", n_values=[30], p=0.5, s=3, trials=2, master_seed=1, num_pairs=5000
    )
    records, summary = run(cfg)
    assert summary["all_verified"]
    for r in records:
        assert 0.0 <= r.aux["measured_fraction"] <= r.formula_baseline


def test_goodness_mode_runs():
    cfg = ExperimentConfig(
        mode="goodness", n_values=[120], p=0.5, trials=1, master_seed=2, t=2, gamma=0.05, samples=50
    )
    records, _ = run(cfg)
    assert records[0].aux["p1_ok"] and records[0].aux["p2_ok"]


# -- convergence table --------------------------------------------------------


def test_convergence_trend_true_for_decreasing_ratios():
    table = convergence_table(synthetic_records({100: [1.8], 200: [1.5], 400: [1.3]}))
    assert table.trend
    assert [row["n"] for row in table.rows] == [100, 200, 400]


def test_convergence_trend_false_for_increasing_ratios():
    assert not convergence_table(synthetic_records({100: [1.2], 200: [1.4]})).trend


def test_convergence_requires_two_sizes():
    with pytest.raises(ValueError):
        convergence_table(synthetic_records({100: [1.0, 1.1]}))


# -- serialization ------------------------------------------------------------


def test_csv_columns_and_determinism(tmp_path):
    records, _ = run(weak_config())
    text = records_to_csv(records)
    header = text.splitlines()[0].split(",")
    assert header[: len(BASE_COLUMNS)] == list(BASE_COLUMNS)
    assert all(col.startswith("aux_") for col in header[len(BASE_COLUMNS) :])
    assert "wall" not in text
    records2, _ = run(weak_config())
    assert records_to_csv(records2) == text


def test_json_matches_csv_fields():
    records, _ = run(weak_config())
    rows = json.loads(records_to_json(records))
    header = records_to_csv(records).splitlines()[0].split(",")
    assert list(rows[0].keys()) == header
    assert rows[0]["verified"] in (True, False)


def test_output_file_written(tmp_path):
    out = tmp_path / "records.json"
    cfg = weak_config(out_path=str(out), out_format="json")
    run(cfg)
    rows = json.loads(out.read_text())
    assert len(rows) == 3


def test_output_write_failure_names_path():
    cfg = weak_config(out_path="/nonexistent-dir/records.csv")
    with pytest.raises(OSError) as err:
        run(cfg)
    assert "/nonexistent-dir/records.csv" in str(err.value)
