import json

import pytest

from tmib.errors import ConfigInvalid
from tmib.verify import SUITES, RunConfig, run_verify, suite_rng


def test_config_validation():
    with pytest.raises(ConfigInvalid):
        RunConfig(N=4)
    with pytest.raises(ConfigInvalid):
        RunConfig(N=100)
    with pytest.raises(ConfigInvalid):
        RunConfig(count=0)
    with pytest.raises(ConfigInvalid):
        RunConfig(suites=("weights", "nope"))
    with pytest.raises(ConfigInvalid):
        RunConfig(suites=())
    with pytest.raises(ConfigInvalid):
        RunConfig(tight=-1.0)


def test_config_from_dict():
    cfg = RunConfig.from_dict({"grid": {"T": 4, "N": 128}, "tolerances": {"tight": 1e-8},
                               "corpus": {"seed": 3, "count": 2}, "suites": ["fourier"]})
    assert (cfg.T, cfg.N, cfg.tight, cfg.loose, cfg.seed, cfg.count) == (4, 128, 1e-8, 1e-6, 3, 2)
    assert cfg.suites == ("fourier",)
    assert RunConfig.from_dict(cfg.to_dict()) == cfg
    with pytest.raises(ConfigInvalid):
        RunConfig.from_dict({"grid": {"N": 4}})
    with pytest.raises(ConfigInvalid):
        RunConfig.from_dict({"colour": "blue"})
    with pytest.raises(ConfigInvalid):
        RunConfig.from_dict([1, 2])


def test_suite_streams_are_independent():
    a = suite_rng(5, "fourier").normal(size=3)
    b = suite_rng(5, "weights").normal(size=3)
    c = suite_rng(5, "fourier").normal(size=3)
    assert (a == c).all() and not (a == b).all()


def test_report_structure(tmp_path):
    out = tmp_path / "r.json"
    report = run_verify(RunConfig(suites=("fourier", "separation-demo"), count=2,
                                  output=str(out)))
    data = json.loads(out.read_text())
    assert data["schema"] == 1
    assert data["summary"]["total"] == len(data["records"]) == len(report.records)
    assert data["summary"]["fail"] == 0
    keys = {"suite", "check_id", "paper_ref", "lhs", "rhs", "tolerance", "status", "grid",
            "wall_time"}
    for rec in data["records"]:
        assert set(rec) == keys
        assert rec["status"] in ("pass", "fail", "skip")
        assert isinstance(rec["paper_ref"], str) and rec["paper_ref"]
    assert [r["suite"] for r in data["records"]] == sorted(
        (r["suite"] for r in data["records"]), key=("fourier", "separation-demo").index)


def test_determinism_and_parallel_order():
    cfg = RunConfig(suites=("weights", "fourier", "tensor-prop51"), seed=1, count=3)
    a = run_verify(cfg).body_bytes()
    b = run_verify(RunConfig(**{**cfg.__dict__, "jobs": 3})).body_bytes()
    assert a == b
    c = run_verify(RunConfig(**{**cfg.__dict__, "seed": 2})).body_bytes()
    assert a != c


def test_every_suite_runs_clean_on_a_small_grid():
    report = run_verify(RunConfig(T=4, N=128, count=2))
    assert {r.suite for r in report.records} == set(SUITES)
    assert report.summary["fail"] == 0, [r.check_id for r in report.failures]
