import csv
import json
from fractions import Fraction

import pytest

from ubqp_lp import campaign
from ubqp_lp.campaign import CSV_COLUMNS, CampaignAbort, CampaignConfig, derived_seed, run_campaign
from ubqp_lp.cli import main


def small(**kw):
    base = dict(n_min=3, n_max=5, count_per_n=4, seed=7)
    base.update(kw)
    return CampaignConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        CampaignConfig(n_min=2)
    with pytest.raises(ValueError):
        CampaignConfig(n_min=6, n_max=5)
    with pytest.raises(ValueError):
        CampaignConfig(count_per_n=0)
    with pytest.raises(ValueError):
        CampaignConfig(n_max=30)


def test_derived_seeds_are_distinct_and_stable():
    seeds = {derived_seed(42, n, i) for n in range(3, 9) for i in range(200)}
    assert len(seeds) == 1200
    assert derived_seed(42, 3, 0) == derived_seed(42, 3, 0)


def test_small_campaign_records():
    rep = run_campaign(small())
    assert len(rep.records) == 12
    assert all(r.lower_bound_ok and r.match for r in rep.records)
    assert all(r.recovered_is_argmin for r in rep.records)
    assert set(rep.match_rate()) == {3, 4, 5}


def test_campaign_is_deterministic(tmp_path):
    a, b = run_campaign(small()), run_campaign(small())
    strip = lambda r: {k: v for k, v in r.row().items() if k != "wall_time"}  # noqa: E731
    assert [strip(r) for r in a.records] == [strip(r) for r in b.records]


def test_real_and_float_campaigns():
    rep = run_campaign(small(domain="real", lo=-1, hi=1, count_per_n=2))
    assert all(r.match for r in rep.records)
    rep = run_campaign(small(mode="float", count_per_n=2))
    assert all(r.match and isinstance(r.lp_objective, float) for r in rep.records)


def test_reports_written(tmp_path):
    rep = run_campaign(small(count_per_n=2))
    rep.write_csv(tmp_path / "r.csv")
    rep.write_json(tmp_path / "r.json")
    rows = list(csv.DictReader(open(tmp_path / "r.csv")))
    assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == 6
    data = json.loads((tmp_path / "r.json").read_text())
    assert data["instances"] == 6 and data["lower_bound_ok"]


def _shift_oracle(monkeypatch, delta):
    real = campaign.brute_force_min

    def shifted(inst, cap):
        value, argmins = real(inst, cap)
        return value + delta, argmins

    monkeypatch.setattr(campaign, "brute_force_min", shifted)


def test_mismatch_is_bundled(monkeypatch, tmp_path):
    # pretend the binary optimum is higher: LP strictly below it
    _shift_oracle(monkeypatch, Fraction(1))
    rep = run_campaign(small(n_max=3, count_per_n=2), tmp_path / "cx")
    assert not rep.all_matched and len(rep.counterexamples) == 2
    bundle = json.loads(rep.counterexamples[0].read_text())
    assert {"instance", "lp_solution", "implied_x", "record"} <= set(bundle)
    assert bundle["record"]["gap"] == "-1"


def test_gap_above_epsilon_aborts(monkeypatch, tmp_path):
    _shift_oracle(monkeypatch, Fraction(-1))
    with pytest.raises(CampaignAbort, match="must be a lower bound"):
        run_campaign(small(n_max=3, count_per_n=1), tmp_path)
    assert list(tmp_path.glob("counterexample_*.json"))


def test_cli_exit_codes(monkeypatch, tmp_path):
    args = ["verify", "--n-min", "3", "--n-max", "3", "--count", "2", "--out", str(tmp_path / "ok")]
    assert main(args) == 0
    _shift_oracle(monkeypatch, Fraction(1))
    args[-1] = str(tmp_path / "bad")
    assert main(args) == 2
    assert list((tmp_path / "bad" / "counterexamples").glob("*.json"))
    _shift_oracle(monkeypatch, Fraction(-5))
    args[-1] = str(tmp_path / "abort")
    assert main(args) == 1
