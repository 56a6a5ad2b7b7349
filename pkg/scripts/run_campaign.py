#!/usr/bin/env python3
"""Run the seeded LP-versus-brute-force campaign and print a per-n summary.

    python3 scripts/run_campaign.py --out campaign --n-max 6 --count 50
"""
import argparse
import sys
import time
from collections import Counter
from pathlib import Path

from ubqp_lp.campaign import CampaignAbort, CampaignConfig, run_campaign


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="campaign")
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--mode", default="exact")
    a = ap.parse_args()

    cfg = CampaignConfig(n_min=a.n_min, n_max=a.n_max, count_per_n=a.count, seed=a.seed, mode=a.mode)
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    done = Counter()

    def progress(rec):
        done[rec.n] += 1
        if done[rec.n] == cfg.count_per_n:
            print(f"  n={rec.n} done ({time.perf_counter() - t0:.0f}s)", flush=True)

    t0 = time.perf_counter()
    try:
        report = run_campaign(cfg, out / "counterexamples", progress)
    except CampaignAbort as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return 1
    report.write_csv(out / "report.csv")
    report.write_json(out / "report.json")

    print(f"{'n':>3} {'matches':>8} {'rate':>7} {'worst gap':>12}")
    for n, rate in report.match_rate().items():
        recs = [r for r in report.records if r.n == n]
        worst = min(r.gap for r in recs)
        print(f"{n:>3} {sum(r.match for r in recs):>8} {rate:>7.3f} {str(worst):>12}")
    print(f"{len(report.counterexamples)} counterexample bundle(s) in {out / 'counterexamples'}")
    print(f"total {time.perf_counter() - t0:.1f}s")
    return 0 if report.all_matched else 2


if __name__ == "__main__":
    sys.exit(main())
