"""Seeded LP-versus-brute-force comparison over random instances."""
from __future__ import annotations

import csv
import hashlib
import json
import logging
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .instance import INTEGER, DOMAINS, UbqpInstance, instance_to_dict, random_instance
from .lift import LiftedPoint, NonBinaryRecoveryError, implied_x, recover_x
from .lpsolve import DANTZIG, OPTIMAL, LpProblem, SolveOptions, solve
from .numeric import EXACT, MODES, as_fraction, format_rational
from .oracle import DEFAULT_CAP, brute_force_min
from .reduction import assemble

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "n",
    "index",
    "seed",
    "lp_objective",
    "bf_objective",
    "gap",
    "match",
    "lower_bound_ok",
    "recovered_x",
    "recovery_residual",
    "recovered_is_argmin",
    "solve_iterations",
    "dropped_rows",
    "wall_time",
)


class CampaignAbort(RuntimeError):
    """LP optimum above the binary optimum: a solver or reduction bug."""


@dataclass
class CampaignConfig:
    n_min: int = 3
    n_max: int = 8
    count_per_n: int = 200
    lo: object = -50
    hi: object = 50
    domain: str = INTEGER
    epsilon: object = Fraction(1, 10**6)
    seed: int = 42
    mode: str = EXACT
    pivot: str = DANTZIG
    oracle_cap: int = DEFAULT_CAP

    def __post_init__(self):
        if not 3 <= self.n_min <= self.n_max <= self.oracle_cap:
            raise ValueError(f"need 3 <= n_min <= n_max <= {self.oracle_cap}, got {self.n_min}..{self.n_max}")
        if self.count_per_n < 1:
            raise ValueError("count_per_n must be >= 1")
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        self.epsilon = as_fraction(self.epsilon)
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")


def derived_seed(seed: int, n: int, index: int) -> int:
    digest = hashlib.sha256(f"{seed}:{n}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass
class Record:
    n: int
    index: int
    seed: int
    lp_objective: object
    bf_objective: Fraction
    gap: object
    match: bool
    lower_bound_ok: bool
    recovered_x: Optional[tuple]
    recovery_residual: object
    recovered_is_argmin: bool
    solve_iterations: int
    dropped_rows: int
    wall_time: float

    def row(self) -> dict:
        def fmt(v):
            return format_rational(v) if isinstance(v, Fraction) else v

        out = {k: fmt(v) for k, v in asdict(self).items()}
        out["recovered_x"] = "" if self.recovered_x is None else "".join(map(str, self.recovered_x))
        out["wall_time"] = f"{self.wall_time:.4f}"
        return out


@dataclass
class CampaignReport:
    config: CampaignConfig
    records: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)  # paths of written bundles

    def match_rate(self) -> dict:
        out = {}
        for n in range(self.config.n_min, self.config.n_max + 1):
            recs = [r for r in self.records if r.n == n]
            if recs:
                out[n] = sum(r.match for r in recs) / len(recs)
        return out

    @property
    def all_matched(self) -> bool:
        return all(r.match for r in self.records)

    def summary(self) -> dict:
        cfg = {k: (format_rational(v) if isinstance(v, Fraction) else v) for k, v in asdict(self.config).items()}
        return {
            "config": cfg,
            "instances": len(self.records),
            "matches": sum(r.match for r in self.records),
            "match_rate": {str(k): v for k, v in self.match_rate().items()},
            "lower_bound_ok": all(r.lower_bound_ok for r in self.records),
            "counterexamples": [str(p) for p in self.counterexamples],
        }

    def write_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
            w.writeheader()
            for r in sorted(self.records, key=lambda r: (r.n, r.index)):
                w.writerow(r.row())

    def write_json(self, path) -> None:
        data = self.summary()
        data["records"] = [r.row() for r in sorted(self.records, key=lambda r: (r.n, r.index))]
        Path(path).write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")


def write_bundle(directory, inst: UbqpInstance, sol, record: Record, implied) -> Path:
    """Everything needed to replay one mismatch."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    path = d / f"counterexample_n{record.n}_i{record.index}.json"
    data = {
        "instance": instance_to_dict(inst),
        "derived_seed": record.seed,
        "lp_solution": sol.to_dict(),
        "implied_x": [format_rational(v) if isinstance(v, Fraction) else v for v in implied],
        "record": record.row(),
    }
    path.write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")
    return path


def run_instance(cfg: CampaignConfig, n: int, index: int):
    seed = derived_seed(cfg.seed, n, index)
    inst = random_instance(n, cfg.lo, cfg.hi, cfg.domain, seed)
    t0 = time.perf_counter()
    lp = assemble(inst)
    sol = solve(LpProblem.from_assembled(lp), SolveOptions(mode=cfg.mode, pivot=cfg.pivot))
    bf, argmins = brute_force_min(inst, cfg.oracle_cap)
    elapsed = time.perf_counter() - t0
    if sol.status != OPTIMAL:
        raise CampaignAbort(f"n={n} index={index}: LP status {sol.status}")
    off = 8 * lp.layout.N
    w = LiftedPoint.from_w(sol.primal[off:], n)
    implied = implied_x(w)
    try:
        rec = recover_x(w)
        rx, resid = rec.x, rec.residual
    except NonBinaryRecoveryError as exc:
        rx, resid = None, exc.residual
    lp_obj = sol.objective
    gap = lp_obj - bf if cfg.mode == EXACT else lp_obj - float(bf)
    eps = cfg.epsilon if cfg.mode == EXACT else float(cfg.epsilon)
    lower_ok = gap <= 0 if cfg.mode == EXACT else gap <= eps
    record = Record(
        n=n,
        index=index,
        seed=seed,
        lp_objective=lp_obj,
        bf_objective=bf,
        gap=gap,
        match=abs(gap) < eps,
        lower_bound_ok=lower_ok,
        recovered_x=rx,
        recovery_residual=resid,
        recovered_is_argmin=rx is not None and rx in argmins,
        solve_iterations=sol.iterations,
        dropped_rows=len(sol.dropped_redundant_rows),
        wall_time=elapsed,
    )
    return record, inst, sol, implied


def run_campaign(cfg: CampaignConfig, counterexample_dir=None, progress=None) -> CampaignReport:
    report = CampaignReport(cfg)
    for n in range(cfg.n_min, cfg.n_max + 1):
        for i in range(cfg.count_per_n):
            record, inst, sol, implied = run_instance(cfg, n, i)
            if not record.lower_bound_ok:
                where = write_bundle(counterexample_dir or ".", inst, sol, record, implied)
                raise CampaignAbort(
                    f"LP optimum {record.lp_objective} exceeds brute force {record.bf_objective} "
                    f"(n={n}, index={i}); the LP relaxation must be a lower bound, so this is a bug. "
                    f"Replay bundle: {where}"
                )
            if not record.match:
                if counterexample_dir is not None:
                    report.counterexamples.append(write_bundle(counterexample_dir, inst, sol, record, implied))
                log.warning("mismatch at n=%d index=%d: gap %s", n, i, record.gap)
            report.records.append(record)
            if progress:
                progress(record)
    return report
