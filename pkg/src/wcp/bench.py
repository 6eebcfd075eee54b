"""Experiment orchestration: run strategy variants over instance sets.

Results go to CSV, one row per (instance, init, delta). Reruns with the
same seeds are bit-identical in single-threaded mode; an existing output
file is treated as a partial result and completed (resume by row key).
"""

from __future__ import annotations

import csv
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .engine import SolveLimits, solve
from .initflow import INIT_STRATEGIES
from .model import WindFarm, farm_from_dict, farm_to_dict

CSV_FIELDS = [
    "instance",
    "init",
    "delta",
    "seed",
    "cost",
    "wall_time_ms",
    "iterations",
    "cancellations",
    "status",
]


@dataclass
class ExperimentRow:
    instance: str
    init: str
    delta: str
    seed: int
    cost: str
    wall_time_ms: float
    iterations: int
    cancellations: int
    status: str

    def key(self):
        return (self.instance, self.init, self.delta, str(self.seed))

    def as_list(self):
        return [
            self.instance,
            self.init,
            self.delta,
            self.seed,
            self.cost,
            f"{self.wall_time_ms:.3f}",
            self.iterations,
            self.cancellations,
            self.status,
        ]


def _run_one(args) -> ExperimentRow:
    name, farm_dict, init_name, delta_name, seed, limits = args
    farm = farm_from_dict(farm_dict)
    try:
        # Wall clock brackets initialization through termination.
        t0 = time.perf_counter()
        sol = solve(farm, INIT_STRATEGIES[init_name], delta_name, limits=limits, seed=seed)
        wall = (time.perf_counter() - t0) * 1000
        return ExperimentRow(
            name, init_name, delta_name, seed, str(sol.cost), wall,
            sol.iterations, sol.cancellations,
            "exhausted" if sol.exhausted else "limit",
        )
    except Exception as exc:  # recorded, not fatal
        return ExperimentRow(name, init_name, delta_name, seed, "", 0.0, 0, 0, f"error: {exc}")


def run_experiment(
    instances: list[tuple[str, WindFarm]],
    variants: list[tuple[str, str]],
    limits: SolveLimits | None = None,
    seed: int = 0,
    jobs: int = 1,
    out_csv: str | None = None,
) -> list[ExperimentRow]:
    """Run every variant on every instance; returns (and appends) rows."""
    done: dict[tuple, ExperimentRow] = {}
    if out_csv and os.path.exists(out_csv):
        with open(out_csv) as fh:
            for rec in csv.DictReader(fh):
                row = ExperimentRow(
                    rec["instance"], rec["init"], rec["delta"], int(rec["seed"]),
                    rec["cost"], float(rec["wall_time_ms"]), int(rec["iterations"]),
                    int(rec["cancellations"]), rec["status"],
                )
                done[row.key()] = row

    tasks = []
    for name, farm in instances:
        fd = farm_to_dict(farm)
        for init_name, delta_name in variants:
            if (name, init_name, delta_name, str(seed)) in done:
                continue
            tasks.append((name, fd, init_name, delta_name, seed, limits))

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            fresh = list(pool.map(_run_one, tasks))
    else:
        fresh = [_run_one(t) for t in tasks]
    for row in fresh:
        done[row.key()] = row

    # Deterministic output order: instance order, then variant order.
    ordered = []
    for name, _ in instances:
        for init_name, delta_name in variants:
            key = (name, init_name, delta_name, str(seed))
            if key in done:
                ordered.append(done[key])

    if out_csv:
        with open(out_csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_FIELDS)
            for row in ordered:
                writer.writerow(row.as_list())
    return ordered


def mean_over_inits(rows: list[ExperimentRow]) -> dict[tuple[str, str], Fraction]:
    """Mean solution value per (delta, instance) over all init strategies."""
    buckets: dict[tuple[str, str], list[Fraction]] = {}
    for row in rows:
        if row.status.startswith("error") or not row.cost:
            continue
        buckets.setdefault((row.delta, row.instance), []).append(Fraction(row.cost))
    return {k: sum(v) / len(v) for k, v in buckets.items()}
