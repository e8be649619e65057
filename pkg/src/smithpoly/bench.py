"""Median-of-N benchmark runner with per-step timings.

Instances are timed sequentially by default; --jobs parallelizes across
instances only, never inside a timed run.
"""

from __future__ import annotations

import csv
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .families import FamilySpec, gen_test_matrix
from .globalsmith import smith_with_multipliers

STEP_LABELS = (
    "prime factors of det(A)",
    "local Smith forms",
    "matrix V",
    "matrix E",
)

DEFAULT_SEED = 20240613


@dataclass(frozen=True)
class BenchRow:
    family: int
    param: int
    permutation: str
    steps: dict
    total: float


def _time_instance(args) -> BenchRow:
    family, param, permutation, seed, repetitions = args
    spec = FamilySpec(family=family, param=param, seed=seed, permutation=permutation)
    A = gen_test_matrix(spec)
    per_step = {label: [] for label in STEP_LABELS}
    totals = []
    for _ in range(repetitions):
        timings: dict = {}
        t0 = time.perf_counter()
        smith_with_multipliers(A, timings=timings)
        totals.append(time.perf_counter() - t0)
        for label in STEP_LABELS:
            per_step[label].append(timings.get(label, 0.0))
    return BenchRow(
        family=family,
        param=param,
        permutation=permutation,
        steps={label: statistics.median(v) for label, v in per_step.items()},
        total=statistics.median(totals),
    )


def bench_run(
    family: int,
    params,
    permutation: str = "none",
    repetitions: int = 5,
    seed: int = DEFAULT_SEED,
    jobs: int = 1,
) -> list:
    """Median wall-clock timings over `repetitions` runs per instance."""
    work = [(family, p, permutation, seed, repetitions) for p in params]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_time_instance, work))
    else:
        rows = [_time_instance(w) for w in work]
    return rows


def format_table(rows) -> str:
    headers = ["family", "param", "permutation", *STEP_LABELS, "total"]
    table = [headers]
    for r in rows:
        table.append(
            [
                str(r.family),
                str(r.param),
                r.permutation,
                *(f"{r.steps[label]:.4f}" for label in STEP_LABELS),
                f"{r.total:.4f}",
            ]
        )
    widths = [max(len(row[i]) for row in table) for i in range(len(headers))]
    lines = []
    for row in table:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return "\n".join(lines)


def write_csv(rows, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["family", "param", "permutation", *STEP_LABELS, "total"])
        for r in rows:
            writer.writerow(
                [
                    r.family,
                    r.param,
                    r.permutation,
                    *(repr(r.steps[label]) for label in STEP_LABELS),
                    repr(r.total),
                ]
            )
