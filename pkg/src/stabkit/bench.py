"""Wall-clock scaling benchmarks on random full-rank instances."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .bipartite import cnfp
from .cnf import cnf1
from .generate import random_array, random_partition
from .overlap import overlap
from .reduce import rref

ALGOS = ("cnf1", "rref", "overlap", "cnfp")
CSV_HEADER = ("n", "k", "algo", "median_us")


@dataclass(frozen=True)
class BenchRow:
    n: int
    k: int
    algo: str
    median_us: float


def _median_us(fn: Callable[[], object], reps: int) -> float:
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times) * 1e6


def bench(sizes: Iterable[int], reps: int = 3, algos: Iterable[str] = ALGOS,
          seed: int = 0) -> list[BenchRow]:
    """Median time of each algorithm on ``n``-qubit, rank-``n`` arrays."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    algos = list(algos)
    unknown = set(algos) - set(ALGOS)
    if unknown:
        raise ValueError(f"unknown algorithms {sorted(unknown)}")
    rows = []
    for n in sizes:
        a = random_array(n, n, seed)
        b = random_array(n, n, seed + 1)
        part = random_partition(n, seed) if n >= 2 else None
        jobs = {
            "cnf1": lambda: cnf1(a),
            "rref": lambda: rref(a),
            "overlap": lambda: overlap(a, b),
            "cnfp": lambda: cnfp(a, part),
        }
        for algo in algos:
            if algo == "cnfp" and part is None:
                continue
            rows.append(BenchRow(n, n, algo, _median_us(jobs[algo], reps)))
    return rows


def to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow((r.n, r.k, r.algo, f"{r.median_us:.1f}"))
    return buf.getvalue()


def fit_exponent(rows: Iterable[BenchRow], algo: str) -> float:
    """Least-squares slope of log(time) against log(n)."""
    pts = [(r.n, r.median_us) for r in rows if r.algo == algo]
    if len(pts) < 2:
        raise ValueError(f"need at least two sizes to fit {algo}")
    n, t = np.array(pts, dtype=float).T
    return float(np.polyfit(np.log(n), np.log(t), 1)[0])
