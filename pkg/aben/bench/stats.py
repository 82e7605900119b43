from __future__ import annotations

import statistics as stats
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from aben.bench.runner import BenchRecord
from aben.errors import EmptyCell

# (scheme, op, sec_level, n_attrs)
CellKey = tuple[str, str, int, int]


@dataclass(frozen=True)
class CellSummary:
    scheme: str
    op: str
    sec_level: int
    n_attrs: int
    mean_ns: float
    std_ns: float
    min_ns: int
    max_ns: int
    count: int

    @property
    def key(self) -> CellKey:
        return (self.scheme, self.op, self.sec_level, self.n_attrs)


def cell_key(record: BenchRecord) -> CellKey:
    return (record.scheme, record.op, record.sec_level, record.n_attrs)


def summarize(
    records: Iterable[BenchRecord],
    expected_cells: Optional[Iterable[CellKey]] = None,
) -> list[CellSummary]:
    """Mean, sample standard deviation, min and max per cell, sorted by cell.

    Every cell in ``expected_cells`` must have at least one record.
    """

    grouped: dict[CellKey, list[int]] = defaultdict(list)
    for record in records:
        grouped[cell_key(record)].append(record.duration_ns)

    for key in expected_cells or ():
        if key not in grouped:
            raise EmptyCell(f"no records for cell {key}")

    return [summarize_cell(key, grouped[key]) for key in sorted(grouped)]


def summarize_cell(key: CellKey, durations: Sequence[int]) -> CellSummary:
    if not durations:
        raise EmptyCell(f"no records for cell {key}")

    # a single sample has no spread
    std = float(stats.stdev(durations)) if len(durations) > 1 else 0.0
    scheme, op, level, n = key
    return CellSummary(
        scheme=scheme,
        op=op,
        sec_level=level,
        n_attrs=n,
        mean_ns=float(stats.mean(durations)),
        std_ns=std,
        min_ns=min(durations),
        max_ns=max(durations),
        count=len(durations),
    )


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float, float]:
    """Least-squares ``y = slope * x + intercept`` and its R^2."""

    slope, intercept = stats.linear_regression(xs, ys)
    mean_y = stats.mean(ys)
    ss_tot = sum((y - mean_y) ** 2 for y in ys)
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot else 1.0
    return slope, intercept, r_squared
