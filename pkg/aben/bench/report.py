from __future__ import annotations

import csv
import io
from dataclasses import astuple
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from aben.bench.memory import MemoryRecord
from aben.bench.runner import BenchRecord
from aben.bench.stats import CellSummary
from aben.errors import BenchError
from aben.utils.fs import atomic_write, read_bytes

RAW_COLUMNS = ("scheme", "op", "sec_level", "n_attrs", "rep", "duration_ns", "size_bytes")
SUMMARY_COLUMNS = ("scheme", "op", "sec_level", "n_attrs", "mean_ns", "std_ns", "min_ns", "max_ns")
MEMORY_COLUMNS = ("scheme", "op", "sec_level", "n_attrs", "peak_bytes")

Metadata = Optional[Mapping[str, object]]


def emit_csv(records: Iterable[BenchRecord], path: Path, metadata: Metadata = None) -> None:
    rows = sorted(astuple(record) for record in records)
    _write_table(path, RAW_COLUMNS, rows, metadata)


def emit_summary_csv(
    summaries: Iterable[CellSummary],
    path: Path,
    metadata: Metadata = None,
) -> None:
    rows = sorted(
        (s.scheme, s.op, s.sec_level, s.n_attrs, s.mean_ns, s.std_ns, s.min_ns, s.max_ns)
        for s in summaries
    )
    _write_table(path, SUMMARY_COLUMNS, rows, metadata)


def emit_memory_csv(
    records: Iterable[MemoryRecord],
    path: Path,
    metadata: Metadata = None,
) -> None:
    rows = sorted(astuple(record) for record in records)
    _write_table(path, MEMORY_COLUMNS, rows, metadata)


def read_records(path: Path) -> list[BenchRecord]:
    """Parse a raw CSV written by ``emit_csv``; ``#`` metadata lines are skipped."""

    text = read_bytes(path).decode("utf-8")
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    reader = csv.DictReader(lines)
    if tuple(reader.fieldnames or ()) != RAW_COLUMNS:
        raise BenchError(f"{path} is not a raw benchmark CSV")

    try:
        return [
            BenchRecord(
                scheme=row["scheme"],
                op=row["op"],
                sec_level=int(row["sec_level"]),
                n_attrs=int(row["n_attrs"]),
                rep=int(row["rep"]),
                duration_ns=int(row["duration_ns"]),
                size_bytes=int(row["size_bytes"]),
            )
            for row in reader
        ]
    except (TypeError, ValueError) as exc:
        raise BenchError(f"malformed row in {path}: {exc}") from exc


def _write_table(
    path: Path,
    columns: Sequence[str],
    rows: Iterable[Sequence[object]],
    metadata: Metadata,
) -> None:
    buffer = io.StringIO()
    for key, value in (metadata or {}).items():
        buffer.write(f"# {key}={value}\n")

    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    atomic_write(path, buffer.getvalue().encode("utf-8"))
