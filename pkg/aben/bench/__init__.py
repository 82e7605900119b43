from aben.bench.memory import MemoryRecord, measure_memory
from aben.bench.report import (
    emit_csv,
    emit_memory_csv,
    emit_summary_csv,
    read_records,
)
from aben.bench.runner import BenchRecord, run_plan
from aben.bench.stats import CellSummary, linear_fit, summarize

__all__ = [
    "BenchRecord",
    "CellSummary",
    "MemoryRecord",
    "emit_csv",
    "emit_memory_csv",
    "emit_summary_csv",
    "linear_fit",
    "measure_memory",
    "read_records",
    "run_plan",
    "summarize",
]
