"""Peak traced allocation of each scheme operation.

Host-side only: ``tracemalloc`` sees Python allocations, not process RSS.
"""

from __future__ import annotations

import logging
import tracemalloc
from dataclasses import dataclass
from typing import Mapping, Optional

from aben.bench.runner import params_for_plan, prepare_operations
from aben.config import MemoryPlan
from aben.pairing import GroupParams, SecurityLevel
from aben.utils.rng import ChaChaRandom

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MemoryRecord:
    scheme: str
    op: str
    sec_level: int
    n_attrs: int
    peak_bytes: int


def measure_memory(
    plan: MemoryPlan,
    *,
    params: Optional[Mapping[SecurityLevel, GroupParams]] = None,
) -> list[MemoryRecord]:
    level = plan.security_level
    if params is None:
        params = params_for_plan((level,), plan.seed)
    group = params[level]

    records = []
    for scheme in plan.schemes:
        for n in plan.attribute_counts:
            logger.info("Probing memory of %s at level %d with N=%d", scheme, int(level), n)
            rng = ChaChaRandom(f"{plan.seed}:memory:{scheme}:{int(level)}:{n}")
            operations = prepare_operations(scheme, group, n, n, rng)

            for op in plan.operations:
                tracemalloc.start()
                try:
                    tracemalloc.reset_peak()
                    operations[op].run()
                    _, peak = tracemalloc.get_traced_memory()
                finally:
                    tracemalloc.stop()

                records.append(
                    MemoryRecord(
                        scheme=scheme,
                        op=op,
                        sec_level=int(level),
                        n_attrs=n,
                        peak_bytes=peak,
                    )
                )
    return records
