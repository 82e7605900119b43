from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Optional

from aben.config import BenchPlan
from aben.envelope.objects import (
    serialize_cp_header,
    serialize_cp_key,
    serialize_cp_public,
    serialize_kp_header,
    serialize_kp_key,
    serialize_kp_public,
)
from aben.errors import PlanInfeasible
from aben.pairing import GroupParams, SecurityLevel, generate_params
from aben.policy import AccessTree, Gate, Leaf, satisfies
from aben.schemes import (
    cp_decrypt,
    cp_encrypt,
    cp_keygen,
    cp_setup,
    kp_decrypt,
    kp_encrypt,
    kp_keygen,
    kp_setup,
)
from aben.utils.rng import ChaChaRandom

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchRecord:
    scheme: str
    op: str
    sec_level: int
    n_attrs: int
    rep: int
    duration_ns: int
    size_bytes: int


@dataclass(frozen=True)
class TimedOperation:
    """One scheme operation over pre-built inputs.

    ``run`` is the timed region; ``size`` measures what it produced and
    stays outside the timer.
    """

    run: Callable[[], Any]
    size: Callable[[Any], int]


def workload_attributes(n: int) -> list[str]:
    return [f"a{i}" for i in range(1, n + 1)]


def workload_policy(n: int, threshold: int) -> AccessTree:
    """``threshold of (a1, ..., aN)``; the and-chain is the N-of-N gate."""

    leaves = tuple(Leaf(name) for name in workload_attributes(n))
    return AccessTree(Gate(threshold, leaves))


def prepare_operations(
    scheme: str,
    params: GroupParams,
    n: int,
    threshold: int,
    rng: random.Random,
) -> dict[str, TimedOperation]:
    """Build every input the four operations of one cell consume.

    The holder of the satisfying side gets the first ``threshold``
    attributes, so decryption combines exactly ``threshold`` leaves.
    """

    names = workload_attributes(n)
    policy = workload_policy(n, threshold)
    satisfying = names[:threshold]
    gt_size = 2 * params.field_bytes

    if scheme == "cp":
        pk, mk = cp_setup(params, rng)
        sk = cp_keygen(pk, mk, satisfying, rng)
        header, _ = cp_encrypt(pk, policy, rng)
        if not satisfies(policy, sk.attrs):
            raise PlanInfeasible(f"cp workload with N={n} is not decryptable")
        return {
            "setup": TimedOperation(
                run=lambda: cp_setup(params, rng),
                size=lambda out: len(serialize_cp_public(out[0])),
            ),
            "keygen": TimedOperation(
                run=lambda: cp_keygen(pk, mk, satisfying, rng),
                size=lambda out: len(serialize_cp_key(out, params)),
            ),
            "encrypt": TimedOperation(
                run=lambda: cp_encrypt(pk, policy, rng),
                size=lambda out: len(serialize_cp_header(out[0], params)),
            ),
            "decrypt": TimedOperation(
                run=lambda: cp_decrypt(pk, sk, header),
                size=lambda out: gt_size,
            ),
        }

    if scheme == "kp":
        pk, mk = kp_setup(params, names, rng)
        sk = kp_keygen(pk, mk, policy, rng)
        header, _ = kp_encrypt(pk, satisfying, rng)
        if not satisfies(sk.policy, header.attrs):
            raise PlanInfeasible(f"kp workload with N={n} is not decryptable")
        return {
            "setup": TimedOperation(
                run=lambda: kp_setup(params, names, rng),
                size=lambda out: len(serialize_kp_public(out[0])),
            ),
            "keygen": TimedOperation(
                run=lambda: kp_keygen(pk, mk, policy, rng),
                size=lambda out: len(serialize_kp_key(out, params)),
            ),
            "encrypt": TimedOperation(
                run=lambda: kp_encrypt(pk, satisfying, rng),
                size=lambda out: len(serialize_kp_header(out[0], params)),
            ),
            "decrypt": TimedOperation(
                run=lambda: kp_decrypt(pk, sk, header),
                size=lambda out: gt_size,
            ),
        }

    raise PlanInfeasible(f"unknown scheme '{scheme}'")


def params_for_plan(
    levels: tuple[SecurityLevel, ...],
    seed: int,
) -> dict[SecurityLevel, GroupParams]:
    generated = {}
    for level in levels:
        logger.info("Generating parameters for level %d", int(level))
        generated[level] = generate_params(level, ChaChaRandom(f"{seed}:params:{int(level)}"))
    return generated


def run_plan(
    plan: BenchPlan,
    *,
    params: Optional[Mapping[SecurityLevel, GroupParams]] = None,
) -> list[BenchRecord]:
    if params is None:
        params = params_for_plan(plan.security_levels, plan.seed)

    records: list[BenchRecord] = []
    for level in plan.security_levels:
        group = params[level]
        for scheme in plan.schemes:
            for n in plan.attribute_counts:
                logger.info("Benchmarking %s at level %d with N=%d", scheme, int(level), n)
                rng = ChaChaRandom(f"{plan.seed}:{scheme}:{int(level)}:{n}")
                operations = prepare_operations(scheme, group, n, plan.threshold(n), rng)

                for op in plan.operations:
                    records.extend(
                        _time_operation(operations[op], plan, scheme, op, int(level), n)
                    )

    return records


def _time_operation(
    operation: TimedOperation,
    plan: BenchPlan,
    scheme: str,
    op: str,
    level: int,
    n: int,
) -> list[BenchRecord]:
    for _ in range(plan.warmup):
        operation.run()

    records = []
    for rep in range(plan.repetitions):
        started = time.perf_counter_ns()
        produced = operation.run()
        elapsed = time.perf_counter_ns() - started

        records.append(
            BenchRecord(
                scheme=scheme,
                op=op,
                sec_level=level,
                n_attrs=n,
                rep=rep,
                duration_ns=max(elapsed, 1),
                size_bytes=operation.size(produced),
            )
        )
    return records
