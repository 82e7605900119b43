import random
import sys
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError

from aben.bench import (
    emit_csv,
    emit_memory_csv,
    emit_summary_csv,
    measure_memory,
    run_plan,
    summarize,
)
from aben.config import BenchPlan, MemoryPlan
from aben.envelope import (
    ObjectType,
    deserialize_cp_key,
    deserialize_cp_master,
    deserialize_cp_public,
    deserialize_kp_key,
    deserialize_kp_master,
    deserialize_kp_public,
    open_envelope,
    peek_object,
    seal,
    serialize_cp_key,
    serialize_cp_master,
    serialize_cp_public,
    serialize_envelope,
    serialize_kp_key,
    serialize_kp_master,
    serialize_kp_public,
)
from aben.errors import AbenError, ConfigError, MalformedKey
from aben.logger import setup_logger
from aben.pairing import (
    GroupParams,
    SecurityLevel,
    generate_params,
    parse_params_text,
    render_params_text,
    toy_params,
)
from aben.policy import parse_policy
from aben.schemes import CpPublicParams, cp_keygen, cp_setup, kp_keygen, kp_setup
from aben.utils.fs import atomic_write, read_bytes
from aben.utils.rng import ChaChaRandom, system_random


app = typer.Typer(
    name="aben",
    help="aben: attribute-based encryption over Type-A pairings, with a benchmark harness",
    add_completion=False,
)

@app.callback()
def main(
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Enable verbose logging",
    ),
):

    setup_logger(verbose=verbose)


@app.command()
def bench(
    scheme: str = typer.Option("both", "--scheme", help="cp, kp or both"),
    op: str = typer.Option(
        "setup,keygen,encrypt,decrypt",
        "--op",
        help="Comma-separated operations to time",
    ),
    attrs: str = typer.Option("1..30", "--attrs", help="Attribute counts, e.g. 1..30 or 1,5,10"),
    levels: str = typer.Option("80,112,128", "--levels", help="Comma-separated security levels"),
    reps: int = typer.Option(100, "--reps", help="Timed repetitions per cell"),
    shape: str = typer.Option("and", "--shape", help="Workload shape: and or kofn"),
    k: Optional[int] = typer.Option(None, "--k", help="Threshold for the kofn shape"),
    seed: int = typer.Option(0, "--seed", help="Seed of the run"),
    out: Path = typer.Option(..., "--out", "-o", help="Raw CSV destination"),
    summary: bool = typer.Option(
        False,
        "--summary",
        help="Also write per-cell statistics to <out>.summary.csv",
    ),
    warmup: int = typer.Option(0, "--warmup", help="Untimed runs before each cell"),
):

    try:
        plan = _build_plan(
            BenchPlan,
            scheme=scheme,
            operations=_split(op),
            attribute_counts=_parse_counts(attrs),
            security_levels=[_parse_int(level, "--levels") for level in _split(levels)],
            repetitions=reps,
            seed=seed,
            shape=shape,
            k=k,
            warmup=warmup,
            output=out,
            summary=summary,
        )

        typer.echo(f"Running {plan.cell_count()} cells x {plan.repetitions} repetitions")
        records = run_plan(plan)

        metadata = {
            "shape": plan.shape if plan.shape == "and" else f"kofn(k={plan.k})",
            "seed": plan.seed,
            "warmup": plan.warmup,
            "hash_to_group": "inside timed region",
            "file_io": "outside timed region",
        }
        emit_csv(records, out, metadata)
        typer.echo(f"Wrote {len(records)} records to {out}")

        if plan.summary:
            summary_path = out.with_suffix(".summary.csv")
            emit_summary_csv(summarize(records), summary_path, metadata)
            typer.echo(f"Wrote summary to {summary_path}")

    except AbenError as exc:
        _fail(exc)

    except Exception:
        _internal_error()
        raise


@app.command()
def memory(
    scheme: str = typer.Option("both", "--scheme", help="cp, kp or both"),
    op: str = typer.Option("setup,keygen,encrypt,decrypt", "--op"),
    attrs: str = typer.Option("10,100,1000", "--attrs", help="Attribute counts to probe"),
    level: int = typer.Option(80, "--level", help="Security level"),
    seed: int = typer.Option(0, "--seed"),
    out: Path = typer.Option(..., "--out", "-o", help="CSV destination"),
):

    try:
        plan = _build_plan(
            MemoryPlan,
            scheme=scheme,
            operations=_split(op),
            attribute_counts=_parse_counts(attrs),
            security_level=level,
            seed=seed,
            output=out,
        )
        records = measure_memory(plan)
        emit_memory_csv(records, out, {"probe": "tracemalloc peak", "seed": plan.seed})
        typer.echo(f"Wrote {len(records)} records to {out}")

    except AbenError as exc:
        _fail(exc)

    except Exception:
        _internal_error()
        raise


@app.command()
def params(
    level: int = typer.Option(80, "--level", help="80, 112, 128, or 0 for the toy curve"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    out: Path = typer.Option(..., "--out", "-o"),
):

    try:
        typer.echo(f"Generating parameters for level {level}")
        group = _group_params(None, level, _rng(seed))
        atomic_write(out, render_params_text(group).encode("utf-8"))
        typer.echo(f"Parameters written to {out}")

    except AbenError as exc:
        _fail(exc)


@app.command()
def setup(
    scheme: str = typer.Option(..., "--scheme", help="cp or kp"),
    params_file: Optional[Path] = typer.Option(None, "--params", help="Parameter file from `aben params`"),
    level: int = typer.Option(80, "--level", help="Used when --params is absent; 0 is the toy curve"),
    universe: Optional[str] = typer.Option(None, "--universe", help="kp only: comma-separated attributes"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    pub: Path = typer.Option(..., "--pub", help="Public key file (.aben-pub)"),
    msk: Path = typer.Option(..., "--msk", help="Master key file (.aben-msk)"),
):

    try:
        rng = _rng(seed)
        group = _group_params(params_file, level, rng)

        if scheme == "cp":
            pk, mk = cp_setup(group, rng)
            pub_bytes = serialize_cp_public(pk)
            msk_bytes = serialize_cp_master(mk, group)
        elif scheme == "kp":
            if not universe:
                raise ConfigError("kp setup requires --universe")
            pk, mk = kp_setup(group, _split(universe), rng)
            pub_bytes = serialize_kp_public(pk)
            msk_bytes = serialize_kp_master(mk, group)
        else:
            raise ConfigError(f"Unknown scheme '{scheme}' (expected cp or kp)")

        atomic_write(pub, pub_bytes)
        atomic_write(msk, msk_bytes)
        typer.echo(f"Public key written to {pub}")
        typer.echo(f"Master key written to {msk}")

    except AbenError as exc:
        _fail(exc)


@app.command()
def keygen(
    pub: Path = typer.Option(..., "--pub", help="Public key file (.aben-pub)"),
    msk: Path = typer.Option(..., "--msk", help="Master key file (.aben-msk)"),
    attrs: Optional[str] = typer.Option(None, "--attrs", help="cp: comma-separated attributes"),
    policy: Optional[str] = typer.Option(None, "--policy", help="kp: access policy"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    out: Path = typer.Option(..., "--out", "-o", help="Private key destination (.aben-key)"),
):

    try:
        pk = _load_public(pub)
        rng = _rng(seed)

        if isinstance(pk, CpPublicParams):
            if not attrs:
                raise ConfigError("cp keygen requires --attrs")
            mk = deserialize_cp_master(read_bytes(msk), pk.params)
            key_bytes = serialize_cp_key(cp_keygen(pk, mk, _split(attrs), rng), pk.params)
        else:
            if not policy:
                raise ConfigError("kp keygen requires --policy")
            mk = deserialize_kp_master(read_bytes(msk), pk.params)
            key_bytes = serialize_kp_key(kp_keygen(pk, mk, parse_policy(policy), rng), pk.params)

        atomic_write(out, key_bytes)
        typer.echo(f"Private key written to {out}")

    except AbenError as exc:
        _fail(exc)


@app.command()
def encrypt(
    pub: Path = typer.Option(..., "--pub", help="Public key file (.aben-pub)"),
    policy: Optional[str] = typer.Option(None, "--policy", help="cp: access policy"),
    attrs: Optional[str] = typer.Option(None, "--attrs", help="kp: comma-separated attributes"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    input_file: Path = typer.Option(..., "--in"),
    out: Path = typer.Option(..., "--out", "-o", help="Envelope destination (.aben-ct)"),
):

    try:
        pk = _load_public(pub)

        if isinstance(pk, CpPublicParams):
            if not policy:
                raise ConfigError("cp encryption requires --policy")
            target = parse_policy(policy)
        else:
            if not attrs:
                raise ConfigError("kp encryption requires --attrs")
            target = _split(attrs)

        envelope = seal(pk, target, read_bytes(input_file), _rng(seed))
        atomic_write(out, serialize_envelope(envelope, pk.params.level_byte))
        typer.echo(f"Envelope written to {out}")

    except AbenError as exc:
        _fail(exc)


@app.command()
def decrypt(
    pub: Path = typer.Option(..., "--pub", help="Public key file (.aben-pub)"),
    key: Path = typer.Option(..., "--key", help="Private key file (.aben-key)"),
    input_file: Path = typer.Option(..., "--in", help="Envelope to open (.aben-ct)"),
    out: Path = typer.Option(..., "--out", "-o"),
):

    try:
        pk = _load_public(pub)
        if isinstance(pk, CpPublicParams):
            sk = deserialize_cp_key(read_bytes(key), pk.params)
        else:
            sk = deserialize_kp_key(read_bytes(key), pk.params)

        payload = open_envelope(pk, sk, read_bytes(input_file))
        atomic_write(out, payload)
        typer.echo(f"Payload written to {out}")

    except AbenError as exc:
        _fail(exc)


def _load_public(path: Path):
    data = read_bytes(path)
    object_type, _ = peek_object(data, MalformedKey)
    if object_type == ObjectType.CP_PUBLIC:
        return deserialize_cp_public(data)
    if object_type == ObjectType.KP_PUBLIC:
        return deserialize_kp_public(data)
    raise MalformedKey(f"{path} holds a {object_type.name} object, not a public key", offset=5)


def _group_params(params_file: Optional[Path], level: int, rng: random.Random) -> GroupParams:
    if params_file is not None:
        return parse_params_text(read_bytes(params_file).decode("utf-8"))
    if level == 0:
        return toy_params()
    if level not in {int(known) for known in SecurityLevel}:
        raise ConfigError(f"Unknown security level {level} (expected 80, 112, 128 or 0)")
    return generate_params(level, rng)


def _rng(seed: Optional[int]) -> random.Random:
    return system_random() if seed is None else ChaChaRandom(seed)


def _build_plan(model, **fields):
    try:
        return model(**fields)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}"
            for error in exc.errors()
        )
        raise ConfigError(f"Invalid options: {problems}") from exc


def _split(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _parse_int(text: str, option: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{option}: '{text}' is not an integer") from None


def _parse_counts(text: str) -> list[int]:
    """``1..30``, ``1,5,10`` or a mix such as ``1..5,10``."""

    counts: list[int] = []
    for item in _split(text):
        if ".." in item:
            low, high = item.split("..", 1)
            start, stop = _parse_int(low, "--attrs"), _parse_int(high, "--attrs")
            if start > stop:
                raise ConfigError(f"--attrs: empty range '{item}'")
            counts.extend(range(start, stop + 1))
        else:
            counts.append(_parse_int(item, "--attrs"))
    return counts


def _fail(exc: AbenError) -> None:
    typer.secho(f"Error: {exc}", fg=typer.colors.RED, err=True)
    sys.exit(exc.exit_code)


def _internal_error() -> None:
    typer.secho(
        "Internal error occurred. Run with --verbose for details.",
        fg=typer.colors.RED,
        err=True,
    )


def run_cli() -> None:
    app()


if __name__ == "__main__":
    run_cli()
