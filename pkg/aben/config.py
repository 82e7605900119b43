from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from aben.errors import ConfigError
from aben.pairing.params import SecurityLevel

Operation = Literal["setup", "keygen", "encrypt", "decrypt"]
ALL_OPERATIONS: tuple[Operation, ...] = ("setup", "keygen", "encrypt", "decrypt")


class BenchPlan(BaseModel):
    scheme: Literal["cp", "kp", "both"] = Field(
        default="both",
        description="Scheme(s) to benchmark",
    )
    operations: tuple[Operation, ...] = Field(
        default=ALL_OPERATIONS,
        description="Operations timed in every cell",
    )
    attribute_counts: tuple[int, ...] = Field(
        default=tuple(range(1, 31)),
        description="Attribute counts N swept per security level",
    )
    security_levels: tuple[SecurityLevel, ...] = Field(
        default=(SecurityLevel.L80, SecurityLevel.L112, SecurityLevel.L128),
        description="Security levels; parameters are generated once per level",
    )
    repetitions: int = Field(
        default=100,
        description="Timed executions per cell",
    )
    seed: int = Field(
        default=0,
        description="Seed of every randomness stream in the run",
    )
    shape: Literal["and", "kofn"] = Field(
        default="and",
        description="Workload shape: N-of-N chain or k-of-N threshold",
    )
    k: Optional[int] = Field(
        default=None,
        description="Threshold of the k-of-N shape",
    )
    warmup: int = Field(
        default=0,
        description="Untimed executions before the timed repetitions of a cell",
    )
    output: Optional[Path] = Field(
        default=None,
        description="CSV destination",
    )
    summary: bool = Field(
        default=False,
        description="Also write per-cell statistics next to the raw CSV",
    )

    @field_validator("operations", "security_levels")
    @classmethod
    def validate_non_empty(cls, value: tuple) -> tuple:
        if not value:
            raise ConfigError("At least one operation and one security level are required")
        return tuple(dict.fromkeys(value))

    @field_validator("attribute_counts")
    @classmethod
    def validate_attribute_counts(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if not value:
            raise ConfigError("At least one attribute count is required")
        if any(n < 1 for n in value):
            raise ConfigError("Attribute counts must be at least 1")
        return tuple(dict.fromkeys(value))

    @field_validator("repetitions")
    @classmethod
    def validate_repetitions(cls, value: int) -> int:
        if value < 1:
            raise ConfigError("Repetitions must be at least 1")
        return value

    @field_validator("warmup")
    @classmethod
    def validate_warmup(cls, value: int) -> int:
        if value < 0:
            raise ConfigError("Warm-up count cannot be negative")
        return value

    @model_validator(mode="after")
    def validate_shape(self) -> "BenchPlan":
        if self.shape == "kofn":
            if self.k is None:
                raise ConfigError("The kofn shape requires --k")
            if not 1 <= self.k <= min(self.attribute_counts):
                raise ConfigError(
                    f"k = {self.k} must lie in 1..{min(self.attribute_counts)} "
                    "(the smallest attribute count)"
                )
        return self

    @property
    def schemes(self) -> tuple[str, ...]:
        return ("cp", "kp") if self.scheme == "both" else (self.scheme,)

    def threshold(self, n: int) -> int:
        return n if self.shape == "and" else self.k

    def cell_count(self) -> int:
        return (
            len(self.schemes)
            * len(self.operations)
            * len(self.security_levels)
            * len(self.attribute_counts)
        )

    class Config:
        frozen = True


class MemoryPlan(BaseModel):
    scheme: Literal["cp", "kp", "both"] = Field(
        default="both",
        description="Scheme(s) to probe",
    )
    operations: tuple[Operation, ...] = Field(
        default=ALL_OPERATIONS,
        description="Operations measured in every cell",
    )
    attribute_counts: tuple[int, ...] = Field(
        default=(10, 100, 1000),
        description="Attribute counts probed",
    )
    security_level: SecurityLevel = Field(
        default=SecurityLevel.L80,
        description="Security level of the probe",
    )
    seed: int = Field(
        default=0,
        description="Seed of every randomness stream in the run",
    )
    output: Optional[Path] = Field(
        default=None,
        description="CSV destination",
    )

    @field_validator("operations")
    @classmethod
    def validate_operations(cls, value: tuple) -> tuple:
        if not value:
            raise ConfigError("At least one operation is required")
        return tuple(dict.fromkeys(value))

    @field_validator("attribute_counts")
    @classmethod
    def validate_attribute_counts(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if not value or any(n < 1 for n in value):
            raise ConfigError("Attribute counts must be non-empty and at least 1")
        return tuple(dict.fromkeys(value))

    @property
    def schemes(self) -> tuple[str, ...]:
        return ("cp", "kp") if self.scheme == "both" else (self.scheme,)

    class Config:
        frozen = True
