from __future__ import annotations

from typing import Iterable


class AbenError(Exception):
    exit_code: int = 1

    def __init__(self, message: str):
        super().__init__(message)


class ConfigError(AbenError):
    exit_code = 2


class ParameterSearchExhausted(AbenError):
    exit_code = 10


class InvalidGroupParams(AbenError):
    exit_code = 11


class NotInSubgroup(AbenError):
    exit_code = 12


class HashToPointFailure(AbenError):
    exit_code = 13


class PolicyError(AbenError):
    exit_code = 20


class PolicySyntaxError(PolicyError):
    exit_code = 20

    def __init__(self, message: str, *, position: int, expected: Iterable[str]):
        self.position = position
        self.expected = frozenset(expected)
        wanted = ", ".join(sorted(self.expected)) or "nothing"
        super().__init__(f"{message} at position {position} (expected: {wanted})")


class ThresholdOutOfRange(PolicyError):
    exit_code = 21


class InvalidAttribute(PolicyError):
    exit_code = 22


class DuplicateEvaluationPoint(PolicyError):
    exit_code = 23


class NotSatisfied(PolicyError):
    exit_code = 24


class SchemeError(AbenError):
    exit_code = 30


class PolicyNotSatisfied(NotSatisfied):
    exit_code = 30


class EmptyAttributeSet(SchemeError):
    exit_code = 31


class UnknownAttribute(SchemeError):
    exit_code = 32


class DuplicateUniverseAttribute(SchemeError):
    exit_code = 33


class DecodeError(AbenError):
    exit_code = 40

    def __init__(self, reason: str, *, offset: int):
        self.reason = reason
        self.offset = offset
        super().__init__(f"{reason} (at byte offset {offset})")


class MalformedEnvelope(DecodeError):
    exit_code = 40


class MalformedKey(DecodeError):
    exit_code = 41


class AuthenticationFailure(AbenError):
    exit_code = 42


class BenchError(AbenError):
    exit_code = 50


class PlanInfeasible(BenchError):
    exit_code = 50


class EmptyCell(BenchError):
    exit_code = 51
