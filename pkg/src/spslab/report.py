"""Validation reports and the exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    axiom: str
    message: str
    witness: Any = None

    def __str__(self) -> str:
        return f"[{self.axiom}] {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a total validation function.

    ``value`` carries the constructed object when validation passes, so
    callers that only want the object can go through :meth:`unwrap`.
    """

    violations: tuple[Violation, ...] = ()
    value: Any = field(default=None, compare=False, repr=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "pass" if self.ok else "fail"

    def unwrap(self) -> Any:
        if not self.ok:
            raise InvalidInstance(self)
        return self.value

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        return "fail: " + "; ".join(str(v) for v in self.violations)


class SpsLabError(Exception):
    pass


class InputError(SpsLabError, ValueError):
    """A caller passed something outside an operation's precondition."""


class InvalidInstance(SpsLabError):
    """Raised when an object is built from data that fails validation."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(str(report))


class Counterexample(SpsLabError):
    """A construction whose correctness is asserted but not guaranteed failed.

    ``kind`` names the failed condition; ``witness`` holds the concrete data
    (state pairs, property names) that exhibits the failure.
    """

    def __init__(self, kind: str, message: str, witness: Any = None):
        self.kind = kind
        self.message = message
        self.witness = witness
        super().__init__(f"{kind}: {message}")
