"""Exception hierarchy shared by every module."""

from __future__ import annotations


class BiHomError(Exception):
    """Base class for all library errors."""


class FieldMismatch(BiHomError):
    pass


class DivisionByZero(BiHomError, ZeroDivisionError):
    pass


class DimensionMismatch(BiHomError):
    pass


class MissingComponent(BiHomError):
    pass


class KindMismatch(BiHomError):
    pass


class PrerequisiteFailed(BiHomError):
    """A hypothesis of a checker or construction does not hold.

    ``label`` names the broken hypothesis; ``report`` is the failing
    :class:`~bihomns.report.CheckReport` when one exists.
    """

    def __init__(self, label: str, report=None, message: str | None = None):
        self.label = label
        self.report = report
        if message is None:
            message = f"precondition failed: {label}"
            if report is not None and not report.passed:
                message += f" ({report.failed_axiom} at {report.witness})"
        super().__init__(message)


class ConstructionFailed(BiHomError):
    """A construction's output did not pass its own verification."""

    def __init__(self, name: str, report):
        self.name = name
        self.report = report
        super().__init__(f"{name}: output failed {report.failed_axiom} at {report.witness}")


class ConsistencyError(BiHomError):
    """Two independent evaluation routes disagreed."""


class ParseError(BiHomError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}")
        if path:
            where.append(f"at {path}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class ValidationError(BiHomError):
    pass


class SpaceTooLarge(BiHomError):
    pass


class UnknownChecker(BiHomError):
    pass


class UnknownIdentity(BiHomError):
    pass
