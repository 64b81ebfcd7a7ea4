from __future__ import annotations

from dataclasses import dataclass

from .scalars import Field


@dataclass(frozen=True)
class CheckReport:
    """Outcome of an axiom check.

    On failure ``failed_axiom`` is the label of the first failing axiom (in
    the checker's fixed order), ``witness`` the lexicographically first
    basis tuple where it fails and ``residual`` the nonzero left-minus-right
    coordinates there, as canonical scalar strings.
    """

    passed: bool
    checker: str
    failed_axiom: str | None = None
    witness: tuple[int, ...] | None = None
    residual: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.passed and self.witness is not None:
            raise ValueError("a passing report carries no witness")
        if not self.passed and (self.residual is None or all(r == "0" for r in self.residual)):
            raise ValueError("a failing report needs a nonzero residual")

    def __bool__(self) -> bool:
        return self.passed

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    @classmethod
    def ok(cls, checker: str) -> CheckReport:
        return cls(True, checker)

    @classmethod
    def failure(cls, checker: str, axiom: str, witness, residual, field: Field) -> CheckReport:
        return cls(
            False,
            checker,
            axiom,
            tuple(int(i) for i in witness),
            tuple(field.format_value(v) for v in residual),
        )

    def relabel(self, checker: str) -> CheckReport:
        return CheckReport(self.passed, checker, self.failed_axiom, self.witness, self.residual)

    def to_dict(self) -> dict:
        out = {"checker": self.checker, "verdict": self.verdict}
        if not self.passed:
            out["failed_axiom"] = self.failed_axiom
            out["witness"] = list(self.witness)
            out["residual"] = list(self.residual)
        return out

    def __str__(self) -> str:
        if self.passed:
            return f"{self.checker}: pass"
        return (
            f"{self.checker}: FAIL {self.failed_axiom} at {self.witness}"
            f" residual [{', '.join(self.residual)}]"
        )
