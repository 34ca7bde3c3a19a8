"""Check reports produced by the property checkers."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    name: str
    tested: int = 0
    failures: list = field(default_factory=list)
    inconclusive: int = 0
    skipped: int = 0
    notes: list = field(default_factory=list)

    def fail(self, *detail) -> None:
        self.failures.append(detail)

    @property
    def passed(self) -> bool:
        return not self.failures and not self.inconclusive

    def passed_allowing_inconclusive(self) -> bool:
        return not self.failures

    def status(self, allow_inconclusive: bool = False) -> int:
        """CLI exit status: 0 pass, 1 failures, 2 inconclusive only."""
        if self.failures:
            return 1
        if self.inconclusive and not allow_inconclusive:
            return 2
        return 0

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.tested += other.tested
        self.failures.extend(other.failures)
        self.inconclusive += other.inconclusive
        self.skipped += other.skipped
        self.notes.extend(other.notes)
        return self

    def line(self) -> str:
        verdict = "PASS" if self.passed else ("FAIL" if self.failures else "INCONCLUSIVE")
        return (f"{self.name:<28} {verdict:<12} tested={self.tested} failures={len(self.failures)} "
                f"inconclusive={self.inconclusive} skipped={self.skipped}")

    def __bool__(self) -> bool:
        return self.passed
