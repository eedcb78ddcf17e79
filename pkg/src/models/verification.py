"""
Verification report models.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class CheckResult:
    name: str
    deviation: float
    tolerance: float
    skipped: bool = False
    reason: str = ""
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.skipped or self.deviation <= self.tolerance

    def to_dict(self) -> Dict:
        data = {
            "name": self.name,
            "passed": self.passed,
            "skipped": self.skipped,
            "max_deviation": self.deviation,
            "tolerance": self.tolerance,
        }
        if self.reason:
            data["reason"] = self.reason
        if self.details:
            data["details"] = self.details
        return data


@dataclass
class VerificationReport:
    group: str
    tolerance: float
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def max_deviation(self) -> float:
        return max((c.deviation for c in self.checks if not c.skipped), default=0.0)

    def check(self, name: str) -> CheckResult:
        for result in self.checks:
            if result.name == name:
                return result
        raise KeyError(name)

    def to_dict(self) -> Dict:
        return {
            "group": self.group,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "max_deviation": self.max_deviation,
            "checks": [c.to_dict() for c in self.checks],
        }
