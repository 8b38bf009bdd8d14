from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    """Outcome of one exact check.

    ``certificate`` is the precision under which equality or vanishing was
    decided (integer q-exponents unless the check says otherwise).
    """

    check: str
    passed: bool
    params: dict[str, Any] = field(default_factory=dict)
    certificate: int | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "params": self.params,
            "verdict": "pass" if self.passed else "fail",
            "prec_certificate": self.certificate,
            "details": self.details,
        }
