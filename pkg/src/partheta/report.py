"""Structured pass/fail records shared by the zero-finder, spectrum and check suite."""
from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

PASS = "pass"
FAIL = "fail"
CONJECTURE_PASS = "conjecture_pass"
CONJECTURE_VIOLATION = "conjecture_violation"
SKIPPED = "skipped"
STATUSES = (PASS, FAIL, CONJECTURE_PASS, CONJECTURE_VIOLATION, SKIPPED)


def fmt(value, digits: int = 20) -> str:
    """Decimal string for an mpf/int/float; other objects go through str()."""
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(value, digits, strip_zeros=False, min_fixed=-8, max_fixed=8)
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass
class Witness:
    input: str
    value: str
    bound: str
    ok: bool

    def as_dict(self) -> dict:
        return {"input": self.input, "value": self.value, "bound": self.bound, "ok": self.ok}


@dataclass
class CheckReport:
    claim_id: str
    status: str
    witnesses: list[Witness] = field(default_factory=list)
    notes: str = ""
    citations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status in (PASS, CONJECTURE_PASS, SKIPPED)

    def as_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "status": self.status,
            "witnesses": [w.as_dict() for w in self.witnesses],
            "notes": self.notes,
            "citations": list(self.citations),
        }


def status_from(witnesses, proven: bool = True) -> str:
    if not witnesses:
        return SKIPPED
    good = all(w.ok for w in witnesses)
    if proven:
        return PASS if good else FAIL
    return CONJECTURE_PASS if good else CONJECTURE_VIOLATION
