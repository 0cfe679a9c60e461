"""Pass/fail records for extensional checks, with JSON and CSV renderings."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Optional

from .mapset import SCHEMA
from .perm import format_word

__all__ = ["VerificationReport", "PASS", "FAIL", "ERROR", "summary_csv"]

PASS = "pass"
FAIL = "fail"
ERROR = "error"


@dataclass(frozen=True)
class VerificationReport:
    name: str
    n: int
    status: str
    t: Optional[int] = None
    witness: Optional[str] = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @classmethod
    def from_outcome(cls, name: str, n: int, ok: bool, t: Optional[int] = None,
                     witness=None, detail: str = "") -> "VerificationReport":
        if witness is not None and not isinstance(witness, str):
            witness = format_word(witness)
        return cls(name, n, PASS if ok else FAIL, t, witness, detail)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "check": self.name,
            "n": self.n,
            "t": self.t,
            "status": self.status,
            "witness": self.witness,
            "detail": self.detail,
        }

    def line(self) -> str:
        where = f"n={self.n}" + (f" t={self.t}" if self.t is not None else "")
        tail = f" witness=({self.witness})" if self.witness else ""
        extra = f" {self.detail}" if self.detail else ""
        return f"{self.status.upper():5} {self.name} [{where}]{tail}{extra}"


def summary_csv(reports: Iterable[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "n", "t", "status", "witness"])
    for r in reports:
        w.writerow([r.name, r.n, "" if r.t is None else r.t, r.status, r.witness or ""])
    return buf.getvalue()
