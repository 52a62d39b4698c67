from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict

STATUSES = ("pass", "fail", "vacuous", "conjecture", "inapplicable")


@dataclass
class VerificationReport:
    """One checked instance of an identity, congruence or point count.

    ``lhs``/``rhs``/``discrepancy`` are strings (exact integers, residues or
    decimal renderings) so serialized reports diff cleanly.  ``status`` is
    ``pass``/``fail``/``vacuous``/``inapplicable``; conjecture checks keep the
    raw outcome in ``outcome`` and report ``status = "conjecture"``.
    """

    theorem: str
    params: Dict[str, Any]
    lhs: str
    rhs: str
    status: str
    discrepancy: str = "0"
    comparison: str = "exact"
    outcome: str = ""
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def passed(self) -> bool:
        if self.status == "conjecture":
            return self.outcome == "pass"
        return self.status in ("pass", "vacuous", "inapplicable")

    def as_conjecture(self) -> "VerificationReport":
        self.outcome = self.status
        self.status = "conjecture"
        return self

    def to_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        if not d["extra"]:
            del d["extra"]
        if not d["outcome"]:
            del d["outcome"]
        return d


def check(theorem, params, lhs, rhs, comparison="exact", discrepancy=None, ok=None):
    """Build a report from two already-computed sides."""
    if ok is None:
        ok = lhs == rhs
    if discrepancy is None:
        discrepancy = "0" if ok else "nonzero"
    return VerificationReport(
        theorem=theorem,
        params=dict(params),
        lhs=str(lhs),
        rhs=str(rhs),
        status="pass" if ok else "fail",
        discrepancy=str(discrepancy),
        comparison=comparison,
    )
