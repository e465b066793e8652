from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


@dataclass(frozen=True)
class Verdict:
    """Outcome of a certificate check; truthy when the check passed."""

    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


OK = Verdict(True)


def fail(reason: str) -> Verdict:
    return Verdict(False, reason)


class Tri(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TriStatus:
    """Three-valued answer; Yes/No carry checkable evidence, Unknown the exhausted budget."""

    value: Tri
    evidence: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def yes(self) -> bool:
        return self.value is Tri.YES

    @property
    def no(self) -> bool:
        return self.value is Tri.NO

    @property
    def unknown(self) -> bool:
        return self.value is Tri.UNKNOWN

    def to_dict(self) -> dict:
        return {"value": self.value.value, "evidence": self.evidence}
