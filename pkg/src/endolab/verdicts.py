"""Three-valued verdicts and the exception vocabulary shared by all layers.

A Verdict is True, False (with an optional witness), or undecided when an
enumeration cap was hit.  Suites must treat undecided as "skip with notice",
never as a pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional


class CapExceeded(Exception):
    """An enumeration would produce more objects than the configured cap."""

    def __init__(self, total: int, cap: int, what: str = "elements"):
        super().__init__(f"{total} {what} exceeds cap {cap}")
        self.total = total
        self.cap = cap
        self.what = what


class InternalInconsistency(Exception):
    """Two independent decision routes disagreed; signals an implementation bug."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure: True / False(witness) / undecided."""

    value: Optional[bool]
    witness: Any = None
    reason: str = ""

    @staticmethod
    def yes(reason: str = "") -> "Verdict":
        return Verdict(True, reason=reason)

    @staticmethod
    def no(witness: Any = None, reason: str = "") -> "Verdict":
        return Verdict(False, witness=witness, reason=reason)

    @staticmethod
    def undecided(reason: str) -> "Verdict":
        return Verdict(None, reason=reason)

    @property
    def decided(self) -> bool:
        return self.value is not None

    def __bool__(self) -> bool:
        if self.value is None:
            raise ValueError(f"undecided verdict used as boolean: {self.reason}")
        return self.value

    def describe(self) -> str:
        if self.value is None:
            return f"undecided ({self.reason})"
        if self.value:
            return "true"
        return f"false (witness: {self.witness!r})" if self.witness is not None else "false"


def agree(name: str, *verdicts: Verdict) -> Verdict:
    """Merge independent routes that must agree wherever decided.

    Raises InternalInconsistency on any decided disagreement; returns the
    first decided verdict, or undecided if none is.
    """
    decided = [v for v in verdicts if v.decided]
    if not decided:
        reasons = "; ".join(v.reason for v in verdicts)
        return Verdict.undecided(f"{name}: all routes undecided ({reasons})")
    values = {v.value for v in decided}
    if len(values) > 1:
        raise InternalInconsistency(
            f"{name}: independent routes disagree: "
            + ", ".join(v.describe() for v in verdicts)
        )
    return decided[0]


@dataclass(frozen=True)
class Caps:
    """Enumeration caps: ring/module elements, submodules, hom-group elements."""

    elements: int = 4096
    submodules: int = 512
    homs: int = 4096
