"""Three-valued answers for partially decidable questions."""
from dataclasses import dataclass
from typing import Any


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


@dataclass(frozen=True)
class Trivial:
    witness: Any = None

    name = "Trivial"

    def to_json(self):
        return {"verdict": self.name, "witness": _jsonable(self.witness), "reason": None}


@dataclass(frozen=True)
class Nontrivial:
    obstruction: Any = None

    name = "Nontrivial"

    def to_json(self):
        return {"verdict": self.name, "witness": _jsonable(self.obstruction), "reason": None}


@dataclass(frozen=True)
class Unknown:
    reason: str = ""

    name = "Unknown"

    def to_json(self):
        return {"verdict": self.name, "witness": None, "reason": self.reason}


@dataclass(frozen=True)
class Absent:
    """A search result that found nothing.  reason is a short tag."""

    reason: str
    detail: str = ""

    def __bool__(self):
        return False

    def to_json(self):
        return {"absent": self.reason, "detail": self.detail}


NOT_ACYCLIC = "NotAcyclic"
NOT_NULLHOMOTOPIC = "NotNullhomotopic"
UNKNOWN = "Unknown"
