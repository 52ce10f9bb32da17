"""Machine-readable outcome of a single named check."""

from __future__ import annotations

import enum
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Any


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


def jsonable(obj: Any) -> Any:
    """Convert payloads to plain JSON types; rationals become ``"num/den"`` strings."""
    from .exactpoly import BiDegree, Poly, scalar_text

    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, Fraction):
        return scalar_text(obj)
    if isinstance(obj, BiDegree):
        return [obj.a, obj.b]
    if isinstance(obj, Poly):
        return obj.to_text()
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=repr) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


@dataclass
class VerificationReport:
    check_id: str
    status: Status
    expected: Any = None
    computed: Any = None
    witness: str | None = None
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    @property
    def ok(self) -> bool:
        return self.status is not Status.FAIL

    def to_dict(self, deterministic: bool = False) -> dict:
        return {
            "check_id": self.check_id,
            "status": self.status.value,
            "expected": jsonable(self.expected),
            "computed": jsonable(self.computed),
            "witness": self.witness,
            "elapsed_ms": 0 if deterministic else int(self.elapsed_ms),
        }

    def to_json(self, deterministic: bool = False) -> str:
        return json.dumps(self.to_dict(deterministic))

    def line(self) -> str:
        return f"{self.status.value:<7} {self.check_id}  ({self.elapsed_ms} ms)"


def verdict(ok: bool) -> Status:
    return Status.PASS if ok else Status.FAIL


@contextmanager
def stopwatch():
    """Yields a one-element list that holds elapsed milliseconds on exit."""
    box = [0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = int((time.perf_counter() - t0) * 1000)
