from typing import Any, Dict, List, Literal, Optional

import orjson
from pydantic import BaseModel, ConfigDict

from barylab.core.strings import string_to_jsonable, to_jsonable

PASS = "pass"
FAIL = "fail"
UNSUPPORTED = "unsupported"

Status = Literal["pass", "fail", "unsupported"]


class Witness(BaseModel):
    """Strings and the two unequal values that refute a property."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    x: Optional[tuple] = None
    y: Optional[tuple] = None
    y_prime: Optional[tuple] = None
    z: Optional[tuple] = None
    x_prime: Optional[tuple] = None
    z_prime: Optional[tuple] = None
    lhs: Any = None
    rhs: Any = None
    note: Optional[str] = None

    def to_jsonable(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for key in ("x", "y", "y_prime", "z", "x_prime", "z_prime"):
            value = getattr(self, key)
            if value is not None:
                out[key] = string_to_jsonable(value)
        out["lhs"] = to_jsonable(self.lhs)
        out["rhs"] = to_jsonable(self.rhs)
        if self.note:
            out["note"] = self.note
        return out


class SpaceInfo(BaseModel):
    mode: str
    domain: str
    max_len: int
    seed: int
    atoms: int
    samples: Optional[int] = None
    instances: int = 0
    evaluations: int = 0


class PropertyReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    property: str
    function: str
    status: Status
    space: Optional[SpaceInfo] = None
    witness: Optional[Witness] = None
    detail: Optional[str] = None
    critical: bool = False
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    @property
    def mode(self) -> Optional[str]:
        return self.space.mode if self.space else None

    def verdict(self) -> str:
        """'pass (sampled)', 'fail', ... as shown to users."""
        if self.status == PASS and self.mode == "sampled":
            return "pass (sampled)"
        return self.status

    def to_jsonable(self, timings: bool = False) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "property": self.property,
            "function": self.function,
            "status": self.status,
            "space": self.space.model_dump() if self.space else None,
            "witness": self.witness.to_jsonable() if self.witness else None,
            "seed": self.space.seed if self.space else None,
        }
        if self.detail:
            out["detail"] = self.detail
        if self.critical:
            out["critical"] = True
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


class EquivalenceVerdict(BaseModel):
    """Both sides of one theorem-mandated equivalence, checked independently."""

    theorem: str
    lhs: str
    rhs: str
    lhs_status: str
    rhs_status: str
    agree: bool
    critical: bool = False
    detail: Optional[str] = None


def dumps(payload: Any) -> bytes:
    """Stable JSON: sorted keys, two-space indent, trailing newline."""
    return orjson.dumps(payload, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE)


def reports_to_jsonable(reports: List[PropertyReport], timings: bool = False) -> List[Dict[str, Any]]:
    return [r.to_jsonable(timings=timings) for r in reports]
