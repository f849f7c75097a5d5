import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from barylab.config import SAMPLING
from barylab.core.errors import EmptyDomain
from barylab.core.strings import is_numeric


FINITE = "finite"
REAL_INTERVAL = "real_interval"
VECTOR_SPACE = "vector_space"


@dataclass(frozen=True)
class DomainDesc:
    kind: str
    elements: Tuple[Any, ...] = ()
    lo: float = -math.inf
    hi: float = math.inf
    lo_closed: bool = False
    hi_closed: bool = False
    dimension: int = 0
    _positions: Dict[Any, int] = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.kind == FINITE:
            if not self.elements:
                raise EmptyDomain("finite domains must be nonempty")
            positions = {}
            for i, atom in enumerate(self.elements):
                if atom in positions:
                    raise ValueError(f"duplicate atom {atom!r} in finite domain")
                positions[atom] = i
            object.__setattr__(self, "_positions", positions)
        elif self.kind == REAL_INTERVAL:
            if not self.lo < self.hi:
                raise ValueError(f"real interval needs lo < hi, got [{self.lo}, {self.hi}]")
        elif self.kind == VECTOR_SPACE:
            if self.dimension < 1:
                raise ValueError("vector space dimension must be a positive integer")
        else:
            raise ValueError(f"unknown domain kind: {self.kind}")

    # ── constructors ─────────────────────────────────────────────────────────

    @classmethod
    def finite(cls, elements: Sequence[Any]) -> "DomainDesc":
        return cls(kind=FINITE, elements=tuple(elements))

    @classmethod
    def interval(cls, lo: float, hi: float, lo_closed: bool = False, hi_closed: bool = False) -> "DomainDesc":
        return cls(kind=REAL_INTERVAL, lo=lo, hi=hi,
                   lo_closed=lo_closed and math.isfinite(lo),
                   hi_closed=hi_closed and math.isfinite(hi))

    @classmethod
    def reals(cls) -> "DomainDesc":
        return cls.interval(-math.inf, math.inf)

    @classmethod
    def positive_reals(cls) -> "DomainDesc":
        return cls.interval(0.0, math.inf)

    @classmethod
    def vectors(cls, dimension: int) -> "DomainDesc":
        return cls(kind=VECTOR_SPACE, dimension=dimension)

    # ── queries ──────────────────────────────────────────────────────────────

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def contains(self, atom: Any) -> bool:
        if self.kind == FINITE:
            try:
                return atom in self._positions
            except TypeError:
                return False
        if self.kind == REAL_INTERVAL:
            if not is_numeric(atom):
                return False
            v = float(atom)
            if not math.isfinite(v):
                return False
            above = v >= self.lo if self.lo_closed else v > self.lo
            below = v <= self.hi if self.hi_closed else v < self.hi
            return above and below
        return (
            isinstance(atom, tuple)
            and len(atom) == self.dimension
            and all(is_numeric(c) and math.isfinite(float(c)) for c in atom)
        )

    def index(self, atom: Any) -> int:
        return self._positions[atom]

    def window(self, width: float = SAMPLING["window"]) -> Tuple[float, float]:
        """Finite bounds for drawing points; unbounded ends are clamped."""
        if self.kind != REAL_INTERVAL:
            raise ValueError(f"{self.describe()} is not a real interval")
        lo = self.lo if math.isfinite(self.lo) else (self.hi - 2 * width if math.isfinite(self.hi) else -width)
        hi = self.hi if math.isfinite(self.hi) else (self.lo + width if math.isfinite(self.lo) else width)
        return lo, hi

    def grid(self, count: int) -> List[float]:
        """``count`` evenly spaced points strictly inside the window."""
        lo, hi = self.window()
        return [float(v) for v in np.linspace(lo, hi, count + 2)[1:-1]]

    def quantile(self, q: float) -> float:
        lo, hi = self.window()
        return lo + q * (hi - lo)

    def describe(self) -> str:
        if self.kind == FINITE:
            return "{" + ", ".join(repr(a) for a in self.elements) + "}"
        if self.kind == REAL_INTERVAL:
            left = "[" if self.lo_closed else "("
            right = "]" if self.hi_closed else ")"
            return f"{left}{self.lo}, {self.hi}{right}"
        return f"R^{self.dimension}"
