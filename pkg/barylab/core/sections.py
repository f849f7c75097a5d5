from dataclasses import dataclass
from typing import Any, Callable, Mapping, Sequence, Union

from barylab.core.errors import ArityExceeded
from barylab.core.varfn import VarFn, evaluate


@dataclass(frozen=True)
class DiagonalSections:
    """delta(x) = F(x^n), delta_r(x, y) = F(x^(n-1) y), delta_l(x, y) = F(x y^(n-1)).

    For n = 1 both side sections are F_1 itself and take one argument.
    """

    n: int
    delta: Callable[[Any], Any]
    delta_r: Callable[..., Any]
    delta_l: Callable[..., Any]

    def side(self, u: str) -> Callable[..., Any]:
        if u == "r":
            return self.delta_r
        if u in ("l", "ℓ"):
            return self.delta_l
        raise ValueError(f"side marker must be 'l' or 'r', got {u!r}")


def sections(F: VarFn, n: int) -> DiagonalSections:
    if n < 1:
        raise ValueError("sections are defined for n >= 1")
    if F.max_arity is not None and n > F.max_arity:
        raise ArityExceeded(n, F.max_arity)

    def delta(x: Any) -> Any:
        return evaluate(F, (x,) * n)

    if n == 1:
        return DiagonalSections(n=1, delta=delta, delta_r=delta, delta_l=delta)

    def delta_r(x: Any, y: Any) -> Any:
        return evaluate(F, (x,) * (n - 1) + (y,))

    def delta_l(x: Any, y: Any) -> Any:
        return evaluate(F, (x,) + (y,) * (n - 1))

    return DiagonalSections(n=n, delta=delta, delta_r=delta_r, delta_l=delta_l)


def side_for(sides: Union[str, Sequence[str], Mapping[int, str]], k: int) -> str:
    """The side marker for arity k: one marker for all arities, a sequence
    starting at arity 2, or a mapping (missing arities default to "r")."""
    if isinstance(sides, Mapping):
        u = sides.get(k, "r")
    elif isinstance(sides, str):
        u = sides
    else:
        u = sides[min(max(k - 2, 0), len(sides) - 1)] if sides else "r"
    u = "l" if u == "ℓ" else u
    if u not in ("l", "r"):
        raise ValueError(f"side marker must be 'l' or 'r', got {u!r}")
    return u
