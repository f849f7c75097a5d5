from fractions import Fraction
from typing import Any, Tuple

from barylab.builtins.base import BaseFamily
from barylab.core.domains import DomainDesc
from barylab.core.strings import Str
from barylab.core.varfn import VarFn


def _coordinate_mean(column: Tuple[Any, ...]) -> Any:
    if all(isinstance(c, (int, Fraction)) for c in column):
        return Fraction(sum(column), len(column))
    return sum(float(c) for c in column) / len(column)


def barycenter(d: int) -> VarFn:
    """Barycenter of n unit masses placed at points of R^d.

    Rational coordinates accumulate exactly, anything else in floating point.
    """

    def _evaluate(x: Str) -> Tuple[Any, ...]:
        return tuple(_coordinate_mean(column) for column in zip(*x))

    return VarFn(
        name="barycenter",
        domain=DomainDesc.vectors(d),
        codomain=DomainDesc.vectors(d),
        evaluator=_evaluate,
        params={"d": d},
        diagonal_inverse=lambda n, value: value,
        epsilon_standard=True,
    )


class BarycenterFamily(BaseFamily):
    name = "barycenter"
    param_names = ("d",)

    def build(self, **params: Any) -> VarFn:
        return barycenter(int(params.get("d", 2)))
