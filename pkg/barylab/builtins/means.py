import math
from typing import Any, Optional

from barylab.builtins.base import BaseFamily
from barylab.builtins.generators import (
    GeneratorSpec,
    identity,
    log,
    named_generator,
    reciprocal,
    with_named_outer,
)
from barylab.core.errors import GeneratorNotInvertible
from barylab.core.strings import Str
from barylab.core.varfn import VarFn


def _idempotent_inverse(n: int, value: Any) -> Any:
    return value


def quasi_arithmetic(g: GeneratorSpec, name: Optional[str] = None) -> VarFn:
    """F_n(x) = f^-1((1/n) sum f(x_i))."""
    g.validate()

    def _evaluate(x: Str) -> float:
        return g.f_inv(math.fsum(g.f(v) for v in x) / len(x))

    return VarFn(
        name=name or f"quasi_arithmetic[{g.name}]",
        domain=g.interval,
        codomain=g.interval,
        evaluator=_evaluate,
        params={"generator": g.name},
        diagonal_inverse=_idempotent_inverse,
        epsilon_standard=True,
    )


def pre_mean(g: GeneratorSpec, name: Optional[str] = None) -> VarFn:
    """F_n(x) = f_n((1/n) sum f(x_i)); the outer sequence comes from ``g.outer``."""
    if g.outer is None:
        raise GeneratorNotInvertible(f"{g.name} (no outer sequence)", None)
    g.validate()
    outer = g.outer

    def _evaluate(x: Str) -> float:
        fn, _ = outer(len(x))
        return fn(math.fsum(g.f(v) for v in x) / len(x))

    def _diagonal_inverse(n: int, value: Any) -> float:
        # delta_n(x) = f_n(f(x))
        _, fn_inv = outer(n)
        return g.f_inv(fn_inv(value))

    return VarFn(
        name=name or f"pre_mean[{g.name},{g.outer_name}]",
        domain=g.interval,
        evaluator=_evaluate,
        params={"generator": g.name, "outer": g.outer_name},
        diagonal_inverse=_diagonal_inverse,
        epsilon_standard=True,
    )


class ArithMean(BaseFamily):
    name = "arith_mean"

    def build(self, **params: Any) -> VarFn:
        return quasi_arithmetic(identity(), name=self.name)


class GeomMean(BaseFamily):
    name = "geom_mean"

    def build(self, **params: Any) -> VarFn:
        return quasi_arithmetic(log(), name=self.name)


class HarmMean(BaseFamily):
    name = "harm_mean"

    def build(self, **params: Any) -> VarFn:
        return quasi_arithmetic(reciprocal(), name=self.name)


class QuasiArithmetic(BaseFamily):
    name = "quasi_arithmetic"
    param_names = ("generator",)

    def build(self, **params: Any) -> VarFn:
        return quasi_arithmetic(named_generator(params.get("generator", "identity")))


class PreMean(BaseFamily):
    name = "pre_mean"
    param_names = ("generator", "outer")

    def build(self, **params: Any) -> VarFn:
        g = named_generator(params.get("generator", "identity"))
        return pre_mean(with_named_outer(g, params.get("outer", "inverse")))
