import math
from fractions import Fraction
from typing import Any

from barylab.builtins.base import BaseFamily
from barylab.core.domains import DomainDesc
from barylab.core.strings import EPSILON, Str
from barylab.core.varfn import VarFn


def _sum(x: Str) -> Any:
    # Exact on integer or rational inputs.
    if all(isinstance(v, (int, Fraction)) for v in x):
        return sum(x)
    return math.fsum(x)


def _identity_inverse(n: int, value: Any) -> Any:
    return value


class SumFamily(BaseFamily):
    name = "sum"
    param_names = ("domain",)

    def build(self, **params: Any) -> VarFn:
        return VarFn(
            name=self.name,
            domain=self._domain(params, DomainDesc.reals()),
            evaluator=_sum,
            diagonal_inverse=lambda n, value: value / n,
            epsilon_standard=True,
        )


class ProductFamily(BaseFamily):
    name = "product"

    def build(self, **params: Any) -> VarFn:
        return VarFn(
            name=self.name,
            domain=DomainDesc.positive_reals(),
            evaluator=math.prod,
            diagonal_inverse=lambda n, value: value ** (1.0 / n),
            epsilon_standard=True,
        )


class LengthFamily(BaseFamily):
    name = "length_fn"
    param_names = ("domain",)

    def build(self, **params: Any) -> VarFn:
        return VarFn(
            name=self.name,
            domain=self._domain(params, DomainDesc.reals()),
            codomain=DomainDesc.interval(0, math.inf, lo_closed=True),
            evaluator=len,
            default=0,
        )


class FirstProjection(BaseFamily):
    name = "first_proj"
    param_names = ("domain",)

    def build(self, **params: Any) -> VarFn:
        return VarFn(
            name=self.name,
            domain=self._domain(params, DomainDesc.reals()),
            evaluator=lambda x: x[0],
            diagonal_inverse=_identity_inverse,
            epsilon_standard=True,
        )


class LastProjection(BaseFamily):
    name = "last_proj"
    param_names = ("domain",)

    def build(self, **params: Any) -> VarFn:
        return VarFn(
            name=self.name,
            domain=self._domain(params, DomainDesc.reals()),
            evaluator=lambda x: x[-1],
            diagonal_inverse=_identity_inverse,
            epsilon_standard=True,
        )


class MaxOp(BaseFamily):
    name = "max_op"
    param_names = ("domain",)

    def build(self, **params: Any) -> VarFn:
        return VarFn(
            name=self.name,
            domain=self._domain(params, DomainDesc.reals()),
            evaluator=max,
            diagonal_inverse=_identity_inverse,
            epsilon_standard=True,
        )


class FaFamily(BaseFamily):
    """F_a(x) = a if a occurs in x, else ε. The default must be ε as well."""

    name = "F_a"
    param_names = ("a", "domain")

    def build(self, **params: Any) -> VarFn:
        a = params.get("a", 1)
        domain = self._domain({"domain": params.get("domain", [0, 1])}, DomainDesc.finite([0, 1]))
        return VarFn(
            name=self.name,
            domain=domain,
            evaluator=lambda x: a if a in x else EPSILON,
            params={"a": a},
        )


class ConstantFamily(BaseFamily):
    """F_n = c for every n >= 1; c may be "epsilon"."""

    name = "constant"
    param_names = ("c", "domain")

    def build(self, **params: Any) -> VarFn:
        c = params.get("c", 0)
        if c == "epsilon":
            c = EPSILON
        return VarFn(
            name=self.name,
            domain=self._domain(params, DomainDesc.reals()),
            evaluator=lambda x: c,
            params={"c": c},
        )


class AbsMean(BaseFamily):
    """F_n(x) = |(1/n) sum x_i|."""

    name = "abs_mean"

    def build(self, **params: Any) -> VarFn:
        return VarFn(
            name=self.name,
            domain=DomainDesc.reals(),
            evaluator=lambda x: abs(math.fsum(x) / len(x)),
            epsilon_standard=True,
        )


class ClampedSum(BaseFamily):
    """H_n(x) = max(sum x_i, 0)."""

    name = "clamped_sum"

    def build(self, **params: Any) -> VarFn:
        return VarFn(
            name=self.name,
            domain=DomainDesc.reals(),
            evaluator=lambda x: max(math.fsum(x), 0.0),
            epsilon_standard=True,
        )


class FirstThenClamped(BaseFamily):
    """F_n(x) = x_1 for n <= k, max(x_1, 0) for n > k."""

    name = "first_then_clamped"
    param_names = ("k",)

    def build(self, **params: Any) -> VarFn:
        k = int(params.get("k", 2))

        def _evaluate(x: Str) -> Any:
            return x[0] if len(x) <= k else max(x[0], 0.0)

        return VarFn(
            name=self.name,
            domain=DomainDesc.reals(),
            evaluator=_evaluate,
            params={"k": k},
            epsilon_standard=True,
        )


class MixedMeans(BaseFamily):
    """Arithmetic mean at even arities, geometric mean at odd arities."""

    name = "mixed_means"

    def build(self, **params: Any) -> VarFn:
        def _evaluate(x: Str) -> float:
            if len(x) % 2 == 0:
                return math.fsum(x) / len(x)
            return math.exp(math.fsum(math.log(v) for v in x) / len(x))

        return VarFn(
            name=self.name,
            domain=DomainDesc.positive_reals(),
            evaluator=_evaluate,
            diagonal_inverse=_identity_inverse,
            epsilon_standard=True,
        )
