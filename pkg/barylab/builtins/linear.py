from fractions import Fraction
from numbers import Real
from typing import Any, List, Tuple

from barylab.builtins.base import BaseFamily
from barylab.core.domains import DomainDesc
from barylab.core.strings import Str
from barylab.core.varfn import VarFn


def _exact(z: Real) -> Fraction:
    return z if isinstance(z, Fraction) else Fraction(z)


def mz_weights(z: Real, n: int) -> List[Any]:
    """w_i = z^(n-i) (1-z)^(i-1), i = 1..n."""
    return [z ** (n - i) * (1 - z) ** (i - 1) for i in range(1, n + 1)]


def mz_normalizer(z: Real, n: int) -> Fraction:
    """Delta_n = sum of the weights, computed exactly."""
    zq = _exact(z)
    total = sum(mz_weights(zq, n), Fraction(0))
    # Never zero for real z: (z^n - (1-z)^n)/(2z-1), or n 2^(1-n) at z = 1/2.
    assert total != 0, f"Delta_{n} vanished at z={z}"
    return total


def mz_section_coeffs(z: Real, k: int) -> Tuple[Fraction, Fraction]:
    """(a_{k+1}, b_{k+1}) with delta^r of M^z_{k+1}(x, y) = a x + b y."""
    if k < 1:
        raise ValueError("section coefficients are defined for k >= 1")
    zq = _exact(z)
    d_k = mz_normalizer(zq, k)
    d_next = mz_normalizer(zq, k + 1)
    return zq * d_k / d_next, (1 - zq) ** k / d_next


def m_z(z: Real) -> VarFn:
    """M^z_n(x) = sum w_i x_i / Delta_n."""
    zf = float(z)

    def _evaluate(x: Str) -> float:
        weights = mz_weights(zf, len(x))
        total = sum(weights)
        assert total != 0, f"Delta_{len(x)} vanished at z={z}"
        return sum(w * v for w, v in zip(weights, x)) / total

    return VarFn(
        name="m_z",
        domain=DomainDesc.reals(),
        codomain=DomainDesc.reals(),
        evaluator=_evaluate,
        params={"z": zf},
        diagonal_inverse=lambda n, value: value,
        epsilon_standard=True,
    )


class MzFamily(BaseFamily):
    name = "m_z"
    param_names = ("z",)

    def build(self, **params: Any) -> VarFn:
        return m_z(params.get("z", 0.5))
