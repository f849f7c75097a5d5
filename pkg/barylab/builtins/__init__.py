from typing import Any, Dict

from barylab.builtins.barycenter import BarycenterFamily, barycenter
from barylab.builtins.base import BaseFamily
from barylab.builtins.elementary import (
    AbsMean,
    ClampedSum,
    ConstantFamily,
    FaFamily,
    FirstProjection,
    FirstThenClamped,
    LastProjection,
    LengthFamily,
    MaxOp,
    MixedMeans,
    ProductFamily,
    SumFamily,
)
from barylab.builtins.generators import GeneratorSpec, named_generator, with_named_outer
from barylab.builtins.linear import MzFamily, m_z, mz_normalizer, mz_section_coeffs
from barylab.builtins.means import (
    ArithMean,
    GeomMean,
    HarmMean,
    PreMean,
    QuasiArithmetic,
    pre_mean,
    quasi_arithmetic,
)
from barylab.core.errors import UnknownName
from barylab.core.varfn import VarFn

FAMILIES: Dict[str, BaseFamily] = {
    family.name: family
    for family in (
        ArithMean(),
        GeomMean(),
        HarmMean(),
        QuasiArithmetic(),
        PreMean(),
        MzFamily(),
        SumFamily(),
        ProductFamily(),
        LengthFamily(),
        FirstProjection(),
        LastProjection(),
        MaxOp(),
        FaFamily(),
        ConstantFamily(),
        AbsMean(),
        ClampedSum(),
        FirstThenClamped(),
        MixedMeans(),
        BarycenterFamily(),
    )
}


def get_family(name: str) -> BaseFamily:
    family = FAMILIES.get(name)
    if family is None:
        raise UnknownName(f"unknown builtin {name!r}; expected one of {sorted(FAMILIES)}")
    return family


def named_builtin(name: str, **params: Any) -> VarFn:
    """Build a builtin by registry name, e.g. named_builtin("m_z", z=2.0)."""
    return get_family(name).build(**params)


__all__ = [
    "BaseFamily",
    "FAMILIES",
    "GeneratorSpec",
    "barycenter",
    "get_family",
    "m_z",
    "mz_normalizer",
    "mz_section_coeffs",
    "named_builtin",
    "named_generator",
    "pre_mean",
    "quasi_arithmetic",
    "with_named_outer",
]
