from barylab.factorization.affine import AffineVerdict, affine_identifiability
from barylab.factorization.factor import (
    FactorizationResult,
    PartFactor,
    compose_with_quasi_inverses,
    delta_table,
    factorize,
    idempotizable_decompose,
    range_idempotent_factor,
)
from barylab.factorization.quasi_inverse import (
    QuasiInverse,
    UnaryTable,
    enumerate_quasi_inverses,
    is_quasi_inverse,
    quasi_inverse,
)

__all__ = [
    "AffineVerdict",
    "affine_identifiability",
    "FactorizationResult",
    "PartFactor",
    "compose_with_quasi_inverses",
    "delta_table",
    "factorize",
    "idempotizable_decompose",
    "range_idempotent_factor",
    "QuasiInverse",
    "UnaryTable",
    "enumerate_quasi_inverses",
    "is_quasi_inverse",
    "quasi_inverse",
]
