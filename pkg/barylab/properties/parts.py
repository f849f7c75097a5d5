"""Single-arity predicates on the n-ary part F_n of a function on a finite domain."""

from typing import Any, Dict, List, Optional

from barylab.core.strings import UNDEFINED, Str, all_strings, expand, value_key, values_equal
from barylab.core.varfn import VarFn
from barylab.properties.space import safe_value


def diagonal(F: VarFn, n: int) -> Dict[Any, Any]:
    """atom -> delta_n(atom)."""
    return {a: safe_value(F, (a,) * n) for a in F.domain.elements}


def part_range(F: VarFn, n: int) -> List[Any]:
    seen: Dict[Any, Any] = {}
    for x in all_strings(F.domain.elements, n):
        v = safe_value(F, x)
        seen.setdefault(value_key(v), v)
    return list(seen.values())


def _delta_of(F: VarFn, n: int, v: Any) -> Any:
    if v is UNDEFINED:
        return UNDEFINED
    return safe_value(F, expand(v, n))


def range_idempotent_witness(F: VarFn, n: int) -> Optional[Str]:
    """A string x with delta_n(F_n(x)) != F_n(x), or None."""
    for x in all_strings(F.domain.elements, n):
        v = safe_value(F, x)
        if not values_equal(_delta_of(F, n, v), v):
            return x
    return None


def is_range_idempotent_part(F: VarFn, n: int) -> bool:
    return range_idempotent_witness(F, n) is None


def quasi_range_witness(F: VarFn, n: int) -> Optional[Any]:
    """A value of F_n outside ran(delta_n), or None."""
    diag = list(diagonal(F, n).values())
    for v in part_range(F, n):
        if not any(values_equal(v, d) for d in diag):
            return v
    return None


def is_quasi_range_idempotent_part(F: VarFn, n: int) -> bool:
    return quasi_range_witness(F, n) is None


def diagonal_is_idempotent(F: VarFn, n: int) -> bool:
    """delta_n o delta_n = delta_n."""
    return all(values_equal(_delta_of(F, n, d), d) for d in diagonal(F, n).values())


def diagonal_collision(F: VarFn, n: int) -> Optional[tuple]:
    """Two atoms with the same diagonal value, or None when delta_n is one-to-one."""
    seen: Dict[Any, Any] = {}
    for a, d in diagonal(F, n).items():
        key = value_key(d)
        if key in seen:
            return seen[key], a
        seen[key] = a
    return None


def diagonal_is_injective(F: VarFn, n: int) -> bool:
    return diagonal_collision(F, n) is None


def diagonal_is_identity(F: VarFn, n: int) -> bool:
    return all(values_equal(d, a) for a, d in diagonal(F, n).items())


def is_idempotent_part(F: VarFn, n: int) -> bool:
    return diagonal_is_identity(F, n)
