import itertools
import math
import numbers
from fractions import Fraction
from typing import Any, Iterator, Sequence, Tuple

from barylab.config import TOLERANCE

# A string over X is a tuple of atoms; the empty tuple is the empty string.
Str = Tuple[Any, ...]

EMPTY: Str = ()


class _Epsilon:
    """The ε value of X ∪ {ε}. Distinct from every codomain atom."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ε"

    def __reduce__(self):
        return (_Epsilon, ())


class _Undefined:
    """Result of evaluating F on a string that left its domain. Equal to nothing."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "undefined"

    def __reduce__(self):
        return (_Undefined, ())


EPSILON = _Epsilon()
UNDEFINED = _Undefined()


def power(x: Str, n: int) -> Str:
    if n < 0:
        raise ValueError("power exponent must be non-negative")
    return tuple(x) * n


def concat(*parts: Str) -> Str:
    out: Tuple[Any, ...] = ()
    for part in parts:
        out += tuple(part)
    return out


def expand(value: Any, k: int) -> Str:
    """The string value^k, where an ε value contributes the empty string."""
    if value is EPSILON:
        return EMPTY
    return (value,) * k


def is_numeric(value: Any) -> bool:
    return isinstance(value, numbers.Number) and not isinstance(value, bool)


def values_equal(a: Any, b: Any) -> bool:
    if a is UNDEFINED or b is UNDEFINED:
        return False
    if a is EPSILON or b is EPSILON:
        return a is b
    if is_numeric(a) and is_numeric(b):
        if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
            return a == b
        fa, fb = float(a), float(b)
        if not (math.isfinite(fa) and math.isfinite(fb)):
            return False
        return math.isclose(fa, fb, rel_tol=TOLERANCE["rel"], abs_tol=TOLERANCE["abs"])
    if isinstance(a, tuple) and isinstance(b, tuple):
        return len(a) == len(b) and all(values_equal(u, v) for u, v in zip(a, b))
    return a == b


def value_key(value: Any) -> Any:
    """Hashable bucket key; values with equal keys are candidates for equality."""
    if is_numeric(value) and not isinstance(value, (int, Fraction)):
        f = float(value)
        if not math.isfinite(f):
            return UNDEFINED
        return round(f, TOLERANCE["bucket_digits"]) + 0.0
    if isinstance(value, tuple):
        return tuple(value_key(v) for v in value)
    return value


def to_jsonable(value: Any) -> Any:
    if value is EPSILON:
        return "epsilon"
    if value is UNDEFINED:
        return "undefined"
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return value
    if is_numeric(value):
        f = float(value)
        return f if math.isfinite(f) else "undefined"
    if isinstance(value, (tuple, list)):
        return [to_jsonable(v) for v in value]
    return value


def string_to_jsonable(x: Str) -> list:
    return [to_jsonable(v) for v in x]


def all_strings(atoms: Sequence[Any], length: int) -> Iterator[Str]:
    """Every string of the given length, in lexicographic order of atom positions."""
    return itertools.product(atoms, repeat=length)


def strings_up_to(atoms: Sequence[Any], max_len: int, min_len: int = 0) -> Iterator[Str]:
    """Strings ordered by (length, lexicographic)."""
    for n in range(min_len, max_len + 1):
        yield from all_strings(atoms, n)
