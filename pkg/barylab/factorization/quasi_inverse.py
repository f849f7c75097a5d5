"""Finite unary maps and their quasi-inverses.

g is a quasi-inverse of f when f o g fixes ran(f) pointwise and
ran(g|ran(f)) = ran(g). The canonical choice below picks least preimages
in domain order and sends values off ran(f) to the image of the least
element of ran(f) in codomain order.
"""

import itertools
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Callable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from barylab.config import TABULATED
from barylab.core.errors import BudgetExceeded, EmptyDomain

CONVENTION = "least preimage, least range representative off-range"


def ordered_unique(values: Iterable[Any]) -> Tuple[Any, ...]:
    out: List[Any] = []
    for v in values:
        if v not in out:
            out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class UnaryTable:
    """A map between two finite ordered sets, stored as an explicit table."""

    domain: Tuple[Any, ...]
    codomain: Tuple[Any, ...]
    mapping: Mapping[Any, Any]
    name: str = "f"

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "codomain", ordered_unique(tuple(self.codomain)))
        for a in self.domain:
            if a not in self.mapping:
                raise ValueError(f"{self.name} has no value at {a!r}")
            if self.mapping[a] not in self.codomain:
                raise ValueError(f"{self.name}({a!r}) = {self.mapping[a]!r} is outside its codomain")
        object.__setattr__(self, "mapping", MappingProxyType({a: self.mapping[a] for a in self.domain}))

    @classmethod
    def from_function(cls, domain: Sequence[Any], fn: Callable[[Any], Any],
                      codomain: Optional[Sequence[Any]] = None, name: str = "f") -> "UnaryTable":
        mapping = {a: fn(a) for a in domain}
        if codomain is None:
            codomain = ordered_unique(mapping.values())
        return cls(tuple(domain), tuple(codomain), mapping, name)

    def __call__(self, a: Any) -> Any:
        return self.mapping[a]

    def range(self) -> Tuple[Any, ...]:
        """ran(f) in codomain order."""
        image = set(self.mapping.values())
        return tuple(y for y in self.codomain if y in image)

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.domain)

    def restricted(self, subset: Iterable[Any], name: Optional[str] = None) -> "UnaryTable":
        wanted = set(subset)
        keep = [a for a in self.domain if a in wanted]
        return UnaryTable(tuple(keep), self.codomain, {a: self.mapping[a] for a in keep}, name or self.name)

    def to_pairs(self) -> List[List[Any]]:
        return [[a, self.mapping[a]] for a in self.domain]


@dataclass(frozen=True)
class QuasiInverse:
    f: UnaryTable
    g: UnaryTable
    certificate: List[str] = field(default_factory=list)
    convention: str = CONVENTION


def quasi_inverse_violation(f: UnaryTable, g: UnaryTable) -> Optional[str]:
    """Why g is not a quasi-inverse of f, or None when it is."""
    ran_f = f.range()
    for y in ran_f:
        if y not in g.mapping:
            return f"g is undefined at {y!r} in ran(f)"
        if g(y) not in f.mapping:
            return f"g({y!r}) = {g(y)!r} is outside the domain of f"
        if f(g(y)) != y:
            return f"f(g({y!r})) = {f(g(y))!r} != {y!r}"
    if set(g(y) for y in ran_f) != set(g.mapping.values()):
        return "ran(g restricted to ran(f)) != ran(g)"
    return None


def is_quasi_inverse(f: UnaryTable, g: UnaryTable) -> bool:
    return quasi_inverse_violation(f, g) is None


def _certify(f: UnaryTable, g: UnaryTable) -> List[str]:
    problem = quasi_inverse_violation(f, g)
    if problem is not None:
        raise AssertionError(f"quasi-inverse certificate failed: {problem}")
    restricted = f.restricted(g.range())
    return [
        "f o g = id on ran(f)",
        "ran(g|ran(f)) = ran(g)",
        f"f one-to-one on ran(g): {restricted.is_injective()}",
    ]


def quasi_inverse(f: UnaryTable) -> QuasiInverse:
    """The canonical quasi-inverse of a finite map."""
    if not f.domain:
        raise EmptyDomain(f"{f.name} has an empty domain")
    preimage = {}
    for a in f.domain:
        preimage.setdefault(f(a), a)
    ran_f = f.range()
    anchor = preimage[ran_f[0]]
    mapping = {y: preimage.get(y, anchor) for y in f.codomain}
    g = UnaryTable(f.codomain, f.domain, mapping, f"q({f.name})")
    return QuasiInverse(f=f, g=g, certificate=_certify(f, g))


def enumerate_quasi_inverses(f: UnaryTable) -> Iterator[UnaryTable]:
    """Every quasi-inverse of f, for small domains and codomains."""
    limit = TABULATED["quasi_inverse_enumeration_limit"]
    if len(f.domain) > limit or len(f.codomain) > limit:
        raise BudgetExceeded(limit, "atoms in the domain or codomain of a map to enumerate")
    if not f.domain:
        raise EmptyDomain(f"{f.name} has an empty domain")
    for images in itertools.product(f.domain, repeat=len(f.codomain)):
        g = UnaryTable(f.codomain, f.domain, dict(zip(f.codomain, images)), f"g{images}")
        if is_quasi_inverse(f, g):
            yield g
