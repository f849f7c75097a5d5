from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Any, Callable, Dict, Mapping, Optional

from barylab.core.domains import DomainDesc
from barylab.core.errors import ArityExceeded, DomainMismatch, TableFormatError
from barylab.core.strings import EPSILON, Str, strings_up_to

Evaluator = Callable[[Str], Any]
DiagonalInverse = Callable[[int, Any], Any]


@dataclass(frozen=True, eq=False)
class VarFn:
    """A *-ary function F: X* -> Y ∪ {ε}.

    Exactly one of ``table`` (finite X, bounded arity) or ``evaluator``
    (closed form) is set. ``default`` is the value F_0(ε). ``codomain``
    of None means X ∪ {ε}.
    """

    name: str
    domain: DomainDesc
    codomain: Optional[DomainDesc] = None
    max_arity: Optional[int] = None
    table: Optional[Mapping[Str, Any]] = None
    evaluator: Optional[Evaluator] = None
    default: Any = EPSILON
    params: Mapping[str, Any] = field(default_factory=dict)
    # Closed-form inverse of the diagonal section, (n, value) -> x.
    diagonal_inverse: Optional[DiagonalInverse] = None
    epsilon_standard: bool = False

    def __post_init__(self):
        if (self.table is None) == (self.evaluator is None):
            raise ValueError("a VarFn needs exactly one of table or evaluator")
        if self.max_arity is not None and self.max_arity < 1:
            raise ValueError("max_arity must be a positive integer")
        if self.table is not None:
            if not self.domain.is_finite:
                raise TableFormatError("tabulated functions need a finite domain")
            if self.max_arity is None:
                raise TableFormatError("tabulated functions need a max_arity")
            frozen = {tuple(k): v for k, v in self.table.items()}
            for x in strings_up_to(self.domain.elements, self.max_arity, min_len=1):
                if x not in frozen:
                    raise TableFormatError(f"table is missing the string {list(x)!r}")
            object.__setattr__(self, "table", MappingProxyType(frozen))
        object.__setattr__(self, "params", MappingProxyType(dict(self.params)))

    @property
    def is_tabulated(self) -> bool:
        return self.table is not None

    def __call__(self, *atoms: Any) -> Any:
        return evaluate(self, atoms)

    def arity_bound(self, wanted: int) -> int:
        """The longest string length usable for a search of length ``wanted``."""
        if self.max_arity is None:
            return wanted
        return min(wanted, self.max_arity)

    def renamed(self, name: str) -> "VarFn":
        return replace(self, name=name)


def evaluate(F: VarFn, x: Str) -> Any:
    """Return F(x); F(ε) is the default value."""
    x = tuple(x)
    if F.max_arity is not None and len(x) > F.max_arity:
        raise ArityExceeded(len(x), F.max_arity)
    for atom in x:
        if not F.domain.contains(atom):
            raise DomainMismatch(atom, F.domain.describe())
    if not x:
        return F.default
    if F.table is not None:
        return F.table[x]
    return F.evaluator(x)


def tabulate(F: VarFn, max_arity: int, name: Optional[str] = None) -> VarFn:
    """Materialize F on a finite domain up to ``max_arity``."""
    if not F.domain.is_finite:
        raise TableFormatError("only functions on finite domains can be tabulated")
    bound = F.arity_bound(max_arity)
    table: Dict[Str, Any] = {
        x: evaluate(F, x) for x in strings_up_to(F.domain.elements, bound, min_len=1)
    }
    return VarFn(
        name=name or F.name,
        domain=F.domain,
        codomain=F.codomain,
        max_arity=bound,
        table=table,
        default=F.default,
        params=F.params,
        epsilon_standard=F.epsilon_standard,
    )
