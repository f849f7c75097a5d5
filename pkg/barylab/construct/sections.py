"""Build a B-associative ε-standard operation from its unary part and one
two-place section per arity.

G_1 = phi_1 and G_{k+1}(x y z) = phi_{k+1}(G_k(x y), z) when the side of
arity k+1 is "r", or phi_{k+1}(x, G_k(y z)) when it is "l". The result is
returned only after the retraction condition on phi_1, the absorption
condition on each phi_{k+1}, arity-wise range-idempotence of G and the
cross equation have been verified on the search space.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Mapping, Optional, Sequence, Union

from barylab.builtins.linear import mz_section_coeffs
from barylab.config import SEARCH
from barylab.core.domains import DomainDesc
from barylab.core.errors import (
    ConditionAViolated,
    ConditionBViolated,
    ConstructionError,
    Phi1NotRetraction,
)
from barylab.core.log import debug
from barylab.core.sections import sections, side_for
from barylab.core.strings import EPSILON, Str, all_strings, to_jsonable, values_equal
from barylab.core.varfn import VarFn
from barylab.properties.space import SearchConfig, SearchSpace, safe_value

Binary = Callable[[Any, Any], Any]
Sides = Union[str, Sequence[str], Mapping[int, str]]


@dataclass(frozen=True)
class SectionSpec:
    """phi_1, the two-place sections phi_k (k >= 2) and their side markers.

    ``phi`` is a mapping k -> phi_k or a factory k -> phi_k. ``sides`` is one
    marker for every arity, a sequence starting at arity 2, or a mapping.
    """

    domain: DomainDesc
    phi_1: Callable[[Any], Any]
    phi: Union[Mapping[int, Binary], Callable[[int], Binary]]
    sides: Sides = "r"
    name: str = "G"
    params: Dict[str, Any] = field(default_factory=dict)

    def phi_k(self, k: int) -> Binary:
        if isinstance(self.phi, Mapping):
            if k not in self.phi:
                raise ConstructionError(f"no section given for arity {k}", k=k)
            return self.phi[k]
        return self.phi(k)

    def side(self, k: int) -> str:
        try:
            return side_for(self.sides, k)
        except ValueError as e:
            raise ConstructionError(str(e), k=k) from e

    @classmethod
    def of(cls, F: VarFn, sides: Sides = "r", max_arity: Optional[int] = None) -> "SectionSpec":
        """The sections of an existing function, as a spec."""
        bound = F.arity_bound(max_arity or SEARCH["max_len"])
        phi = {k: sections(F, k).side(side_for(sides, k)) for k in range(2, bound + 1)}
        return cls(domain=F.domain, phi_1=sections(F, 1).delta, phi=phi, sides=sides, name=f"sections[{F.name}]")


def mz_sections(z: Any) -> SectionSpec:
    """phi_1 = id and phi_{k+1}(x, y) = a_{k+1} x + b_{k+1} y with the M^z coefficients."""

    def phi(k: int) -> Binary:
        a, b = (float(c) for c in mz_section_coeffs(z, k - 1))
        return lambda x, y: a * x + b * y

    return SectionSpec(domain=DomainDesc.reals(), phi_1=lambda x: x, phi=phi, sides="r",
                       name="sections[m_z]", params={"z": float(z)})


def mean_sections() -> SectionSpec:
    """phi_{k+1}(x, y) = (k x + y) / (k + 1), the sections of the arithmetic mean."""
    return SectionSpec(domain=DomainDesc.reals(), phi_1=lambda x: x,
                       phi=lambda k: (lambda x, y: ((k - 1) * x + y) / k), name="sections[arith_mean]")


# ── construction ─────────────────────────────────────────────────────────────

def _build(spec: SectionSpec, max_arity: Optional[int]) -> VarFn:
    if spec.domain.is_finite:
        return _build_table(spec, max_arity or SEARCH["max_len"])

    cache: Dict[int, Binary] = {}

    def phi(k: int) -> Binary:
        if k not in cache:
            cache[k] = spec.phi_k(k)
        return cache[k]

    def g(x: Str) -> Any:
        n = len(x)
        if n == 1:
            return spec.phi_1(x[0])
        if spec.side(n) == "r":
            return phi(n)(g(x[:-1]), x[-1])
        return phi(n)(x[0], g(x[1:]))

    return VarFn(name=spec.name, domain=spec.domain, max_arity=max_arity, evaluator=g, default=EPSILON,
                 params=spec.params, epsilon_standard=True)


def _build_table(spec: SectionSpec, max_arity: int) -> VarFn:
    atoms = spec.domain.elements
    table: Dict[Str, Any] = {(a,): spec.phi_1(a) for a in atoms}
    for k in range(2, max_arity + 1):
        phi, side = spec.phi_k(k), spec.side(k)
        for x in all_strings(atoms, k):
            v = phi(table[x[:-1]], x[-1]) if side == "r" else phi(x[0], table[x[1:]])
            if not spec.domain.contains(v):
                raise ConstructionError(f"section of arity {k} leaves the domain at {list(x)!r}", k=k, witness=x)
            table[x] = v
    return VarFn(name=spec.name, domain=spec.domain, max_arity=max_arity, table=table, default=EPSILON,
                 params=spec.params, epsilon_standard=True)


# ── verification ─────────────────────────────────────────────────────────────

def _check_retraction(spec: SectionSpec, atoms: Sequence[Any]) -> None:
    for a in atoms:
        v = spec.phi_1(a)
        if not (spec.domain.contains(v) and values_equal(spec.phi_1(v), v)):
            raise Phi1NotRetraction("phi_1 o phi_1 != phi_1", k=1, witness=to_jsonable(a))


def _check_absorption(spec: SectionSpec, atoms: Sequence[Any], top: int) -> None:
    """phi_{k+1}(x, y) = phi_{k+1}(delta_{phi_k}(x), y) on side r, dually on side l."""
    for k in range(1, top):
        phi_next, side = spec.phi_k(k + 1), spec.side(k + 1)
        if k == 1:
            delta = spec.phi_1
        else:
            phi_k = spec.phi_k(k)
            delta = lambda a, p=phi_k: p(a, a)  # noqa: E731
        for x in atoms:
            for y in atoms:
                lhs = phi_next(x, y)
                rhs = phi_next(delta(x), y) if side == "r" else phi_next(x, delta(y))
                if not values_equal(lhs, rhs):
                    raise ConditionAViolated(f"absorption condition violated at arity {k + 1}", k=k + 1,
                                             witness=[to_jsonable(x), to_jsonable(y)])


def _check_range_idempotent(space: SearchSpace) -> None:
    for L in space.lengths():
        for w in space.strings(L):
            v = space.value(w)
            if not values_equal(space.substitute((), v, L, ()), v):
                raise ConditionBViolated("range_idempotence", L, [to_jsonable(a) for a in w])


def _check_cross_equation(spec: SectionSpec, space: SearchSpace) -> None:
    """G(x y z) = G(x c^k) with c = G(y z) on side r; G(c^k z) with c = G(x y) on side l."""
    for L in space.lengths(2):
        side = spec.side(L)
        for w in space.strings(L):
            whole = space.value(w)
            if side == "r":
                rhs = space.substitute(w[:1], space.value(w[1:]), L - 1, ())
            else:
                rhs = space.substitute((), space.value(w[:-1]), L - 1, w[-1:])
            if not values_equal(whole, rhs):
                raise ConditionBViolated("cross_equation", L, [to_jsonable(a) for a in w])


def from_sections(spec: SectionSpec, max_arity: Optional[int] = None, cfg: Optional[SearchConfig] = None) -> VarFn:
    """The ε-standard B-associative operation with the given sections.

    Raises Phi1NotRetraction, ConditionAViolated or ConditionBViolated with
    the first witness found.
    """
    G = _build(spec, max_arity)
    space = SearchSpace(G, cfg)
    _check_retraction(spec, space.atoms)
    _check_absorption(spec, space.atoms, space.max_len)
    _check_range_idempotent(space)
    _check_cross_equation(spec, space)
    debug(f"from_sections {spec.name}: verified up to length {space.max_len} ({space.budget.used} evaluations)")
    return G


def section_mismatch(G: VarFn, spec: SectionSpec, cfg: Optional[SearchConfig] = None) -> Optional[Str]:
    """A point where G_1 != phi_1 or the chosen section of G_k != phi_k, or None."""
    space = SearchSpace(G, cfg)
    for a in space.atoms:
        if not values_equal(safe_value(G, (a,)), spec.phi_1(a)):
            return (a,)
    for k in space.lengths(2):
        side, phi = spec.side(k), spec.phi_k(k)
        for a in space.atoms:
            for b in space.atoms:
                x = (a,) * (k - 1) + (b,) if side == "r" else (a,) + (b,) * (k - 1)
                if not values_equal(safe_value(G, x), phi(a, b)):
                    return x
    return None
