"""F_n = f_n o H_n with H B-associative and f_n one-to-one.

On finite domains H_n = g_n o F_n for the canonical quasi-inverse g_n of
the diagonal section of F_n. Closed-form functions take the idempotent
path H_n = delta^-1 o F_n through their registered diagonal inverse.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Union

from barylab.config import SEARCH
from barylab.core.errors import (
    BudgetExceeded,
    DiagonalNotInjective,
    NoDiagonalInverse,
    NotBPreassociative,
    NotQuasiRangeIdempotent,
    TableFormatError,
)
from barylab.core.log import debug
from barylab.core.strings import EPSILON, Str, all_strings, to_jsonable, values_equal
from barylab.core.tables import table_to_dict
from barylab.core.varfn import VarFn
from barylab.factorization.quasi_inverse import (
    CONVENTION,
    QuasiInverse,
    UnaryTable,
    is_quasi_inverse,
    ordered_unique,
    quasi_inverse,
)
from barylab.properties.engine import budget_exhausted, check
from barylab.properties.parts import diagonal_collision, quasi_range_witness
from barylab.properties.report import PropertyReport
from barylab.properties.space import SearchConfig, SearchSpace, safe_value

TABULATED_PATH = "tabulated"
CLOSED_FORM_PATH = "closed_form"

Outer = Union[UnaryTable, Callable[[Any], Any]]


def delta_table(F: VarFn, n: int) -> UnaryTable:
    """delta_{F_n} as a table; the codomain lists X first, then the other values of F_n."""
    atoms = F.domain.elements
    values = [safe_value(F, x) for x in all_strings(atoms, n)]
    codomain = ordered_unique(list(atoms) + values)
    return UnaryTable(atoms, codomain, {a: safe_value(F, (a,) * n) for a in atoms}, f"delta_{n}")


def _identity_inverse(n: int, value: Any) -> Any:
    return value


def _require_inverse(F: VarFn, cfg: Optional[SearchConfig] = None) -> Callable[[int, Any], Any]:
    """F's diagonal inverse; without one, the first arity whose diagonal collides."""
    if F.diagonal_inverse is None:
        space = SearchSpace(F, cfg)
        for n in space.lengths():
            seen: List[Any] = []
            for a in space.atoms:
                d = safe_value(F, (a,) * n)
                for b, e in seen:
                    if values_equal(d, e):
                        raise DiagonalNotInjective(n, (to_jsonable(b), to_jsonable(a)))
                seen.append((a, d))
        raise NoDiagonalInverse(F.name)
    return F.diagonal_inverse


@dataclass
class PartFactor:
    """H_n together with the diagonal section it was built from."""

    n: int
    part: Callable[[Str], Any]
    delta: Outer
    quasi_inverse: Optional[QuasiInverse] = None
    table: Optional[Dict[Str, Any]] = None
    checks: Dict[str, bool] = field(default_factory=dict)
    matches_candidate: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _finite_part(F: VarFn, n: int, q: Optional[QuasiInverse]) -> PartFactor:
    witness = quasi_range_witness(F, n)
    if witness is not None:
        raise NotQuasiRangeIdempotent(n, witness)
    delta = delta_table(F, n)
    q = q or quasi_inverse(delta)
    table = {x: q.g(safe_value(F, x)) for x in all_strings(F.domain.elements, n)}
    ran_h = set(table.values())
    checks = {
        "delta_after_h_is_f": all(values_equal(delta(h), safe_value(F, x)) for x, h in table.items()),
        "h_range_idempotent": all(values_equal(table[(h,) * n], h) for h in ran_h),
        "delta_injective_on_ran_h": delta.restricted(ran_h).is_injective(),
    }
    return PartFactor(n=n, part=lambda x: table[tuple(x)], delta=delta, quasi_inverse=q, table=table, checks=checks)


def _closed_form_part(F: VarFn, n: int, cfg: Optional[SearchConfig]) -> PartFactor:
    inverse = _require_inverse(F, cfg)

    def part(x: Str) -> Any:
        return inverse(n, safe_value(F, x))

    def delta(a: Any) -> Any:
        return safe_value(F, (a,) * n)

    space = SearchSpace(F, cfg)
    lifted = []
    for x in space.strings(n):
        v = safe_value(F, x)
        try:
            u = part(x)
        except (ArithmeticError, ValueError):
            raise NotQuasiRangeIdempotent(n, to_jsonable(v)) from None
        if not (F.domain.contains(u) and values_equal(delta(u), v)):
            raise NotQuasiRangeIdempotent(n, to_jsonable(v))
        lifted.append(u)
    checks = {
        "delta_after_h_is_f": True,
        "h_range_idempotent": all(values_equal(part((u,) * n), u) for u in lifted),
        "delta_injective_on_ran_h": all(values_equal(inverse(n, delta(u)), u) for u in lifted),
    }
    return PartFactor(n=n, part=part, delta=delta, checks=checks)


def range_idempotent_factor(F: VarFn, n: int, q: Optional[QuasiInverse] = None,
                            cfg: Optional[SearchConfig] = None) -> PartFactor:
    """The range-idempotent H_n solving F_n = delta_{F_n} o H_n.

    Raises NotQuasiRangeIdempotent with a value of F_n that the diagonal
    section never takes.
    """
    if F.domain.is_finite:
        return _finite_part(F, n, q)
    return _closed_form_part(F, n, cfg)


# ── Theorem-level factorization ──────────────────────────────────────────────

@dataclass
class FactorizationResult:
    function: str
    path: str
    H: VarFn
    outer: Dict[int, Outer]
    checks: Dict[str, bool] = field(default_factory=dict)
    reports: List[PropertyReport] = field(default_factory=list)
    convention: Optional[str] = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and all(r.passed for r in self.reports)

    def recompose(self, x: Str) -> Any:
        if not x:
            return EPSILON
        f = self.outer[len(x)]
        return f(safe_value(self.H, x))

    def to_jsonable(self, timings: bool = False) -> Dict[str, Any]:
        if self.H.is_tabulated:
            H: Dict[str, Any] = table_to_dict(self.H)
        else:
            H = {"name": self.H.name, "form": "x -> delta_n^-1(F(x)), n = |x|"}
        outer: Dict[str, Any] = {}
        for n, f in sorted(self.outer.items()):
            if isinstance(f, UnaryTable):
                outer[str(n)] = [[to_jsonable(a), to_jsonable(b)] for a, b in f.to_pairs()]
            else:
                outer[str(n)] = f"v -> F(v^{n})"
        out: Dict[str, Any] = {
            "function": self.function,
            "path": self.path,
            "H": H,
            "outer": outer,
            "checks": dict(self.checks),
            "reports": [r.to_jsonable(timings=timings) for r in self.reports],
        }
        if self.convention:
            out["convention"] = self.convention
        return out


def _extended_inverse(delta: UnaryTable, f: UnaryTable) -> UnaryTable:
    """f^-1 on ran(f), extended to the codomain of delta the canonical way."""
    inverse = {v: a for a, v in f.mapping.items()}
    anchor = inverse[delta.range()[0]]
    return UnaryTable(delta.codomain, delta.domain, {y: inverse.get(y, anchor) for y in delta.codomain},
                      f"{f.name}^-1")


def _preassociative_or_raise(F: VarFn, cfg: Optional[SearchConfig]) -> PropertyReport:
    report = check(F, "b_preassociative", cfg)
    if report.failed:
        raise NotBPreassociative(report)
    if budget_exhausted(report):
        raise BudgetExceeded((cfg or SearchConfig()).resolved_budget())
    return report


def _factorize_tabulated(F: VarFn, cfg: Optional[SearchConfig], max_len: int) -> FactorizationResult:
    parts = {n: _finite_part(F, n, None) for n in range(1, max_len + 1)}
    table = {x: h for p in parts.values() for x, h in p.table.items()}
    H = VarFn(name=f"H[{F.name}]", domain=F.domain, max_arity=max_len, table=table, default=EPSILON,
              epsilon_standard=True)
    outer: Dict[int, Outer] = {}
    in_q = True
    for n, p in parts.items():
        f = p.delta.restricted(set(p.table.values()), name=f"f_{n}")
        outer[n] = f
        in_q = in_q and is_quasi_inverse(p.delta, _extended_inverse(p.delta, f))

    result = FactorizationResult(function=F.name, path=TABULATED_PATH, H=H, outer=outer, convention=CONVENTION)
    result.checks = {
        "outer_injective": all(f.is_injective() for f in outer.values()),
        "recomposition": all(
            values_equal(result.recompose(x), safe_value(F, x))
            for n in parts for x in all_strings(F.domain.elements, n)
        ),
        "outer_inverse_is_quasi_inverse": in_q,
        "parts_range_idempotent": all(p.ok for p in parts.values()),
    }
    return result


def _factorize_closed_form(F: VarFn, cfg: Optional[SearchConfig], space: SearchSpace) -> FactorizationResult:
    inverse = _require_inverse(F, cfg)
    qri = check(F, "arity_wise_quasi_range_idempotent", cfg)
    if qri.failed:
        raise NotQuasiRangeIdempotent(len(qri.witness.x), to_jsonable(qri.witness.lhs))

    def h(x: Str) -> Any:
        return inverse(len(x), safe_value(F, x))

    H = VarFn(name=f"H[{F.name}]", domain=F.domain, max_arity=F.max_arity, evaluator=h, default=EPSILON,
              diagonal_inverse=_identity_inverse, epsilon_standard=True)
    outer: Dict[int, Outer] = {n: (lambda v, n=n: safe_value(F, (v,) * n)) for n in space.lengths()}
    result = FactorizationResult(function=F.name, path=CLOSED_FORM_PATH, H=H, outer=outer)
    result.checks = {
        "outer_injective": all(
            values_equal(inverse(n, outer[n](a)), a) for n in space.lengths() for a in space.atoms
        ),
        "recomposition": all(
            values_equal(result.recompose(x), safe_value(F, x)) for n in space.lengths() for x in space.strings(n)
        ),
    }
    result.reports.append(qri)
    return result


def factorize(F: VarFn, cfg: Optional[SearchConfig] = None) -> FactorizationResult:
    """Decompose a B-preassociative, arity-wise quasi-range-idempotent F."""
    base = _preassociative_or_raise(F, cfg)
    space = SearchSpace(F, cfg)
    if F.domain.is_finite:
        result = _factorize_tabulated(F, cfg, space.max_len)
    else:
        result = _factorize_closed_form(F, cfg, space)
    result.reports.insert(0, base)
    result.reports.append(check(result.H, "b_associative", cfg))
    debug(f"factorize {F.name}: path={result.path} ok={result.ok}")
    return result


def idempotizable_decompose(F: VarFn, n: int, candidate: Optional[VarFn] = None,
                            cfg: Optional[SearchConfig] = None) -> PartFactor:
    """The unique idempotent H_n with F_n = delta_{F_n} o H_n.

    A ``candidate`` H_n is compared against the factor on every checked string.
    """
    if F.domain.is_finite:
        collision = diagonal_collision(F, n)
        if collision is not None:
            raise DiagonalNotInjective(n, collision)
        factor = _finite_part(F, n, None)
        strings = list(all_strings(F.domain.elements, n))
        atoms = list(F.domain.elements)
    else:
        _require_inverse(F, cfg)
        factor = _closed_form_part(F, n, cfg)
        space = SearchSpace(F, cfg)
        strings = space.strings(n)
        atoms = space.atoms
        for a in atoms:
            d = factor.delta(a)
            if not values_equal(F.diagonal_inverse(n, d), a):
                raise DiagonalNotInjective(n, (a, to_jsonable(d)))

    factor.checks["idempotent"] = all(values_equal(factor.part((a,) * n), a) for a in atoms)
    if candidate is not None:
        factor.matches_candidate = all(values_equal(safe_value(candidate, x), factor.part(x)) for x in strings)
    return factor


def compose_with_quasi_inverses(H: VarFn, max_len: Optional[int] = None, name: Optional[str] = None) -> VarFn:
    """F_n = g_n o H_n with g_n the canonical quasi-inverse of delta_{H_n}."""
    if not H.domain.is_finite:
        raise TableFormatError("quasi-inverse composition needs a finite domain")
    bound = H.arity_bound(max_len or H.max_arity or SEARCH["max_len"])
    table: Dict[Str, Any] = {}
    for n in range(1, bound + 1):
        g = quasi_inverse(delta_table(H, n)).g
        for x in all_strings(H.domain.elements, n):
            table[x] = g(safe_value(H, x))
    return VarFn(name=name or f"q∘{H.name}", domain=H.domain, max_arity=bound, table=table, default=EPSILON)
