from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence, Union

from barylab.core.strings import Str, values_equal
from barylab.core.varfn import VarFn
from barylab.properties.engine import check
from barylab.properties.report import PropertyReport, Witness
from barylab.properties.space import SearchConfig, SearchSpace, safe_value

Part = Callable[[Str], Any]


def _upto(cfg: Optional[SearchConfig], max_len: int) -> SearchConfig:
    return (cfg or SearchConfig()).model_copy(update={"max_len": max_len})


def _with_part(F: VarFn, k: int, candidate: Part, name: Optional[str] = None) -> VarFn:
    """F truncated to arity k, with ``candidate`` as its (k+1)-ary part."""

    def _evaluate(x: Str) -> Any:
        if len(x) <= k:
            return safe_value(F, x)
        return candidate(x)

    return VarFn(name=name or f"{F.name}+F_{k + 1}", domain=F.domain, max_arity=k + 1, evaluator=_evaluate,
                 default=F.default, params=F.params)


@dataclass
class ExtensionVerdict:
    accepted: bool
    k: int
    witness: Optional[Witness] = None
    detail: Optional[str] = None
    extended: Optional[VarFn] = None
    reports: List[PropertyReport] = field(default_factory=list)


def extend(F: VarFn, k: int, candidate: Part, cfg: Optional[SearchConfig] = None) -> ExtensionVerdict:
    """Accept F_{k+1} = candidate when it solves the extension equations.

    For atoms x, z and y of length k-1:
    F_{k+1}(F_{k+1}(w)^{k+1}) = F_{k+1}(w) and
    F_{k+1}(x y z) = F_{k+1}(x F_k(y z)^k) = F_{k+1}(F_k(x y)^k z).
    """
    base = check(F, "b_associative", _upto(cfg, k))
    if not base.passed:
        return ExtensionVerdict(accepted=False, k=k, reports=[base],
                                detail=f"precondition unmet: b_associative up to arity {k} is {base.verdict()}")

    G = _with_part(F, k, candidate)
    space = SearchSpace(G, _upto(cfg, k + 1))
    n = k + 1

    def test(w: Str) -> Optional[Witness]:
        space.count()
        whole = space.value(w)
        if not values_equal(space.substitute((), whole, n, ()), whole):
            return Witness(x=w, lhs=whole, note="diagonal of the candidate does not fix its value")
        right = space.substitute(w[:1], space.value(w[1:]), k, ())
        if not values_equal(whole, right):
            return Witness(x=w[:1], y=w[1:-1], z=w[-1:], lhs=whole, rhs=right, note="right block equation")
        left = space.substitute((), space.value(w[:-1]), k, w[-1:])
        if not values_equal(whole, left):
            return Witness(x=w[:1], y=w[1:-1], z=w[-1:], lhs=whole, rhs=left, note="left block equation")
        return None

    witness = space.first_violation(space.strings(n), test)
    if witness is not None:
        return ExtensionVerdict(accepted=False, k=k, witness=witness, reports=[base],
                                detail="candidate rejected")
    cross = check(G, "b_associative", _upto(cfg, n))
    return ExtensionVerdict(accepted=True, k=k, extended=G, reports=[base, cross],
                            detail=f"accepted; b_associative up to arity {n}: {cross.verdict()}")


# ── constant tails ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ConstantTail:
    """G_k = base_k for k <= cutoff and G_k = c_k above it.

    ``constants`` is one atom for every arity, or a sequence starting at
    arity cutoff + 1 whose last entry repeats.
    """

    base: VarFn
    cutoff: int
    constants: Union[Any, Sequence[Any]]

    def constant_at(self, k: int) -> Any:
        c = self.constants
        if isinstance(c, (list, tuple)) and not self.base.domain.contains(c):
            return c[min(k - self.cutoff - 1, len(c) - 1)]
        return c


@dataclass
class TailResult:
    function: VarFn
    base_report: PropertyReport
    report: Optional[PropertyReport] = None

    @property
    def precondition_met(self) -> bool:
        return self.base_report.passed


def apply_tail(t: ConstantTail) -> VarFn:
    if t.cutoff < 1:
        raise ValueError("the cutoff arity must be positive")
    base = t.base

    def _evaluate(x: Str) -> Any:
        if len(x) <= t.cutoff:
            return safe_value(base, x)
        return t.constant_at(len(x))

    return VarFn(name=f"{base.name}|tail>{t.cutoff}", domain=base.domain, max_arity=base.max_arity,
                 evaluator=_evaluate, default=base.default, params=base.params,
                 epsilon_standard=base.epsilon_standard)


def constant_tail(t: ConstantTail, cfg: Optional[SearchConfig] = None) -> TailResult:
    """Replace every part above the cutoff by a constant and re-check B-associativity."""
    base_report = check(t.base, "b_associative", cfg)
    G = apply_tail(t)
    if not base_report.passed:
        base_report.detail = f"precondition unmet: base is {base_report.verdict()}"
        return TailResult(function=G, base_report=base_report)
    return TailResult(function=G, base_report=base_report, report=check(G, "b_associative", cfg))
