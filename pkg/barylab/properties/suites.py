"""Cross-checks built from the single-property checkers.

The equivalence suite evaluates both sides of every theorem-mandated
equivalence independently. A disagreement on an ε-standard operation is
CRITICAL: at bounded scale it can only be an implementation bug.
"""

import time
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Union

from barylab.config import SEARCH
from barylab.core.domains import DomainDesc
from barylab.core.errors import ArityMismatch, BaryLabError
from barylab.core.log import debug, warn
from barylab.core.sections import sections, side_for
from barylab.core.strings import EPSILON, UNDEFINED, Str, values_equal
from barylab.core.varfn import VarFn
from barylab.properties import parts
from barylab.properties.engine import check
from barylab.properties.report import (
    FAIL,
    PASS,
    UNSUPPORTED,
    EquivalenceVerdict,
    PropertyReport,
    SpaceInfo,
    Witness,
)
from barylab.properties.space import EXHAUSTIVE, SearchConfig, SearchSpace, safe_value

Unary = Callable[[Any], Any]
PerArity = Union[Callable[[int], Unary], Mapping[int, Unary]]


# ── equivalence suite ────────────────────────────────────────────────────────

class _Verdicts:
    """Runs each property at most once per suite."""

    def __init__(self, F: VarFn, cfg: Optional[SearchConfig]):
        self.F = F
        self.cfg = cfg
        self._reports: Dict[str, PropertyReport] = {}

    def __call__(self, p: str) -> PropertyReport:
        if p not in self._reports:
            self._reports[p] = check(self.F, p, self.cfg)
        return self._reports[p]

    def status(self, p: str) -> str:
        return self(p).status


def _conjunction(*statuses: str) -> str:
    if UNSUPPORTED in statuses:
        return UNSUPPORTED
    return PASS if all(s == PASS for s in statuses) else FAIL


def _verdict(theorem: str, lhs: str, rhs: str, ls: str, rs: str, strict: bool, implication: bool = False) -> EquivalenceVerdict:
    if UNSUPPORTED in (ls, rs):
        return EquivalenceVerdict(theorem=theorem, lhs=lhs, rhs=rhs, lhs_status=ls, rhs_status=rs,
                                  agree=False, detail="undecided: a side is unsupported")
    agree = not (ls == PASS and rs == FAIL) if implication else ls == rs
    verdict = EquivalenceVerdict(theorem=theorem, lhs=lhs, rhs=rhs, lhs_status=ls, rhs_status=rs, agree=agree)
    if not agree:
        if strict:
            verdict.critical = True
            verdict.detail = "CRITICAL: verdicts disagree on an ε-standard operation"
            warn(f"{theorem}: {lhs}={ls} but {rhs}={rs}")
        else:
            verdict.detail = "verdicts disagree; the operation is not ε-standard on this space"
    return verdict


def check_equivalence_suite(F: VarFn, cfg: Optional[SearchConfig] = None) -> List[EquivalenceVerdict]:
    v = _Verdicts(F, cfg)
    strict = v.status("epsilon_standard") == PASS
    out: List[EquivalenceVerdict] = []

    ba = v.status("b_associative")
    for form in ("b_assoc_form_ii", "b_assoc_form_iii", "b_assoc_form_iv"):
        out.append(_verdict("equivalent forms of B-associativity", "b_associative", form, ba, v.status(form), strict))
    out.append(_verdict("B-associativity with |xz| <= 1", "b_associative", "b_assoc_simplified",
                        ba, v.status("b_assoc_simplified"), strict))

    bpa = v.status("b_preassociative")
    out.append(_verdict("B-preassociativity as two equalities", "b_preassociative", "b_preassoc_two_eq",
                        bpa, v.status("b_preassoc_two_eq"), strict))
    out.append(_verdict("B-preassociativity with |xz| = 1", "b_preassociative", "b_preassoc_simplified",
                        bpa, v.status("b_preassoc_simplified"), strict))

    awri = v.status("arity_wise_range_idempotent")
    out.append(_verdict("B-associative iff B-preassociative and AWRI", "b_associative",
                        "b_preassociative & arity_wise_range_idempotent", ba, _conjunction(bpa, awri), strict))
    out.append(_verdict("B-associative implies AWRI", "b_associative", "arity_wise_range_idempotent",
                        ba, awri, strict, implication=True))
    out.append(_verdict("B-associative implies kn-divisibility of the diagonal", "b_associative",
                        "diagonal_divisibility", ba, v.status("diagonal_divisibility"), strict, implication=True))

    space = SearchSpace(F, cfg)
    if space.mode == EXHAUSTIVE:
        out.extend(_arity_part_verdicts(F, space.max_len, strict, ba == PASS))
    debug(f"equivalence suite for {F.name}: {sum(1 for e in out if not e.agree)} disagreements")
    return out


def _status(flag: bool) -> str:
    return PASS if flag else FAIL


def _arity_part_verdicts(F: VarFn, max_len: int, strict: bool, b_assoc: bool) -> List[EquivalenceVerdict]:
    out: List[EquivalenceVerdict] = []
    for n in range(1, max_len + 1):
        ri = parts.is_range_idempotent_part(F, n)
        qri = parts.is_quasi_range_idempotent_part(F, n)
        dd = parts.diagonal_is_idempotent(F, n)
        out.append(_verdict(
            f"range_idempotent_characterization (n={n})",
            "range_idempotent", "quasi_range_idempotent & diagonal_idempotent",
            _status(ri), _status(qri and dd), strict,
        ))
        injective = parts.diagonal_is_injective(F, n)
        out.append(_verdict(
            f"range-idempotent with one-to-one diagonal is idempotent (n={n})",
            "range_idempotent & injective_diagonal", "idempotent",
            _status(ri and injective), _status(parts.is_idempotent_part(F, n)), strict, implication=True,
        ))
        if b_assoc and strict:
            out.append(_verdict(
                f"one-to-one diagonal of a B-associative operation is the identity (n={n})",
                "injective_diagonal", "diagonal_identity",
                _status(injective), _status(parts.diagonal_is_identity(F, n)), strict=True, implication=True,
            ))
    return out


# ── compositions ─────────────────────────────────────────────────────────────

def _per_arity(maps: PerArity, max_len: int) -> Callable[[int], Unary]:
    if isinstance(maps, Mapping):
        missing = [n for n in range(1, max_len + 1) if n not in maps]
        if missing:
            raise ArityMismatch(f"no map given for arities {missing}")
        return lambda n: maps[n]
    if not callable(maps):
        raise ArityMismatch("expected a mapping arity -> map or a factory n -> g_n")
    return maps


def compose_right(F: VarFn, g: Unary, domain: Optional[DomainDesc] = None, name: Optional[str] = None) -> VarFn:
    """H_n = F_n o (g, ..., g)."""
    return compose_right_per_arity(F, lambda _n: g, domain, name or f"{F.name}∘g")


def compose_right_per_arity(F: VarFn, gs: Callable[[int], Unary], domain: Optional[DomainDesc] = None,
                            name: Optional[str] = None) -> VarFn:
    """H_n = F_n o (g_n, ..., g_n)."""

    def _evaluate(x: Str) -> Any:
        g = gs(len(x))
        return safe_value(F, tuple(g(a) for a in x))

    return VarFn(name=name or f"{F.name}∘g_n", domain=domain or F.domain, max_arity=F.max_arity,
                 evaluator=_evaluate, default=F.default)


def compose_left(F: VarFn, gs: Callable[[int], Unary], name: Optional[str] = None) -> VarFn:
    """H_n = g_n o F_n; ε stays ε."""

    def _evaluate(x: Str) -> Any:
        v = safe_value(F, x)
        return v if v is EPSILON or v is UNDEFINED else gs(len(x))(v)

    return VarFn(name=name or f"g_n∘{F.name}", domain=F.domain, max_arity=F.max_arity,
                 evaluator=_evaluate, default=F.default)


def check_composition_closure(
    F: VarFn,
    maps: Union[Unary, PerArity],
    side: str,
    cfg: Optional[SearchConfig] = None,
    injective_on_range: Optional[bool] = None,
    domain: Optional[DomainDesc] = None,
) -> PropertyReport:
    """Compose F with unary maps and check that the result is B-preassociative.

    side is "right" (one inner map g), "left" (outer maps g_n given as a
    mapping arity -> map, or one map g used at every arity) or
    "right_per_arity" (inner maps g_n given as a mapping or a factory
    n -> g_n; no closure result covers this case).
    """
    max_len = SearchSpace(F, cfg).max_len
    if side == "right":
        if isinstance(maps, Mapping):
            raise ArityMismatch("right composition takes a single inner map")
        H = compose_right(F, maps, domain)
        hypothesis = "right composition of a B-preassociative function"
    elif side == "left":
        gs = _per_arity(maps, max_len) if isinstance(maps, Mapping) else (lambda _n: maps)
        H = compose_left(F, gs)
        if injective_on_range:
            hypothesis = "left composition with maps one-to-one on ran(F_n)"
        else:
            hypothesis = "left composition without an injectivity certificate"
    elif side == "right_per_arity":
        H = compose_right_per_arity(F, _per_arity(maps, max_len), domain)
        hypothesis = "right composition with arity-dependent maps"
    else:
        raise ArityMismatch(f"unknown composition side {side!r}")

    base = check(F, "b_preassociative", cfg)
    report = check(H, "b_preassociative", cfg)
    covered = base.passed and (side == "right" or (side == "left" and bool(injective_on_range)))
    notes = [f"composition_closure:{side}", hypothesis, f"F is b_preassociative: {base.verdict()}"]
    if covered and report.failed:
        report.critical = True
        notes.append("CRITICAL: closure hypotheses hold but the composite fails")
    report.detail = "; ".join(notes)
    return report


# ── propagation ──────────────────────────────────────────────────────────────

def _with_len(cfg: Optional[SearchConfig], needed: int) -> SearchConfig:
    cfg = cfg or SearchConfig()
    current = cfg.max_len if cfg.max_len is not None else min(SEARCH["max_len"], SEARCH["sampled_max_len"])
    if current >= needed:
        return cfg
    return cfg.model_copy(update={"max_len": needed})


def _constant_witness(space: SearchSpace, n: int) -> Optional[Witness]:
    strings = space.strings(n)
    if not strings:
        return None
    first = strings[0]
    v0 = space.value(first)

    def test(x: Str) -> Optional[Witness]:
        space.count()
        v = space.value(x)
        if not values_equal(v, v0):
            return Witness(x=first, x_prime=x, lhs=v0, rhs=v)
        return None

    return space.first_violation(strings, test)


def _inner_symmetry_witness(space: SearchSpace, k: int) -> Optional[Witness]:
    """y in X^k -> F_{k+2}(x y z) symmetric for every atoms x, z."""

    def test(w: Str) -> Optional[Witness]:
        v = space.value(w)
        for i in range(1, k):
            space.count()
            swapped = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
            other = space.value(swapped)
            if not values_equal(v, other):
                return Witness(x=w[:1], y=w[1:-1], z=w[-1:], x_prime=swapped, lhs=v, rhs=other)
        return None

    return space.first_violation(space.strings(k + 2), test)


def check_propagation(F: VarFn, kind: str, k: int, cfg: Optional[SearchConfig] = None,
                      regime: str = "b_associative") -> PropertyReport:
    """Concrete instance of 'hypothesis at arity k implies conclusion at k+1'."""
    if regime not in ("b_associative", "b_preassociative"):
        raise ArityMismatch(f"unknown regime {regime!r}")
    span = {"symmetry": k + 1, "constant": k + 1, "inner_symmetry": k + 3}.get(kind)
    if span is None:
        raise ArityMismatch(f"unknown propagation kind {kind!r}")
    if kind in ("symmetry", "inner_symmetry") and k < 2:
        raise ArityMismatch(f"{kind} propagation needs k >= 2")

    label = f"propagation:{kind}({k})"
    start = time.perf_counter()
    base = check(F, regime, cfg)
    space = SearchSpace(F, _with_len(cfg, span))

    def _report(status: str, detail: str, witness: Optional[Witness] = None) -> PropertyReport:
        return PropertyReport(
            property=label, function=F.name, status=status, witness=witness, detail=detail,
            space=SpaceInfo(**space.describe(), instances=space.instances, evaluations=space.budget.used),
            elapsed=time.perf_counter() - start,
        )

    if not base.passed:
        return _report(UNSUPPORTED, f"precondition unmet: {regime} is {base.verdict()}")
    if space.max_len < span:
        return _report(UNSUPPORTED, f"needs strings of length {span}; max arity is {F.max_arity}")

    if kind == "symmetry":
        hyp = check(F, f"symmetric({k})", cfg).witness
        concl = None if hyp else check(F, f"symmetric({k + 1})", _with_len(cfg, k + 1)).witness
    elif kind == "constant":
        hyp = _constant_witness(space, k)
        concl = None if hyp else _constant_witness(space, k + 1)
    else:
        hyp = _inner_symmetry_witness(space, k)
        concl = None if hyp else _inner_symmetry_witness(space, k + 1)

    if hyp is not None:
        return _report(PASS, "vacuous: the hypothesis fails on this space")
    if concl is not None:
        return _report(FAIL, "hypothesis holds but the conclusion fails", concl)
    return _report(PASS, "hypothesis and conclusion hold")


# ── determination ────────────────────────────────────────────────────────────

def _section_value(H: VarFn, k: int, side: str, a: Any, b: Any) -> Any:
    try:
        s = sections(H, k)
        return s.delta(a) if k == 1 else s.side(side)(a, b)
    except (BaryLabError, ArithmeticError, ValueError):
        return UNDEFINED


def check_determination(F: VarFn, G: VarFn, side_choices: Union[str, Sequence[str], Mapping[int, str]] = "r",
                        cfg: Optional[SearchConfig] = None) -> PropertyReport:
    """Two functions of the same class whose chosen sections agree are equal."""
    start = time.perf_counter()
    space = SearchSpace(F, cfg)

    def _report(status: str, detail: str, witness: Optional[Witness] = None, critical: bool = False) -> PropertyReport:
        return PropertyReport(
            property="determination", function=f"{F.name} vs {G.name}", status=status, witness=witness,
            detail=detail, critical=critical,
            space=SpaceInfo(**space.describe(), instances=space.instances, evaluations=space.budget.used),
            elapsed=time.perf_counter() - start,
        )

    space.count()
    f0, g0 = safe_value(F, ()), safe_value(G, ())
    if not values_equal(f0, g0):
        return _report(UNSUPPORTED, "precondition unmet: defaults differ at arity 0", Witness(x=(), lhs=f0, rhs=g0))

    for k in space.lengths():
        side = side_for(side_choices, k)
        for a in space.atoms:
            for b in space.atoms if k > 1 else [a]:
                space.count()
                fv, gv = _section_value(F, k, side, a, b), _section_value(G, k, side, a, b)
                if not values_equal(fv, gv):
                    x = (a,) if k == 1 else ((a,) * (k - 1) + (b,) if side == "r" else (a,) + (b,) * (k - 1))
                    return _report(UNSUPPORTED, f"precondition unmet: sections differ at arity {k} (side {side})",
                                   Witness(x=x, lhs=fv, rhs=gv))

    both_ba = check(F, "b_associative", cfg).passed and check(G, "b_associative", cfg).passed
    if not both_ba:
        qri = ("b_preassociative", "arity_wise_quasi_range_idempotent")
        if not all(check(H, p, cfg).passed for H in (F, G) for p in qri):
            return _report(UNSUPPORTED, "precondition unmet: neither both B-associative nor both "
                                        "B-preassociative and arity-wise quasi-range-idempotent")

    def test(x: Str) -> Optional[Witness]:
        space.count()
        fv, gv = space.value(x), safe_value(G, x)
        if not values_equal(fv, gv):
            return Witness(x=x, lhs=fv, rhs=gv)
        return None

    for L in space.lengths():
        found = space.first_violation(space.strings(L), test)
        if found is not None:
            return _report(FAIL, "CRITICAL: sections agree but the functions differ", found, critical=True)
    regime = "B-associative" if both_ba else "B-preassociative, arity-wise quasi-range-idempotent"
    return _report(PASS, f"{regime}; functions agree on the space")
