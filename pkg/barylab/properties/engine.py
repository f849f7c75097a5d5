"""Property checkers.

Every checker quantifies over the strings of a SearchSpace in (length,
lexicographic) order and stops at the first violating instance, so in
exhaustive mode the witness is the minimal one.
"""

import re
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

from barylab.config import CONTINUITY
from barylab.core.domains import REAL_INTERVAL
from barylab.core.errors import BudgetExceeded, UnknownName
from barylab.core.log import debug
from barylab.core.strings import EPSILON, UNDEFINED, Str, expand, is_numeric, value_key, values_equal
from barylab.core.varfn import VarFn
from barylab.properties.report import FAIL, PASS, UNSUPPORTED, PropertyReport, SpaceInfo, Witness
from barylab.properties.space import EXHAUSTIVE, SearchConfig, SearchSpace, safe_value


class Unsupported(Exception):
    """Raised inside a checker when the property cannot be decided for this body."""


Checker = Callable[[SearchSpace, Optional[int]], Optional[Witness]]


# ── B-associativity and its equivalent forms ─────────────────────────────────

def _b_associative(space: SearchSpace, _n: Optional[int], simplified: bool = False, power: bool = True) -> Optional[Witness]:
    """F(xyz) = F(x F(y)^|y| z); with ``simplified`` only |xz| <= 1."""
    for L in space.lengths():
        def test(w: Str) -> Optional[Witness]:
            whole = space.value(w)
            checked = 0
            for i in range(L + 1):
                for j in range(i + 1, L + 1):
                    if simplified and i + (L - j) > 1:
                        continue
                    x, y, z = w[:i], w[i:j], w[j:]
                    checked += 1
                    rhs = space.substitute(x, space.value(y), len(y) if power else 1, z)
                    if not values_equal(whole, rhs):
                        space.count(checked)
                        return Witness(x=x, y=y, z=z, lhs=whole, rhs=rhs)
            space.count(checked)
            return None

        found = space.first_violation(space.strings(L), test)
        if found is not None:
            return found
    return None


def _b_assoc_simplified(space: SearchSpace, n: Optional[int]) -> Optional[Witness]:
    return _b_associative(space, n, simplified=True)


def _associative(space: SearchSpace, n: Optional[int]) -> Optional[Witness]:
    """F(xyz) = F(x F(y) z)."""
    return _b_associative(space, n, power=False)


def _decomposition_value(space: SearchSpace, w: Str, i: int, j: int) -> Any:
    return space.substitute(w[:i], space.value(w[i:j]), j - i, w[j:])


def _b_assoc_form_ii(space: SearchSpace, _n: Optional[int]) -> Optional[Witness]:
    """Every decomposition xyz = x'y'z' gives F(x F(y)^|y| z) = F(x' F(y')^|y'| z')."""
    for L in space.lengths():
        splits = [(0, 0)] + [(i, j) for i in range(L + 1) for j in range(i + 1, L + 1)]

        def test(w: Str) -> Optional[Witness]:
            values = [_decomposition_value(space, w, i, j) for i, j in splits]
            checked = 0
            for a in range(len(splits)):
                for b in range(a + 1, len(splits)):
                    checked += 1
                    if not values_equal(values[a], values[b]):
                        (i, j), (k, m) = splits[a], splits[b]
                        space.count(checked)
                        return Witness(
                            x=w[:i], y=w[i:j], z=w[j:],
                            x_prime=w[:k], y_prime=w[k:m], z_prime=w[m:],
                            lhs=values[a], rhs=values[b],
                        )
            space.count(checked)
            return None

        found = space.first_violation(space.strings(L), test)
        if found is not None:
            return found
    return None


def _b_assoc_form_iii(space: SearchSpace, _n: Optional[int]) -> Optional[Witness]:
    """F(F(xy)^|xy| z) = F(x F(yz)^|yz|)."""
    for L in space.lengths():
        def test(w: Str) -> Optional[Witness]:
            checked = 0
            for i in range(L + 1):
                for j in range(i, L + 1):
                    x, y, z = w[:i], w[i:j], w[j:]
                    checked += 1
                    lhs = space.substitute((), space.value(x + y), len(x + y), z)
                    rhs = space.substitute(x, space.value(y + z), len(y + z), ())
                    if not values_equal(lhs, rhs):
                        space.count(checked)
                        return Witness(x=x, y=y, z=z, lhs=lhs, rhs=rhs)
            space.count(checked)
            return None

        found = space.first_violation(space.strings(L), test)
        if found is not None:
            return found
    return None


def _two_block_value(space: SearchSpace, x: Str, y: Str) -> Any:
    fx, fy = space.value(x), space.value(y)
    if fx is UNDEFINED or fy is UNDEFINED:
        return UNDEFINED
    return space.value(expand(fx, len(x)) + expand(fy, len(y)))


def _b_assoc_form_iv(space: SearchSpace, _n: Optional[int]) -> Optional[Witness]:
    """F(xy) = F(F(x)^|x| F(y)^|y|)."""
    for L in space.lengths():
        def test(w: Str) -> Optional[Witness]:
            whole = space.value(w)
            for a in range(L + 1):
                x, y = w[:a], w[a:]
                rhs = _two_block_value(space, x, y)
                if not values_equal(whole, rhs):
                    space.count(a + 1)
                    return Witness(x=x, y=y, lhs=whole, rhs=rhs)
            space.count(L + 1)
            return None

        found = space.first_violation(space.strings(L), test)
        if found is not None:
            return found
    return None


# ── B-preassociativity ───────────────────────────────────────────────────────

def _preassociative_scan(space: SearchSpace, same_length: bool, context: Optional[int] = None) -> Optional[Witness]:
    """F(y) = F(y') implies F(xyz) = F(xy'z).

    ``same_length`` restricts to |y| = |y'|; ``context`` fixes |xz|.
    """
    for L in space.lengths():
        def test(w: Str) -> Optional[Witness]:
            whole = space.value(w)
            checked = 0
            for i in range(L + 1):
                for j in range(i + (1 if same_length else 0), L + 1):
                    x, y, z = w[:i], w[i:j], w[j:]
                    if context is not None and len(x) + len(z) != context:
                        continue
                    if not space.covers(y):
                        continue
                    for y2 in space.mates(y, same_length=same_length):
                        if len(x) + len(y2) + len(z) > space.max_len:
                            continue
                        checked += 1
                        other = space.value(x + y2 + z)
                        if not values_equal(whole, other):
                            space.count(checked)
                            return Witness(x=x, y=y, y_prime=y2, z=z, lhs=whole, rhs=other)
            space.count(checked)
            return None

        found = space.first_violation(space.strings(L), test)
        if found is not None:
            return found
    return None


def _b_preassociative(space: SearchSpace, _n: Optional[int]) -> Optional[Witness]:
    return _preassociative_scan(space, same_length=True)


def _b_preassoc_simplified(space: SearchSpace, _n: Optional[int]) -> Optional[Witness]:
    return _preassociative_scan(space, same_length=True, context=1)


def _preassociative(space: SearchSpace, _n: Optional[int]) -> Optional[Witness]:
    return _preassociative_scan(space, same_length=False)


def _b_preassoc_two_eq(space: SearchSpace, _n: Optional[int]) -> Optional[Witness]:
    """F(x) = F(x') and F(y) = F(y') imply F(xy) = F(x'y') for equal lengths."""
    for L in space.lengths():
        def test(w: Str) -> Optional[Witness]:
            whole = space.value(w)
            checked = 0
            for a in range(L + 1):
                x, y = w[:a], w[a:]
                xs = [x] + (space.mates(x) if x and space.covers(x) else [])
                ys = [y] + (space.mates(y) if y and space.covers(y) else [])
                for x2 in xs:
                    for y2 in ys:
                        if x2 == x and y2 == y:
                            continue
                        checked += 1
                        other = space.value(x2 + y2)
                        if not values_equal(whole, other):
                            space.count(checked)
                            return Witness(x=x, y=y, x_prime=x2, y_prime=y2, lhs=whole, rhs=other)
            space.count(checked)
            return None

        found = space.first_violation(space.strings(L), test)
        if found is not None:
            return found
    return None


# ── range properties ─────────────────────────────────────────────────────────

def _arity_wise_range_idempotent(space: SearchSpace, _n: Optional[int]) -> Optional[Witness]:
    """F(F(x)^|x|) = F(x)."""
    for L in space.lengths():
        def test(x: Str) -> Optional[Witness]:
            space.count()
            lhs = space.value(x)
            rhs = space.substitute((), lhs, L, ())
            if not values_equal(lhs, rhs):
                return Witness(x=x, lhs=lhs, rhs=rhs)
            return None

        found = space.first_violation(space.strings(L), test)
        if found is not None:
            return found
    return None


def _in_diagonal_range(space: SearchSpace, n: int, v: Any, diagonal: List[Any]) -> bool:
    if any(values_equal(v, d) for d in diagonal):
        return True
    if space.mode == EXHAUSTIVE or v is EPSILON:
        return False
    inverse = space.F.diagonal_inverse
    if inverse is None:
        raise Unsupported("range membership needs a closed-form diagonal inverse on this domain")
    try:
        u = inverse(n, v)
    except (ArithmeticError, ValueError):
        return False
    return space.F.domain.contains(u) and values_equal(space.value((u,) * n), v)


def _arity_wise_quasi_range_idempotent(space: SearchSpace, _n: Optional[int]) -> Optional[Witness]:
    """ran(delta_n) = ran(F_n) at every checked arity."""
    for n in space.lengths():
        diagonal = [space.value((a,) * n) for a in space.atoms]
        by_key = {value_key(d) for d in diagonal}

        def test(x: Str) -> Optional[Witness]:
            space.count()
            v = space.value(x)
            if value_key(v) in by_key or _in_diagonal_range(space, n, v, diagonal):
                return None
            return Witness(x=x, lhs=v, rhs=None, note=f"F_{n}(x) is not a value of the diagonal section")

        found = space.first_violation(space.strings(n), test)
        if found is not None:
            return found
    return None


def _idempotent(space: SearchSpace, _n: Optional[int]) -> Optional[Witness]:
    """F(x^n) = x."""
    for n in space.lengths():
        def test(a: Any) -> Optional[Witness]:
            space.count()
            v = space.value((a,) * n)
            if not values_equal(v, a):
                return Witness(x=(a,) * n, lhs=v, rhs=a)
            return None

        found = space.first_violation(space.atoms, test)
        if found is not None:
            return found
    return None


def _diagonal_divisibility(space: SearchSpace, _n: Optional[int]) -> Optional[Witness]:
    """delta_{km} = delta_{km} o delta_k."""
    for total in space.lengths(2):
        for k in range(1, total):
            if total % k:
                continue

            def test(a: Any) -> Optional[Witness]:
                space.count()
                lhs = space.value((a,) * total)
                rhs = space.substitute((), space.value((a,) * k), total, ())
                if not values_equal(lhs, rhs):
                    return Witness(x=(a,) * k, y=(a,) * total, lhs=lhs, rhs=rhs)
                return None

            found = space.first_violation(space.atoms, test)
            if found is not None:
                return found
    return None


def _epsilon_standard(space: SearchSpace, _n: Optional[int]) -> Optional[Witness]:
    """F(x) = ε exactly when x = ε."""
    space.count()
    default = space.value(())
    if default is not EPSILON:
        return Witness(x=(), lhs=default, rhs=EPSILON, note="F(ε) must be ε")
    for L in space.lengths():
        def test(x: Str) -> Optional[Witness]:
            space.count()
            v = space.value(x)
            if v is EPSILON:
                return Witness(x=x, lhs=v, rhs=None, note="nonempty string mapped to ε")
            return None

        found = space.first_violation(space.strings(L), test)
        if found is not None:
            return found
    return None


# ── per-arity properties ─────────────────────────────────────────────────────

def _arity(space: SearchSpace, n: Optional[int]) -> int:
    n = 2 if n is None else n
    if n < 1:
        raise Unsupported("arity must be positive")
    if space.F.max_arity is not None and n > space.F.max_arity:
        raise Unsupported(f"arity {n} exceeds max arity {space.F.max_arity}")
    return n


def _symmetric(space: SearchSpace, n: Optional[int]) -> Optional[Witness]:
    """F_n(x) is invariant under adjacent transpositions (hence all permutations)."""
    n = _arity(space, n)

    def test(x: Str) -> Optional[Witness]:
        v = space.value(x)
        for i in range(n - 1):
            space.count()
            swapped = x[:i] + (x[i + 1], x[i]) + x[i + 2:]
            other = space.value(swapped)
            if not values_equal(v, other):
                return Witness(x=x, x_prime=swapped, lhs=v, rhs=other)
        return None

    return space.first_violation(space.strings(n), test)


def _numeric_interval(space: SearchSpace, what: str) -> List[float]:
    if space.F.domain.kind != REAL_INTERVAL:
        raise Unsupported(f"{what} is only checked on real intervals")
    return sorted(a for a in space.atoms if is_numeric(a))


def _strictly_increasing(space: SearchSpace, n: Optional[int]) -> Optional[Witness]:
    """Heuristic: raising one coordinate to the next lattice point raises F_n."""
    n = _arity(space, n)
    grid = _numeric_interval(space, "strict increase")
    successor = {a: b for a, b in zip(grid, grid[1:])}

    def test(x: Str) -> Optional[Witness]:
        v = space.value(x)
        for i, a in enumerate(x):
            if a not in successor:
                continue
            space.count()
            bumped = x[:i] + (successor[a],) + x[i + 1:]
            w = space.value(bumped)
            if not (is_numeric(v) and is_numeric(w) and w > v):
                return Witness(x=x, x_prime=bumped, lhs=v, rhs=w, note="raising a coordinate did not raise F")
        return None

    return space.first_violation(space.strings(n), test)


def _continuous_sampled(space: SearchSpace, n: Optional[int]) -> Optional[Witness]:
    """Heuristic: a step of CONTINUITY['step'] moves F_n by at most the modulus bound."""
    n = _arity(space, n)
    _numeric_interval(space, "continuity")
    step, bound = CONTINUITY["step"], CONTINUITY["modulus_bound"]

    def test(x: Str) -> Optional[Witness]:
        v = space.value(x)
        for i, a in enumerate(x):
            for moved in (a + step, a - step):
                if not space.F.domain.contains(moved):
                    continue
                space.count()
                nudged = x[:i] + (moved,) + x[i + 1:]
                w = space.value(nudged)
                if not (is_numeric(v) and is_numeric(w)) or abs(w - v) > bound:
                    return Witness(x=x, x_prime=nudged, lhs=v, rhs=w, note="jump above the modulus bound")
        return None

    return space.first_violation(space.strings(n), test)


# ── registry ─────────────────────────────────────────────────────────────────

CHECKERS: Dict[str, Checker] = {
    "b_associative": _b_associative,
    "b_assoc_simplified": _b_assoc_simplified,
    "b_assoc_form_ii": _b_assoc_form_ii,
    "b_assoc_form_iii": _b_assoc_form_iii,
    "b_assoc_form_iv": _b_assoc_form_iv,
    "b_preassociative": _b_preassociative,
    "b_preassoc_two_eq": _b_preassoc_two_eq,
    "b_preassoc_simplified": _b_preassoc_simplified,
    "associative": _associative,
    "preassociative": _preassociative,
    "idempotent": _idempotent,
    "arity_wise_range_idempotent": _arity_wise_range_idempotent,
    "arity_wise_quasi_range_idempotent": _arity_wise_quasi_range_idempotent,
    "diagonal_divisibility": _diagonal_divisibility,
    "epsilon_standard": _epsilon_standard,
    "symmetric": _symmetric,
    "strictly_increasing": _strictly_increasing,
    "continuous_sampled": _continuous_sampled,
}

ALIASES = {"b_assoc_form_i": "b_associative"}

PARAMETRIZED = ("symmetric", "strictly_increasing", "continuous_sampled")

_PARAM_RE = re.compile(r"^([a-z_]+)\((\d+)\)$")


def parse_property(pid: str) -> Tuple[str, Optional[int]]:
    """'symmetric(3)' -> ('symmetric', 3); 'b_associative' -> ('b_associative', None)."""
    pid = pid.strip()
    n: Optional[int] = None
    match = _PARAM_RE.match(pid)
    if match:
        pid, n = match.group(1), int(match.group(2))
    pid = ALIASES.get(pid, pid)
    if pid not in CHECKERS:
        raise UnknownName(f"unknown property {pid!r}; expected one of {sorted(CHECKERS)}")
    if n is not None and pid not in PARAMETRIZED:
        raise UnknownName(f"property {pid!r} takes no arity")
    return pid, n


def property_label(name: str, n: Optional[int]) -> str:
    if name in PARAMETRIZED:
        return f"{name}({2 if n is None else n})"
    return name


def check(F: VarFn, p: str, cfg: Optional[SearchConfig] = None) -> PropertyReport:
    """Check one property of F over the search space selected by ``cfg``."""
    name, n = parse_property(p)
    space = SearchSpace(F, cfg)
    start = time.perf_counter()
    status, witness, detail = PASS, None, None
    try:
        witness = CHECKERS[name](space, n)
        if witness is not None:
            status = FAIL
    except Unsupported as e:
        status, detail = UNSUPPORTED, str(e)
    except BudgetExceeded as e:
        status, detail = UNSUPPORTED, f"budget exceeded: {e}"
    elapsed = time.perf_counter() - start
    if name in ("strictly_increasing", "continuous_sampled") and status == PASS:
        detail = "heuristic grid check"
    debug(f"check {F.name} {property_label(name, n)} -> {status} "
          f"({space.instances} instances, {space.budget.used} evaluations, {elapsed:.3f}s)")
    return PropertyReport(
        property=property_label(name, n),
        function=F.name,
        status=status,
        space=SpaceInfo(**space.describe(), instances=space.instances, evaluations=space.budget.used),
        witness=witness,
        detail=detail,
        elapsed=elapsed,
    )


def check_many(F: VarFn, props: List[str], cfg: Optional[SearchConfig] = None) -> List[PropertyReport]:
    return [check(F, p, cfg) for p in props]


def is_epsilon_standard(F: VarFn, max_len: int, cfg: Optional[SearchConfig] = None) -> PropertyReport:
    cfg = (cfg or SearchConfig()).model_copy(update={"max_len": max_len})
    return check(F, "epsilon_standard", cfg)


def budget_exhausted(report: PropertyReport) -> bool:
    return report.status == UNSUPPORTED and (report.detail or "").startswith("budget exceeded")


# ── witness replay ───────────────────────────────────────────────────────────

def _sub(F: VarFn, x: Str, v: Any, k: int, z: Str) -> Any:
    if v is UNDEFINED:
        return UNDEFINED
    return safe_value(F, tuple(x) + expand(v, k) + tuple(z))


def reproduce_witness(F: VarFn, report: PropertyReport) -> bool:
    """Re-evaluate a failing report's witness; True when the violation reappears."""
    w = report.witness
    if report.status != FAIL or w is None:
        return False
    name, _ = parse_property(report.property)
    v = lambda s: safe_value(F, s)  # noqa: E731
    x, y, z = w.x or (), w.y or (), w.z or ()

    if name in ("b_associative", "b_assoc_simplified"):
        return not values_equal(v(x + y + z), _sub(F, x, v(y), len(y), z))
    if name == "associative":
        return not values_equal(v(x + y + z), _sub(F, x, v(y), 1, z))
    if name == "b_assoc_form_ii":
        x2, y2, z2 = w.x_prime or (), w.y_prime or (), w.z_prime or ()
        return not values_equal(_sub(F, x, v(y), len(y), z), _sub(F, x2, v(y2), len(y2), z2))
    if name == "b_assoc_form_iii":
        return not values_equal(_sub(F, (), v(x + y), len(x + y), z), _sub(F, x, v(y + z), len(y + z), ()))
    if name == "b_assoc_form_iv":
        fx, fy = v(x), v(y)
        rhs = UNDEFINED if UNDEFINED in (fx, fy) else v(expand(fx, len(x)) + expand(fy, len(y)))
        return not values_equal(v(x + y), rhs)
    if name in ("b_preassociative", "b_preassoc_simplified", "preassociative"):
        y2 = w.y_prime or ()
        same = len(y) == len(y2) or name == "preassociative"
        return same and values_equal(v(y), v(y2)) and not values_equal(v(x + y + z), v(x + y2 + z))
    if name == "b_preassoc_two_eq":
        x2, y2 = w.x_prime or (), w.y_prime or ()
        return (values_equal(v(x), v(x2)) or x == x2) and (values_equal(v(y), v(y2)) or y == y2) \
            and not values_equal(v(x + y), v(x2 + y2))
    if name == "arity_wise_range_idempotent":
        return not values_equal(v(x), _sub(F, (), v(x), len(x), ()))
    if name == "arity_wise_quasi_range_idempotent":
        if not F.domain.is_finite:
            n, val = len(x), v(x)
            if F.diagonal_inverse is None:
                return False
            try:
                u = F.diagonal_inverse(n, val)
            except (ArithmeticError, ValueError):
                return True
            return not (F.domain.contains(u) and values_equal(v((u,) * n), val))
        diagonal = [v((a,) * len(x)) for a in F.domain.elements]
        return not any(values_equal(v(x), d) for d in diagonal)
    if name == "idempotent":
        return not values_equal(v(x), x[0])
    if name == "diagonal_divisibility":
        return not values_equal(v(y), _sub(F, (), v(x), len(y), ()))
    if name == "epsilon_standard":
        return (v(x) is EPSILON) != (len(x) == 0)
    if name == "symmetric":
        return not values_equal(v(x), v(w.x_prime or ()))
    if name == "strictly_increasing":
        a, b = v(x), v(w.x_prime or ())
        return not (is_numeric(a) and is_numeric(b) and b > a)
    if name == "continuous_sampled":
        a, b = v(x), v(w.x_prime or ())
        return not (is_numeric(a) and is_numeric(b)) or abs(b - a) > CONTINUITY["modulus_bound"]
    return False
