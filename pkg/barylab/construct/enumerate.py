"""Exhaustive search for ε-standard B-associative operations on tiny domains.

Tables are grown one arity at a time. For F_{k+1} the block equations
F_{k+1}(x y z) = F_{k+1}(x F_k(y z)^k) = F_{k+1}(F_k(x y)^k z) only depend on
the already fixed F_k, so they merge the strings of length k+1 into classes
that must share a value; each class assignment is then filtered by
F_{k+1}(v^{k+1}) = v for every value v it uses.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Union

from pydantic import BaseModel

from barylab.config import ENUMERATION
from barylab.core.domains import DomainDesc
from barylab.core.errors import BudgetExceeded
from barylab.core.log import debug
from barylab.core.strings import EPSILON, Str, all_strings, strings_up_to
from barylab.core.varfn import VarFn
from barylab.properties.engine import check
from barylab.properties.space import Budget, SearchConfig

Table = Dict[Str, Any]


class Census(BaseModel):
    domain_size: int
    max_arity: int
    total: int
    b_associative: int
    associative: int
    idempotent: int
    examples: List[str] = []


@dataclass
class Enumeration:
    functions: List[VarFn] = field(default_factory=list)
    census: Optional[Census] = None


def _as_domain(domain: Union[DomainDesc, Sequence[Any]]) -> DomainDesc:
    return domain if isinstance(domain, DomainDesc) else DomainDesc.finite(list(domain))


def _guard(domain: DomainDesc, max_arity: int) -> None:
    if not domain.is_finite:
        raise ValueError("enumeration needs a finite domain")
    if len(domain.elements) > ENUMERATION["max_domain"] or max_arity > ENUMERATION["max_arity"]:
        raise BudgetExceeded(ENUMERATION["max_domain"] if len(domain.elements) > ENUMERATION["max_domain"]
                             else ENUMERATION["max_arity"], "domain atoms or arity for enumeration")
    if max_arity < 1:
        raise ValueError("max_arity must be a positive integer")


def total_tables(size: int, max_arity: int) -> int:
    """Number of ε-standard tables X^1..X^max_arity -> X."""
    return size ** sum(size ** n for n in range(1, max_arity + 1))


def _classes(partial: Table, atoms: Sequence[Any], n: int) -> Dict[Str, Str]:
    """string -> class representative for the strings of length n."""
    strings = list(all_strings(atoms, n))
    parent = {w: w for w in strings}
    position = {w: i for i, w in enumerate(strings)}

    def find(w: Str) -> Str:
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    def union(a: Str, b: Str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            # The earlier string stays the representative.
            if position[rb] < position[ra]:
                ra, rb = rb, ra
            parent[rb] = ra

    k = n - 1
    if k >= 1:
        for w in strings:
            union(w, w[:1] + (partial[w[1:]],) * k)
            union(w, (partial[w[:-1]],) * k + w[-1:])
    return {w: find(w) for w in strings}


def _extensions(partial: Table, atoms: Sequence[Any], n: int, budget: Budget) -> Iterator[Table]:
    rep = _classes(partial, atoms, n)
    roots = list(dict.fromkeys(rep.values()))
    diagonal_root = {a: rep[(a,) * n] for a in atoms}
    for values in itertools.product(atoms, repeat=len(roots)):
        budget.spend()
        assigned = dict(zip(roots, values))
        if all(assigned[diagonal_root[v]] == v for v in values):
            table = dict(partial)
            table.update({w: assigned[r] for w, r in rep.items()})
            yield table


def _descendants(partial: Table, atoms: Sequence[Any], n: int, max_arity: int, budget: Budget) -> Iterator[Table]:
    if n > max_arity:
        yield partial
        return
    for table in _extensions(partial, atoms, n, budget):
        yield from _descendants(table, atoms, n + 1, max_arity, budget)


def _to_varfn(table: Table, domain: DomainDesc, max_arity: int, index: int) -> VarFn:
    return VarFn(name=f"bassoc_{len(domain.elements)}_{max_arity}_{index}", domain=domain, max_arity=max_arity,
                 table=table, default=EPSILON, epsilon_standard=True)


def iter_b_associative(domain: Union[DomainDesc, Sequence[Any]], max_arity: int,
                       cfg: Optional[SearchConfig] = None) -> Iterator[VarFn]:
    """Every ε-standard B-associative table up to ``max_arity``, in a fixed order."""
    domain = _as_domain(domain)
    _guard(domain, max_arity)
    budget = Budget((cfg or SearchConfig()).resolved_budget())
    for i, table in enumerate(_descendants({}, domain.elements, 1, max_arity, budget)):
        yield _to_varfn(table, domain, max_arity, i)


def _is_idempotent(F: VarFn) -> bool:
    return all(F.table[(a,) * n] == a for a in F.domain.elements for n in range(1, F.max_arity + 1))


def enumerate_b_associative(
    domain: Union[DomainDesc, Sequence[Any]],
    max_arity: int,
    associative_only: bool = False,
    idempotent_only: bool = False,
    cfg: Optional[SearchConfig] = None,
) -> Enumeration:
    """Enumerate with a census; the flags filter the returned functions only.

    With jobs > 1 the search is split by the unary part and the partitions
    are merged back in order.
    """
    domain = _as_domain(domain)
    _guard(domain, max_arity)
    cfg = cfg or SearchConfig()
    atoms = domain.elements
    budget = Budget(cfg.resolved_budget())
    roots = list(_extensions({}, atoms, 1, budget))

    def _partition(root: Table) -> List[Table]:
        return list(_descendants(root, atoms, 2, max_arity, budget))

    jobs = cfg.resolved_jobs()
    if jobs > 1 and len(roots) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            partitions = list(pool.map(_partition, roots))
    else:
        partitions = [_partition(root) for root in roots]

    exact = cfg.model_copy(update={"max_len": max_arity, "jobs": 1})
    out = Enumeration()
    counts = {"b_associative": 0, "associative": 0, "idempotent": 0}
    for i, table in enumerate(t for part in partitions for t in part):
        F = _to_varfn(table, domain, max_arity, i)
        associative = check(F, "associative", exact).passed
        idempotent = _is_idempotent(F)
        counts["b_associative"] += 1
        counts["associative"] += associative
        counts["idempotent"] += idempotent
        if (associative or not associative_only) and (idempotent or not idempotent_only):
            out.functions.append(F)
    out.census = Census(domain_size=len(atoms), max_arity=max_arity, total=total_tables(len(atoms), max_arity),
                        examples=[F.name for F in out.functions[:3]], **counts)
    debug(f"enumerated {counts['b_associative']} B-associative tables on {domain.describe()} "
          f"up to arity {max_arity} ({budget.used} assignments)")
    return out


def brute_force_b_associative(domain: Union[DomainDesc, Sequence[Any]], max_arity: int,
                              cfg: Optional[SearchConfig] = None) -> List[VarFn]:
    """Filter every ε-standard table through the exhaustive b_associative check."""
    domain = _as_domain(domain)
    _guard(domain, max_arity)
    cfg = (cfg or SearchConfig()).model_copy(update={"max_len": max_arity, "jobs": 1})
    budget = Budget(cfg.resolved_budget())
    strings = list(strings_up_to(domain.elements, max_arity, min_len=1))
    out = []
    for i, values in enumerate(itertools.product(domain.elements, repeat=len(strings))):
        budget.spend()
        F = _to_varfn(dict(zip(strings, values)), domain, max_arity, i)
        if check(F, "b_associative", cfg).passed:
            out.append(F)
    return out
