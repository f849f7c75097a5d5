"""Bounded counterexample searches for open questions about B-associative
operations on small finite domains.

A probe either exhibits a counterexample or records that none exists at the
searched bound. It never states that a conjecture holds.
"""

import itertools
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel

from barylab.core.domains import DomainDesc
from barylab.core.errors import UnknownName
from barylab.core.log import debug
from barylab.core.strings import Str, all_strings, to_jsonable
from barylab.core.tables import table_to_dict
from barylab.core.varfn import VarFn
from barylab.construct.enumerate import enumerate_b_associative
from barylab.properties.engine import check
from barylab.properties.space import Budget, SearchConfig

NO_COUNTEREXAMPLE = "no counterexample at this bound"
FOUND = "counterexample found"
OBSERVED = "observations recorded"

STATEMENTS = {
    "a": "every B-associative F has a B-associative idempotent G with F_n = delta_{F_n} o G_n",
    "b": "if F is B-associative and F_{k+1} is idempotent then F_k is idempotent",
    "d": "which outer maps f_n make F_n = f_n o H_n B-preassociative for a B-associative H",
    "divisibility": "if F is B-associative and F_{kn} is idempotent then F_k is idempotent",
}


class ProbeReport(BaseModel):
    problem: str
    statement: str
    domain: List[Any]
    max_arity: int
    searched: int
    outcome: str
    counterexample: Optional[Dict[str, Any]] = None
    observations: Dict[str, Any] = {}


def _idempotent_at(F: VarFn, n: int) -> bool:
    return all(F.table[(a,) * n] == a for a in F.domain.elements)


def _factors_through(F: VarFn, G: VarFn) -> bool:
    """F_n = delta_{F_n} o G_n at every arity."""
    return all(
        F.table[x] == F.table[(G.table[x],) * len(x)]
        for n in range(1, F.max_arity + 1)
        for x in all_strings(F.domain.elements, n)
    )


def _probe_a(functions: List[VarFn]) -> Dict[str, Any]:
    idempotent = [G for G in functions if all(_idempotent_at(G, n) for n in range(1, G.max_arity + 1))]
    for F in functions:
        if not any(_factors_through(F, G) for G in idempotent):
            return {"searched": len(functions), "counterexample": {"F": table_to_dict(F)},
                    "observations": {"idempotent_candidates": len(idempotent)}}
    return {"searched": len(functions), "observations": {"idempotent_candidates": len(idempotent)}}


def _probe_b(functions: List[VarFn]) -> Dict[str, Any]:
    for F in functions:
        for k in range(1, F.max_arity):
            if _idempotent_at(F, k + 1) and not _idempotent_at(F, k):
                return {"searched": len(functions), "counterexample": {"F": table_to_dict(F), "k": k}}
    return {"searched": len(functions)}


def _probe_divisibility(functions: List[VarFn]) -> Dict[str, Any]:
    pairs = 0
    for F in functions:
        for k in range(1, F.max_arity + 1):
            for n in range(2, F.max_arity // k + 1):
                pairs += 1
                if _idempotent_at(F, k * n) and not _idempotent_at(F, k):
                    return {"searched": len(functions), "counterexample": {"F": table_to_dict(F), "k": k, "n": n},
                            "observations": {"pairs": pairs}}
                if any(F.table[(a,) * (k * n)] != F.table[(F.table[(a,) * k],) * (k * n)]
                       for a in F.domain.elements):
                    return {"searched": len(functions),
                            "counterexample": {"F": table_to_dict(F), "k": k, "n": n, "identity": "diagonal"},
                            "observations": {"pairs": pairs}}
    return {"searched": len(functions), "observations": {"pairs": pairs}}


def _outer_choices(H: VarFn, atoms: Sequence[Any]) -> List[Dict[int, Dict[Any, Any]]]:
    per_arity = []
    for n in range(1, H.max_arity + 1):
        ran = sorted({H.table[x] for x in all_strings(atoms, n)}, key=atoms.index)
        per_arity.append([dict(zip(ran, images)) for images in itertools.product(atoms, repeat=len(ran))])
    return [dict(enumerate(choice, start=1)) for choice in itertools.product(*per_arity)]


def _probe_d(functions: List[VarFn], cfg: SearchConfig) -> Dict[str, Any]:
    budget = Budget(cfg.resolved_budget())
    exact = cfg.model_copy(update={"jobs": 1})
    total = preassociative = noninjective = 0
    example: Optional[Dict[str, Any]] = None
    for H in functions:
        atoms = list(H.domain.elements)
        for outer in _outer_choices(H, atoms):
            budget.spend()
            total += 1
            table: Dict[Str, Any] = {x: outer[len(x)][h] for x, h in H.table.items()}
            F = VarFn(name=f"f∘{H.name}", domain=H.domain, max_arity=H.max_arity, table=table)
            if not check(F, "b_preassociative", exact.model_copy(update={"max_len": H.max_arity})).passed:
                continue
            preassociative += 1
            if any(len(set(f.values())) < len(f) for f in outer.values()):
                noninjective += 1
                if example is None:
                    example = {"H": table_to_dict(H),
                               "outer": {str(n): [[to_jsonable(a), to_jsonable(b)] for a, b in f.items()]
                                         for n, f in outer.items()}}
    observations: Dict[str, Any] = {
        "compositions": total,
        "b_preassociative": preassociative,
        "b_preassociative_with_noninjective_outer": noninjective,
    }
    if example is not None:
        observations["example_noninjective"] = example
    return {"searched": total, "observations": observations}


def probe_open_problems(problem: str, domain: Union[DomainDesc, Sequence[Any]], max_arity: int,
                        cfg: Optional[SearchConfig] = None) -> ProbeReport:
    if problem not in STATEMENTS:
        raise UnknownName(f"unknown problem {problem!r}; expected one of {sorted(STATEMENTS)}")
    cfg = cfg or SearchConfig()
    enumeration = enumerate_b_associative(domain, max_arity, cfg=cfg)
    functions = enumeration.functions

    if problem == "a":
        found = _probe_a(functions)
    elif problem == "b":
        found = _probe_b(functions)
    elif problem == "divisibility":
        found = _probe_divisibility(functions)
    else:
        found = _probe_d(functions, cfg)

    if problem == "d":
        outcome = OBSERVED
    else:
        outcome = FOUND if found.get("counterexample") else NO_COUNTEREXAMPLE
    elements = functions[0].domain.elements if functions else tuple(
        domain.elements if isinstance(domain, DomainDesc) else domain)
    debug(f"probe {problem} on {len(elements)} atoms up to arity {max_arity}: {outcome}")
    return ProbeReport(
        problem=problem,
        statement=STATEMENTS[problem],
        domain=[to_jsonable(a) for a in elements],
        max_arity=max_arity,
        searched=found["searched"],
        outcome=outcome,
        counterexample=found.get("counterexample"),
        observations=found.get("observations", {}),
    )
