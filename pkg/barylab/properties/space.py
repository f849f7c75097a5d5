import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.stats import qmc

from barylab.config import SAMPLING, SEARCH, get_settings
from barylab.core.domains import REAL_INTERVAL, VECTOR_SPACE
from barylab.core.errors import ArityExceeded, BudgetExceeded, DomainMismatch
from barylab.core.log import debug
from barylab.core.strings import UNDEFINED, Str, all_strings, expand, value_key, values_equal
from barylab.core.varfn import VarFn, evaluate

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"


class SearchConfig(BaseModel):
    """Per-call search settings. Unset fields fall back to SEARCH and the environment."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    max_len: Optional[int] = None
    samples: int = SEARCH["samples"]
    seed: int = SEARCH["seed"]
    budget: Optional[int] = None
    jobs: Optional[int] = None
    lattice_len: int = SEARCH["lattice_len"]
    pair_len: int = SEARCH["pair_len"]
    pairs_per_bucket: int = SEARCH["pairs_per_bucket"]
    # Replaces the generated lattice of a numeric domain.
    atoms: Optional[List[Any]] = None

    def resolved_budget(self) -> int:
        if self.budget is not None:
            return self.budget
        env = get_settings().budget
        return env if env is not None else SEARCH["budget"]

    def resolved_jobs(self) -> int:
        if self.jobs is not None:
            return max(1, self.jobs)
        env = get_settings().jobs
        return max(1, env if env is not None else SEARCH["jobs"])


class Budget:
    """Shared evaluation counter; raises BudgetExceeded past the limit."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0
        self._lock = threading.Lock()

    def spend(self, n: int = 1) -> None:
        with self._lock:
            if self.used + n > self.limit:
                raise BudgetExceeded(self.limit)
            self.used += n


def numeric_atoms(F: VarFn, cfg: SearchConfig) -> List[Any]:
    """Lattice points plus low-discrepancy points inside F's domain."""
    domain = F.domain
    if domain.kind == VECTOR_SPACE:
        return list(itertools.product(SAMPLING["vector_lattice"], repeat=domain.dimension))
    if domain.kind != REAL_INTERVAL:
        raise ValueError(f"no numeric lattice for {domain.describe()}")

    lattice = SAMPLING["real_lattice"] if domain.lo < 0 else SAMPLING["positive_lattice"]
    atoms: List[float] = [v for v in lattice if domain.contains(v)]
    for end, closed in ((domain.lo, domain.lo_closed), (domain.hi, domain.hi_closed)):
        if closed and end not in atoms:
            atoms.append(float(end))

    lo, hi = domain.window()
    halton = qmc.Halton(d=1, scramble=True, seed=cfg.seed)
    points = qmc.scale(halton.random(SAMPLING["low_discrepancy_points"]), lo, hi)
    for p in points[:, 0]:
        v = float(p)
        if domain.contains(v) and v not in atoms:
            atoms.append(v)
    return sorted(atoms)


def safe_value(F: VarFn, x: Str) -> Any:
    """F(x), or UNDEFINED when x leaves the domain or the arithmetic fails."""
    try:
        return evaluate(F, tuple(x))
    except (DomainMismatch, ArithmeticError, ValueError, ArityExceeded):
        return UNDEFINED


class SearchSpace:
    """The strings a check quantifies over, plus a memoized, budgeted F."""

    def __init__(self, F: VarFn, cfg: Optional[SearchConfig] = None):
        self.F = F
        self.cfg = cfg or SearchConfig()
        if F.domain.is_finite and self.cfg.atoms is None:
            self.mode = EXHAUSTIVE
            self.atoms: List[Any] = list(F.domain.elements)
            wanted = self.cfg.max_len or SEARCH["max_len"]
        else:
            self.mode = SAMPLED
            self.atoms = list(self.cfg.atoms) if self.cfg.atoms is not None else numeric_atoms(F, self.cfg)
            wanted = self.cfg.max_len or SEARCH["sampled_max_len"]
        self.max_len = F.arity_bound(wanted)
        self.budget = Budget(self.cfg.resolved_budget())
        self.jobs = self.cfg.resolved_jobs()
        self.instances = 0
        self._count_lock = threading.Lock()
        self._cache_lock = threading.Lock()
        self._cache: Dict[Str, Any] = {}
        self._strings: Dict[int, List[Str]] = {}
        self._buckets: Optional[Dict[int, Dict[Any, List[Str]]]] = None
        debug(f"space for {F.name}: mode={self.mode} atoms={len(self.atoms)} max_len={self.max_len}")

    # ── strings ──────────────────────────────────────────────────────────────

    def strings(self, length: int) -> List[Str]:
        """Strings of one length: all of them, or a seeded sample past lattice_len."""
        if length not in self._strings:
            if self.mode == EXHAUSTIVE or length <= self.cfg.lattice_len:
                items = list(all_strings(self.atoms, length))
            else:
                rng = np.random.default_rng([self.cfg.seed, length])
                idx = rng.integers(0, len(self.atoms), size=(self.cfg.samples, length))
                items = [tuple(self.atoms[i] for i in row) for row in idx]
            self._strings[length] = items
        return self._strings[length]

    def lengths(self, lo: int = 1, hi: Optional[int] = None) -> range:
        return range(lo, (self.max_len if hi is None else min(hi, self.max_len)) + 1)

    # ── evaluation ───────────────────────────────────────────────────────────

    def value(self, x: Str) -> Any:
        """F(x), or UNDEFINED when x leaves the domain or the arithmetic fails."""
        x = tuple(x)
        try:
            return self._cache[x]
        except KeyError:
            pass
        except TypeError:
            self.budget.spend()
            return safe_value(self.F, x)
        out = safe_value(self.F, x)
        # one charge per distinct string, whichever thread inserts it
        with self._cache_lock:
            if x in self._cache:
                return self._cache[x]
            self._cache[x] = out
            self.budget.spend()
        return out

    def substitute(self, x: Str, v: Any, k: int, z: Str) -> Any:
        """F(x v^k z); an undefined v makes the whole side undefined."""
        if v is UNDEFINED:
            return UNDEFINED
        return self.value(tuple(x) + expand(v, k) + tuple(z))

    def single(self, x: Str, v: Any, z: Str) -> Any:
        """F(x v z) with v inserted once (ε inserts nothing)."""
        return self.substitute(x, v, 1, z)

    # ── value buckets ────────────────────────────────────────────────────────

    def bucket_index(self) -> Dict[int, Dict[Any, List[Str]]]:
        """length -> value key -> strings of that length with that value."""
        if self._buckets is None:
            top = self.max_len if self.mode == EXHAUSTIVE else min(self.cfg.pair_len, self.max_len)
            index: Dict[int, Dict[Any, List[Str]]] = {}
            for n in range(0, top + 1):
                by_value: Dict[Any, List[Str]] = {}
                for y in self.strings(n) if n else [()]:
                    v = self.value(y)
                    if v is UNDEFINED:
                        continue
                    by_value.setdefault(value_key(v), []).append(y)
                index[n] = by_value
            self._buckets = index
        return self._buckets

    def mates(self, y: Str, same_length: bool = True) -> List[Str]:
        """Strings y' != y with F(y') = F(y), capped per bucket in sampled mode."""
        v = self.value(y)
        if v is UNDEFINED:
            return []
        key = value_key(v)
        index = self.bucket_index()
        lengths = [len(y)] if same_length else sorted(index)
        out: List[Str] = []
        cap = None if self.mode == EXHAUSTIVE else self.cfg.pairs_per_bucket
        for n in lengths:
            for other in index.get(n, {}).get(key, []):
                if other != y and values_equal(self.value(other), v):
                    out.append(other)
                    if cap is not None and len(out) >= cap:
                        return out
        return out

    def covers(self, y: Str) -> bool:
        """Whether y's length is inside the bucket index."""
        return len(y) in self.bucket_index()

    # ── scanning ─────────────────────────────────────────────────────────────

    def count(self, n: int = 1) -> None:
        with self._count_lock:
            self.instances += n

    def first_violation(self, items: Sequence[Any], test: Callable[[Any], Optional[Any]]) -> Optional[Any]:
        """The violation found at the smallest item index, or None.

        With jobs > 1 the items are split into contiguous chunks scanned in
        parallel; the reduce keeps the lowest chunk, so the answer does not
        depend on scheduling.
        """
        if self.jobs <= 1 or len(items) < 2 * self.jobs:
            for item in items:
                found = test(item)
                if found is not None:
                    return found
            return None

        size = -(-len(items) // self.jobs)
        chunks = [items[i:i + size] for i in range(0, len(items), size)]

        def _scan(chunk: Sequence[Any]) -> Optional[Any]:
            for item in chunk:
                found = test(item)
                if found is not None:
                    return found
            return None

        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            results = list(pool.map(_scan, chunks))
        for found in results:
            if found is not None:
                return found
        return None

    def describe(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "domain": self.F.domain.describe(),
            "max_len": self.max_len,
            "seed": self.cfg.seed,
            "atoms": len(self.atoms),
            "samples": self.cfg.samples if self.mode == SAMPLED else None,
        }

