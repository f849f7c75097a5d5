import itertools
from typing import Any, Callable, Dict, Iterator, Sequence

import orjson
import pytest

from barylab.core import log
from barylab.core.domains import DomainDesc
from barylab.core.strings import EPSILON, Str, strings_up_to
from barylab.core.varfn import VarFn
from barylab.properties import SearchConfig


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for var in ("BARYLAB_BUDGET", "BARYLAB_JOBS", "BARYLAB_DEBUG"):
        monkeypatch.delenv(var, raising=False)
    log.reset()
    yield
    log.reset()


def tabulated(atoms: Sequence[Any], max_arity: int, fn: Callable[[Str], Any], name: str = "T",
              default: Any = EPSILON) -> VarFn:
    """A table built by evaluating ``fn`` on every nonempty string up to ``max_arity``."""
    table = {x: fn(x) for x in strings_up_to(atoms, max_arity, min_len=1)}
    return VarFn(name=name, domain=DomainDesc.finite(atoms), max_arity=max_arity, table=table, default=default)


def all_tables(atoms: Sequence[Any], max_arity: int) -> Iterator[VarFn]:
    """Every ε-standard table X^1..X^max_arity -> X, in a fixed order."""
    strings = list(strings_up_to(atoms, max_arity, min_len=1))
    for i, values in enumerate(itertools.product(atoms, repeat=len(strings))):
        yield VarFn(name=f"t{i}", domain=DomainDesc.finite(atoms), max_arity=max_arity,
                    table=dict(zip(strings, values)))


def table_doc(atoms: Sequence[Any], max_arity: int, fn: Callable[[Str], Any]) -> Dict[str, Any]:
    return {
        "domain": list(atoms),
        "max_arity": max_arity,
        "table": [{"in": list(x), "out": fn(x)} for x in strings_up_to(atoms, max_arity, min_len=1)],
    }


@pytest.fixture
def write_table(tmp_path):
    def _write(doc: Dict[str, Any], name: str = "table.json"):
        path = tmp_path / name
        path.write_bytes(orjson.dumps(doc))
        return path

    return _write


@pytest.fixture
def exhaustive():
    return SearchConfig(max_len=4)


@pytest.fixture
def sampled():
    return SearchConfig(max_len=6)
