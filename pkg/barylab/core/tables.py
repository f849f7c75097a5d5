"""Reader and writer for the tabulated-function JSON format.

    {
      "domain": [atoms...],
      "codomain": [atoms...] | "same_plus_epsilon",
      "max_arity": k,
      "default": "epsilon" | atom,
      "table": [{"in": [atoms...], "out": atom | "epsilon"}, ...]
    }
"""

from pathlib import Path
from typing import Any, List, Optional, Union

import orjson
from pydantic import BaseModel, Field, ValidationError

from barylab.config import TABULATED
from barylab.core.domains import DomainDesc
from barylab.core.errors import TableFormatError
from barylab.core.strings import EPSILON, to_jsonable
from barylab.core.varfn import VarFn

SAME_PLUS_EPSILON = "same_plus_epsilon"
EPSILON_TOKEN = "epsilon"


class TableEntry(BaseModel):
    input: List[Any] = Field(alias="in")
    out: Any

    model_config = {"populate_by_name": True}


class TableFile(BaseModel):
    domain: List[Any]
    codomain: Union[List[Any], str] = SAME_PLUS_EPSILON
    max_arity: int = TABULATED["default_max_arity"]
    default: Any = EPSILON_TOKEN
    table: List[TableEntry]
    name: Optional[str] = None


def _atom(raw: Any) -> Any:
    # JSON has no tuples; vector-valued atoms arrive as lists.
    if isinstance(raw, list):
        return tuple(_atom(v) for v in raw)
    return raw


def _value(raw: Any) -> Any:
    if raw == EPSILON_TOKEN:
        return EPSILON
    return _atom(raw)


def parse_table(doc: dict, name: Optional[str] = None) -> VarFn:
    try:
        spec = TableFile.model_validate(doc)
    except ValidationError as e:
        raise TableFormatError(f"invalid table file: {e.errors()[0]['msg']}") from e

    domain = DomainDesc.finite([_atom(a) for a in spec.domain])
    if isinstance(spec.codomain, str):
        if spec.codomain != SAME_PLUS_EPSILON:
            raise TableFormatError(f"codomain must be a list or {SAME_PLUS_EPSILON!r}")
        codomain = None
        allowed = domain
    else:
        codomain = DomainDesc.finite([_atom(a) for a in spec.codomain])
        allowed = codomain

    table = {}
    for entry in spec.table:
        key = tuple(_atom(a) for a in entry.input)
        if not key:
            raise TableFormatError("table entries must have nonempty inputs; use 'default' for ε")
        if len(key) > spec.max_arity:
            raise TableFormatError(f"entry {entry.input!r} is longer than max_arity {spec.max_arity}")
        for atom in key:
            if not domain.contains(atom):
                raise TableFormatError(f"entry {entry.input!r} uses atom {atom!r} outside the domain")
        if key in table:
            raise TableFormatError(f"duplicate entry for {entry.input!r}")
        out = _value(entry.out)
        if out is not EPSILON and not allowed.contains(out):
            raise TableFormatError(f"output {entry.out!r} of {entry.input!r} is outside the codomain")
        table[key] = out

    default = _value(spec.default)
    if default is not EPSILON and not allowed.contains(default):
        raise TableFormatError(f"default {spec.default!r} is outside the codomain")
    return VarFn(
        name=name or spec.name or "table",
        domain=domain,
        codomain=codomain,
        max_arity=spec.max_arity,
        table=table,
        default=default,
    )


def load_table(path: Union[str, Path]) -> VarFn:
    path = Path(path)
    try:
        doc = orjson.loads(path.read_bytes())
    except FileNotFoundError as e:
        raise TableFormatError(f"table file not found: {path}") from e
    except orjson.JSONDecodeError as e:
        raise TableFormatError(f"table file is not valid JSON: {path}: {e}") from e
    if not isinstance(doc, dict):
        raise TableFormatError("table file must hold a JSON object")
    return parse_table(doc, name=path.stem)


def table_to_dict(F: VarFn) -> dict:
    if not F.is_tabulated:
        raise TableFormatError(f"{F.name} has no table body")
    codomain: Any = SAME_PLUS_EPSILON
    if F.codomain is not None:
        codomain = [to_jsonable(a) for a in F.codomain.elements]
    return {
        "name": F.name,
        "domain": [to_jsonable(a) for a in F.domain.elements],
        "codomain": codomain,
        "max_arity": F.max_arity,
        "default": to_jsonable(F.default),
        "table": [
            {"in": [to_jsonable(a) for a in x], "out": to_jsonable(y)}
            for x, y in F.table.items()
        ],
    }


def dump_table(F: VarFn) -> bytes:
    return orjson.dumps(table_to_dict(F), option=orjson.OPT_INDENT_2)


def save_table(F: VarFn, path: Union[str, Path]) -> None:
    Path(path).write_bytes(dump_table(F))
