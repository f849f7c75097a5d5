from barylab.core.domains import DomainDesc
from barylab.core.errors import ArityExceeded, BaryLabError, DomainMismatch
from barylab.core.sections import DiagonalSections, sections
from barylab.core.strings import (
    EMPTY,
    EPSILON,
    UNDEFINED,
    Str,
    concat,
    expand,
    power,
    strings_up_to,
    values_equal,
)
from barylab.core.tables import dump_table, load_table, parse_table, save_table
from barylab.core.varfn import VarFn, evaluate, tabulate

__all__ = [
    "DomainDesc",
    "BaryLabError",
    "ArityExceeded",
    "DomainMismatch",
    "DiagonalSections",
    "sections",
    "EMPTY",
    "EPSILON",
    "UNDEFINED",
    "Str",
    "concat",
    "expand",
    "power",
    "strings_up_to",
    "values_equal",
    "dump_table",
    "load_table",
    "parse_table",
    "save_table",
    "VarFn",
    "evaluate",
    "tabulate",
]
