__version__ = "0.1.0"

from barylab.builtins import FAMILIES, get_family, named_builtin
from barylab.core import DomainDesc, VarFn, evaluate, load_table, sections
from barylab.properties import SearchConfig, check, check_many

__all__ = [
    "__version__",
    "FAMILIES",
    "get_family",
    "named_builtin",
    "DomainDesc",
    "VarFn",
    "evaluate",
    "load_table",
    "sections",
    "SearchConfig",
    "check",
    "check_many",
]
