from abc import ABC, abstractmethod
from typing import Any, Dict, Optional, Sequence

from barylab.core.domains import DomainDesc
from barylab.core.varfn import VarFn


class BaseFamily(ABC):
    """A named family of *-ary functions, built from keyword parameters."""

    name: str = ""
    param_names: Sequence[str] = ()

    @abstractmethod
    def build(self, **params: Any) -> VarFn:
        """Return the member of the family selected by ``params``."""
        pass

    def describe(self) -> Dict[str, Any]:
        return {"name": self.name, "params": list(self.param_names)}

    def _domain(self, params: Dict[str, Any], fallback: DomainDesc) -> DomainDesc:
        """A ``domain`` parameter given as a list of atoms selects a finite domain."""
        domain: Optional[Any] = params.get("domain")
        if domain is None:
            return fallback
        if isinstance(domain, DomainDesc):
            return domain
        return DomainDesc.finite(domain)
