from typing import Any, Optional


class BaryLabError(RuntimeError):
    pass


class ArityExceeded(BaryLabError):
    def __init__(self, length: int, max_arity: Optional[int]):
        super().__init__(f"string of length {length} exceeds max arity {max_arity}")
        self.length = length
        self.max_arity = max_arity


class DomainMismatch(BaryLabError):
    def __init__(self, atom: Any, domain: str):
        super().__init__(f"atom {atom!r} is outside domain {domain}")
        self.atom = atom


class UnknownName(BaryLabError):
    pass


class TableFormatError(BaryLabError):
    pass


class GeneratorNotInvertible(BaryLabError):
    def __init__(self, name: str, point: Any):
        super().__init__(f"generator {name!r} fails the inverse check at {point!r}")
        self.point = point


class EmptyDomain(BaryLabError):
    pass


class ArityMismatch(BaryLabError):
    pass


class BudgetExceeded(BaryLabError):
    def __init__(self, budget: int, what: str = "evaluations"):
        super().__init__(f"budget exceeded: more than {budget} {what}")
        self.budget = budget


class NotQuasiRangeIdempotent(BaryLabError):
    def __init__(self, n: int, witness: Any):
        super().__init__(f"F_{n} is not quasi-range-idempotent: {witness!r} is in ran(F_{n}) but not in ran(delta)")
        self.n = n
        self.witness = witness


class NotBPreassociative(BaryLabError):
    def __init__(self, report: Any):
        super().__init__("function is not B-preassociative on the search space")
        self.report = report


class DiagonalNotInjective(BaryLabError):
    def __init__(self, n: int, witness: Any):
        super().__init__(f"diagonal section of F_{n} is not one-to-one: {witness!r}")
        self.n = n
        self.witness = witness


class NoDiagonalInverse(BaryLabError):
    def __init__(self, name: str):
        super().__init__(f"{name} has no closed-form diagonal inverse; only tabulated functions "
                         f"and closed forms with a one-to-one diagonal can be factorized")
        self.name = name


class DegenerateFit(BaryLabError):
    pass


class ConstructionError(BaryLabError):
    def __init__(self, message: str, k: Optional[int] = None, witness: Any = None):
        super().__init__(message)
        self.k = k
        self.witness = witness


class Phi1NotRetraction(ConstructionError):
    pass


class ConditionAViolated(ConstructionError):
    pass


class ConditionBViolated(ConstructionError):
    def __init__(self, kind: str, k: int, witness: Any = None):
        super().__init__(f"condition (b) violated ({kind}) at arity {k}", k=k, witness=witness)
        self.kind = kind
