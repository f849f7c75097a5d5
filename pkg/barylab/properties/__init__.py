from barylab.properties.engine import (
    CHECKERS,
    budget_exhausted,
    check,
    check_many,
    is_epsilon_standard,
    parse_property,
    reproduce_witness,
)
from barylab.properties.report import (
    FAIL,
    PASS,
    UNSUPPORTED,
    EquivalenceVerdict,
    PropertyReport,
    Witness,
    dumps,
)
from barylab.properties.space import EXHAUSTIVE, SAMPLED, SearchConfig, SearchSpace
from barylab.properties.suites import (
    check_composition_closure,
    check_determination,
    check_equivalence_suite,
    check_propagation,
    compose_left,
    compose_right,
    compose_right_per_arity,
)

__all__ = [
    "CHECKERS",
    "budget_exhausted",
    "check",
    "check_many",
    "is_epsilon_standard",
    "parse_property",
    "reproduce_witness",
    "FAIL",
    "PASS",
    "UNSUPPORTED",
    "EquivalenceVerdict",
    "PropertyReport",
    "Witness",
    "dumps",
    "EXHAUSTIVE",
    "SAMPLED",
    "SearchConfig",
    "SearchSpace",
    "check_composition_closure",
    "check_determination",
    "check_equivalence_suite",
    "check_propagation",
    "compose_left",
    "compose_right",
    "compose_right_per_arity",
]
