from barylab.construct.enumerate import (
    Census,
    Enumeration,
    brute_force_b_associative,
    enumerate_b_associative,
    iter_b_associative,
    total_tables,
)
from barylab.construct.extend import ConstantTail, ExtensionVerdict, TailResult, apply_tail, constant_tail, extend
from barylab.construct.probes import ProbeReport, probe_open_problems
from barylab.construct.sections import SectionSpec, from_sections, mean_sections, mz_sections, section_mismatch

__all__ = [
    "Census",
    "Enumeration",
    "brute_force_b_associative",
    "enumerate_b_associative",
    "iter_b_associative",
    "total_tables",
    "ConstantTail",
    "ExtensionVerdict",
    "TailResult",
    "apply_tail",
    "constant_tail",
    "extend",
    "ProbeReport",
    "probe_open_problems",
    "SectionSpec",
    "from_sections",
    "mean_sections",
    "mz_sections",
    "section_mismatch",
]
