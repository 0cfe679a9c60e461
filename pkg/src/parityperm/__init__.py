"""Groups and monoids of mappings on ``[n]`` defined by the parity of their injective restrictions."""

from .closure import ClosureBudgetError, ClosureStats, closure, generated_monoid
from .groups import (
    GroupResult, is_pap, is_parity_group_member, pap_count, pap_enumerate, parity_group,
    parity_group_bruteforce,
)
from .mapset import SCHEMA, MonoidSet
from .monoids import classical_monoid, inclusion_lattice, is_parity_monoid_member, parity_monoid
from .orientation import MappingClassFlags, classify_mapping, classify_sequence
from .perm import (
    CapError, PartialInjection, PartialMapping, Transformation, compose, cyclic_shift,
    identity, inversions, is_even, parse_word, restrict, reversal,
)
from .report import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "ClosureBudgetError", "ClosureStats", "closure", "generated_monoid",
    "GroupResult", "is_pap", "is_parity_group_member", "pap_count", "pap_enumerate",
    "parity_group", "parity_group_bruteforce",
    "SCHEMA", "MonoidSet",
    "classical_monoid", "inclusion_lattice", "is_parity_monoid_member", "parity_monoid",
    "MappingClassFlags", "classify_mapping", "classify_sequence",
    "CapError", "PartialInjection", "PartialMapping", "Transformation", "compose", "cyclic_shift",
    "identity", "inversions", "is_even", "parse_word", "restrict", "reversal",
    "VerificationReport",
]
