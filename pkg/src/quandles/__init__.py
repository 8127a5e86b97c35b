"""Finite quandle toolkit: construction, validation, isomorph-free
enumeration, and computation of displacement, inner automorphism, and
automorphism groups."""

from .perm import Perm, PermGroup, compose, inverse, parse_cycles, format_cycles, is_normal_in
from .quandle import (
    Quandle,
    QuandleAxiomError,
    are_isomorphic,
    canonical_form,
    from_table,
    format_matrix,
    is_canonical,
    parse_matrix,
    relabel,
)
from .groupid import GroupFingerprint, GroupName, fingerprint, identify, is_isomorphic
from .autgroups import (
    GroupTriple,
    automorphism_group,
    displacement_group,
    group_triple,
    inner_group,
    verify_known_results,
)
from .enumeration import (
    EnumerationResult,
    TimeBudgetError,
    count_quandles,
    enumerate_quandles,
    oracle_enumerate,
)
from .gapio import QuandleLibrary, emit_library, emit_results_table, parse_library

__all__ = [
    "Perm",
    "PermGroup",
    "compose",
    "inverse",
    "parse_cycles",
    "format_cycles",
    "is_normal_in",
    "Quandle",
    "QuandleAxiomError",
    "are_isomorphic",
    "canonical_form",
    "from_table",
    "format_matrix",
    "is_canonical",
    "parse_matrix",
    "relabel",
    "GroupFingerprint",
    "GroupName",
    "fingerprint",
    "identify",
    "is_isomorphic",
    "GroupTriple",
    "automorphism_group",
    "displacement_group",
    "group_triple",
    "inner_group",
    "verify_known_results",
    "EnumerationResult",
    "TimeBudgetError",
    "count_quandles",
    "enumerate_quandles",
    "oracle_enumerate",
    "QuandleLibrary",
    "emit_library",
    "emit_results_table",
    "parse_library",
]
