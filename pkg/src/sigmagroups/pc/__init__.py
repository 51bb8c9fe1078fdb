"""Power-commutator presentations and desk-scale group machinery."""
from .presentation import (BoundExceeded, DEFAULT_ENUMERATION_BOUND, InconsistentPresentation,
                           PcPresentation, evaluate_elem)
from .consistency import is_consistent, standardize
from .subgroups import (Subgroup, derived_subgroup, frattini, lower_central_term,
                        maximal_subgroups, normal_closure, quotient, subgroup_from_set,
                        whole_group)
from .abelian import AbelianType, abelian_invariants, automorphism_group_order

__all__ = [
    "AbelianType", "BoundExceeded", "DEFAULT_ENUMERATION_BOUND", "InconsistentPresentation",
    "PcPresentation", "Subgroup", "abelian_invariants", "automorphism_group_order",
    "derived_subgroup", "evaluate_elem", "frattini", "is_consistent", "lower_central_term",
    "maximal_subgroups", "normal_closure", "quotient", "standardize", "subgroup_from_set",
    "whole_group",
]
