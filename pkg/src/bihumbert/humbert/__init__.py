"""Bibasic Humbert functions Psi1 and Psi2 and their representations."""

from .direct import (
    ZERO,
    HumbertParams,
    psi1,
    psi1_values,
    psi2,
    psi2_slots_from_psi1,
    psi2_values,
)
from .forms import Psi1Form, Psi2Form, psi1_as, psi2_as
from .limits import (
    SCALINGS,
    LimitStudy,
    b_for_negligible,
    classical_limit_study,
    extrapolated_limit,
    limit_gap,
    psi1_classical,
    psi2_b_limit_check,
    psi2_classical,
    scaled_arguments,
)
from .samebase import SameBasePsi1Form, SameBasePsi2Form, psi1_same_base, psi2_same_base

__all__ = [
    "ZERO",
    "HumbertParams",
    "psi1",
    "psi2",
    "psi1_values",
    "psi2_values",
    "psi2_slots_from_psi1",
    "Psi1Form",
    "Psi2Form",
    "psi1_as",
    "psi2_as",
    "SameBasePsi1Form",
    "SameBasePsi2Form",
    "psi1_same_base",
    "psi2_same_base",
    "SCALINGS",
    "LimitStudy",
    "psi1_classical",
    "psi2_classical",
    "scaled_arguments",
    "limit_gap",
    "classical_limit_study",
    "extrapolated_limit",
    "psi2_b_limit_check",
    "b_for_negligible",
]
