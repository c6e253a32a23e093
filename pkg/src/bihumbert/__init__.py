"""Bibasic Humbert functions Psi1 / Psi2: evaluation, representations and identity checks."""

from .humbert import HumbertParams, psi1, psi2
from .qcore import Base, DomainError, EvalResult, PoleError, TruncationPolicy
from .qseries import phi01, phi10, phi11, phi21

__version__ = "0.1.0"

__all__ = [
    "Base",
    "DomainError",
    "EvalResult",
    "HumbertParams",
    "PoleError",
    "TruncationPolicy",
    "phi01",
    "phi10",
    "phi11",
    "phi21",
    "psi1",
    "psi2",
]
