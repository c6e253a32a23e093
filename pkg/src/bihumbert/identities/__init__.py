"""Registry of Psi1 / Psi2 identities and the numerical verification harness."""

from .harness import (
    CSV_COLUMNS,
    SCHEMA_VERSION,
    SWEEP_POLICY,
    IdentityCase,
    IdentityReport,
    IdentitySummary,
    check_identity,
    quarantine_list,
    report_from_dict,
    residual,
    sample_point,
    sweep,
)
from .points import Point, Side, draw_point, point_rng
from .registry import (
    ALIASES,
    CORE_IDS,
    KNOWN_QUARANTINE,
    REGISTRY,
    IdentityEntry,
    Reading,
    all_ids,
    get_entry,
    resolve_ids,
)

__all__ = [
    "CSV_COLUMNS",
    "SCHEMA_VERSION",
    "SWEEP_POLICY",
    "IdentityCase",
    "IdentityReport",
    "IdentitySummary",
    "check_identity",
    "quarantine_list",
    "report_from_dict",
    "residual",
    "sample_point",
    "sweep",
    "Point",
    "Side",
    "draw_point",
    "point_rng",
    "ALIASES",
    "CORE_IDS",
    "KNOWN_QUARANTINE",
    "REGISTRY",
    "IdentityEntry",
    "Reading",
    "all_ids",
    "get_entry",
    "resolve_ids",
]
