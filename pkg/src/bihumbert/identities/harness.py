"""Identity checks at single points, seeded sweeps and report serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..qcore import DomainError, PoleError, TruncationPolicy
from ..qseries import CONVENTIONS
from .points import Point, Side, draw_point, point_rng
from .registry import KNOWN_QUARANTINE, REGISTRY, get_entry, resolve_ids

__all__ = [
    "SWEEP_POLICY",
    "SCHEMA_VERSION",
    "IdentityCase",
    "IdentitySummary",
    "IdentityReport",
    "check_identity",
    "sample_point",
    "sweep",
    "quarantine_list",
    "residual",
    "CSV_COLUMNS",
]

SCHEMA_VERSION = 1

# Differences of nearby Psi values lose digits; series are summed to the last
# representable digit so that the truncation error never dominates them.
SWEEP_POLICY = TruncationPolicy(rel_tol=1e-16, abs_tol=1e-300, max_terms=10_000, small_run=3)

NEAR_CANCEL = 1e-10
MAX_ATTEMPTS = 100

PASS, FAIL, INCONCLUSIVE, SKIPPED = "pass", "fail", "inconclusive", "skipped"


def residual(lhs: complex, rhs: complex) -> float:
    """Symmetric relative error with an additive floor of 1e-30."""
    if not (_finite(lhs) and _finite(rhs)):
        return math.inf
    return abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1e-30)


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


@dataclass(frozen=True)
class IdentityCase:
    id: str
    point: Point
    lhs: complex
    rhs: complex
    residual: float
    status: str
    reading: str = "printed"
    convention: str = "standard"
    index: int = 0

    def as_dict(self) -> dict:
        return {
            "index": self.index,
            "reading": self.reading,
            "convention": self.convention,
            "point": self.point.as_dict(),
            "lhs": _cjson(self.lhs),
            "rhs": _cjson(self.rhs),
            "residual": _fjson(self.residual),
            "status": self.status,
        }


def _cjson(z: complex):
    if not _finite(z):
        return None
    return [z.real, z.imag]


def _fjson(v: float):
    return v if math.isfinite(v) else None


def _side_ok(entry, pt: Point) -> bool:
    return entry.side is None or bool(entry.side(pt))


def _prepare(entry, pt: Point) -> Point:
    if entry.r_max == 0:
        pt = pt.with_(r=1)
    if entry.s_max == 0:
        pt = pt.with_(s=1)
    if entry.adjust is not None:
        pt = entry.adjust(pt)
    return pt


def check_identity(
    ident: str,
    point: Point,
    policy: TruncationPolicy = SWEEP_POLICY,
    reading: str | None = None,
    convention: str = "standard",
    index: int = 0,
    lhs_policy: TruncationPolicy | None = None,
) -> IdentityCase:
    """Evaluate both sides of one reading at one point.

    The two sides get separate evaluation contexts and recompute every series
    they need.  ``lhs_policy`` lets a caller truncate the sides differently.
    PoleError and DomainError propagate; a side-condition violation is
    reported with status ``skipped``.
    """
    entry = get_entry(ident)
    rd = entry.readings[0] if reading is None else entry.reading(reading)
    pt = point
    if not _side_ok(entry, pt):
        return IdentityCase(entry.id, pt, complex("nan"), complex("nan"), math.inf, SKIPPED, rd.name, convention, index)
    left = Side(pt, lhs_policy or policy, convention)
    right = Side(pt, policy, convention)
    lhs = complex(rd.lhs(left))
    rhs = complex(rd.rhs(right))
    res = residual(lhs, rhs)
    if not (left.converged and right.converged) or not math.isfinite(res):
        status = INCONCLUSIVE
    elif res <= entry.tol:
        status = PASS
    else:
        status = FAIL
    return IdentityCase(entry.id, pt, lhs, rhs, res, status, rd.name, convention, index)


def _combos(entry) -> list:
    convs = CONVENTIONS if entry.uses_convention else ("standard",)
    return [(conv, rd.name) for conv in convs for rd in entry.readings]


def sample_point(ident: str, seed: int, index: int) -> Point:
    """The first draw for (seed, id, index); useful for reproducing a case."""
    entry = get_entry(ident)
    rng = point_rng(seed, entry.id, index)
    return _prepare(entry, draw_point(rng, entry.base_mode, max(entry.r_max, 1), max(entry.s_max, 1)))


def _evaluate_index(args) -> list:
    """All combos at the accepted point for (id, index); resamples as needed.

    A point is resampled when it violates the side conditions, when no combo
    evaluates cleanly (pole, domain error or non-convergence), or when the
    first clean combo sits at a near-cancellation.  A combo that raises at an
    accepted point is recorded as a failure with an infinite residual.
    """
    ident, seed, index, policy = args
    entry = REGISTRY[ident]
    rng = point_rng(seed, ident, index)
    combos = _combos(entry)
    last = None
    for _ in range(MAX_ATTEMPTS):
        pt = _prepare(entry, draw_point(rng, entry.base_mode, max(entry.r_max, 1), max(entry.s_max, 1)))
        if not _side_ok(entry, pt):
            continue
        cases = []
        for conv, name in combos:
            try:
                case = check_identity(ident, pt, policy, name, conv, index)
            except (PoleError, DomainError, ZeroDivisionError, OverflowError):
                case = IdentityCase(ident, pt, complex("nan"), complex("nan"), math.inf, FAIL, name, conv, index)
            cases.append(case)
        clean = [c for c in cases if math.isfinite(c.residual) and c.status != INCONCLUSIVE]
        if not clean:
            last = cases
            continue
        if abs(clean[0].lhs) + abs(clean[0].rhs) < NEAR_CANCEL:
            continue
        return cases
    if last is None:
        pt = _prepare(entry, draw_point(rng, entry.base_mode, max(entry.r_max, 1), max(entry.s_max, 1)))
        last = [IdentityCase(ident, pt, complex("nan"), complex("nan"), math.inf, INCONCLUSIVE, n, cv, index)
                for cv, n in combos]
    return [IdentityCase(ident, c.point, c.lhs, c.rhs, c.residual, INCONCLUSIVE, c.reading, c.convention, index)
            for c in last]


@dataclass
class IdentitySummary:
    id: str
    reference: str
    tolerance: float
    status: str                 # pass | fail | quarantined
    reading: str | None         # adopted reading, None when nothing passes
    convention: str | None
    n: int
    pass_rate: float
    max_residual: float
    worst_point: Point | None
    readings: list = field(default_factory=list)     # per (convention, reading) stats
    cases: list = field(default_factory=list)        # cases of the adopted (or printed) combo
    quarantine: dict | None = None

    def as_dict(self, include_cases: bool = True) -> dict:
        out = {
            "id": self.id,
            "reference": self.reference,
            "status": self.status,
            "reading": self.reading,
            "convention": self.convention,
            "tolerance": self.tolerance,
            "n": self.n,
            "pass_rate": self.pass_rate,
            "max_residual": _fjson(self.max_residual),
            "worst_point": None if self.worst_point is None else self.worst_point.as_dict(),
            "readings": self.readings,
        }
        if self.quarantine is not None:
            out["quarantine"] = self.quarantine
        if include_cases:
            out["cases"] = [c.as_dict() for c in self.cases]
        return out


def _stats(cases: list) -> dict:
    n = len(cases)
    passed = sum(c.status == PASS for c in cases)
    worst = max(cases, key=lambda c: (c.residual, -c.index))
    return {
        "n": n,
        "pass_rate": passed / n,
        "max_residual": worst.residual,
        "worst": worst,
        "inconclusive": sum(c.status == INCONCLUSIVE for c in cases),
    }


def _summarize(ident: str, per_index: list) -> IdentitySummary:
    entry = REGISTRY[ident]
    combos = _combos(entry)
    by_combo = {combo: [] for combo in combos}
    for cases in per_index:
        for c in cases:
            by_combo[(c.convention, c.reading)].append(c)
    readings = []
    adopted = None
    for combo in combos:
        st = _stats(by_combo[combo])
        readings.append({
            "convention": combo[0],
            "reading": combo[1],
            "pass_rate": st["pass_rate"],
            "max_residual": _fjson(st["max_residual"]),
            "inconclusive": st["inconclusive"],
        })
        if adopted is None and st["pass_rate"] == 1.0:
            adopted = combo
    shown = adopted or combos[0]
    st = _stats(by_combo[shown])
    worst = st["worst"].point
    if adopted is not None:
        status = PASS
    elif ident in KNOWN_QUARANTINE:
        status = "quarantined"
    else:
        status = FAIL
    q = None
    if status == "quarantined":
        known = KNOWN_QUARANTINE[ident]
        q = {
            "minimal_counterexample": known["counterexample"],
            "minimal_residual": known["residual"],
            "readings_tried": [f"{cv}/{rd}" for cv, rd in combos],
            "notes": known.get("notes", ""),
        }
    return IdentitySummary(
        id=ident,
        reference=entry.reference,
        tolerance=entry.tol,
        status=status,
        reading=shown[1] if adopted else None,
        convention=shown[0] if adopted else None,
        n=st["n"],
        pass_rate=st["pass_rate"],
        max_residual=st["max_residual"],
        worst_point=worst,
        readings=readings,
        cases=by_combo[shown],
        quarantine=q,
    )


@dataclass
class IdentityReport:
    seed: int
    n_points: int
    policy: TruncationPolicy
    identities: list

    @property
    def quarantine(self) -> list:
        return [s.id for s in self.identities if s.status == "quarantined"]

    @property
    def failures(self) -> list:
        return [s.id for s in self.identities if s.status == FAIL]

    @property
    def conventions(self) -> dict:
        return {s.id: s.convention for s in self.identities if REGISTRY[s.id].uses_convention}

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self, ident: str) -> IdentitySummary:
        key = get_entry(ident).id
        for s in self.identities:
            if s.id == key:
                return s
        raise KeyError(ident)

    def as_dict(self, include_cases: bool = True) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "seed": self.seed,
            "n_points": self.n_points,
            "policy": self.policy.as_dict(),
            "identities": [s.as_dict(include_cases) for s in self.identities],
            "quarantine": self.quarantine,
            "conventions": self.conventions,
        }

    def to_json(self, include_cases: bool = True) -> str:
        return json.dumps(self.as_dict(include_cases), indent=2, ensure_ascii=False, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for s in self.identities:
            for c in s.cases:
                writer.writerow(_csv_row(c))
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"seed={self.seed} n={self.n_points} rel_tol={self.policy.rel_tol:g}"]
        for s in self.identities:
            reading = "-" if s.reading is None else s.reading
            if s.convention and REGISTRY[s.id].uses_convention:
                reading += f" [{s.convention}]"
            lines.append(
                f"{s.id:<7} {s.status:<12} pass_rate={s.pass_rate:.3f} "
                f"max_residual={s.max_residual:.2e} reading={reading}"
            )
        lines.append(f"quarantined: {', '.join(self.quarantine) or 'none'}")
        lines.append(f"failed: {', '.join(self.failures) or 'none'}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")


CSV_COLUMNS = (
    "id", "a", "b", "c", "d", "q", "p", "x_re", "x_im", "y_re", "y_im", "r", "s",
    "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "status",
)


def _csv_row(c: IdentityCase) -> list:
    pt = c.point
    return [
        c.id, repr(pt.a), repr(pt.b), repr(pt.c), repr(pt.d), repr(pt.q), repr(pt.p),
        repr(pt.x.real), repr(pt.x.imag), repr(pt.y.real), repr(pt.y.imag), pt.r, pt.s,
        repr(c.lhs.real), repr(c.lhs.imag), repr(c.rhs.real), repr(c.rhs.imag), repr(c.residual), c.status,
    ]


def sweep(
    ids,
    n_points: int,
    seed: int,
    policy: TruncationPolicy = SWEEP_POLICY,
    jobs: int = 1,
) -> IdentityReport:
    """Seeded sweep; each (id, index) draws from its own generator.

    Results are ordered by registry id and point index, so the report does
    not depend on ``jobs``.
    """
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    idents = resolve_ids(ids)
    tasks = [(ident, seed, i, policy) for ident in idents for i in range(n_points)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate_index, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_evaluate_index(t) for t in tasks]
    summaries = []
    for k, ident in enumerate(idents):
        summaries.append(_summarize(ident, results[k * n_points:(k + 1) * n_points]))
    return IdentityReport(seed, n_points, policy, summaries)


def quarantine_list() -> list:
    """Registry ids that fail under every implemented reading."""
    return [k for k in REGISTRY if k in KNOWN_QUARANTINE]


def report_from_dict(data: dict) -> IdentityReport:
    """Rebuild a report from its JSON form (cases are optional)."""
    policy = TruncationPolicy(**data["policy"])
    summaries = []
    for item in data["identities"]:
        cases = []
        for c in item.get("cases", []):
            lhs = complex(*c["lhs"]) if c["lhs"] is not None else complex("nan")
            rhs = complex(*c["rhs"]) if c["rhs"] is not None else complex("nan")
            res = c["residual"] if c["residual"] is not None else math.inf
            cases.append(IdentityCase(item["id"], Point.from_dict(c["point"]), lhs, rhs, res,
                                      c["status"], c["reading"], c["convention"], c["index"]))
        summaries.append(IdentitySummary(
            id=item["id"],
            reference=item["reference"],
            tolerance=item["tolerance"],
            status=item["status"],
            reading=item["reading"],
            convention=item["convention"],
            n=item["n"],
            pass_rate=item["pass_rate"],
            max_residual=item["max_residual"] if item["max_residual"] is not None else math.inf,
            worst_point=None if item["worst_point"] is None else Point.from_dict(item["worst_point"]),
            readings=item["readings"],
            cases=cases,
            quarantine=item.get("quarantine"),
        ))
    return IdentityReport(data["seed"], data["n_points"], policy, summaries)


__all__.append("report_from_dict")
