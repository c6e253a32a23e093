"""Command-line front end: eval, verify, list and report.

Exit codes: 0 ok, 1 bad input, 2 series did not converge, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

from .humbert import (
    HumbertParams,
    Psi1Form,
    Psi2Form,
    SameBasePsi1Form,
    SameBasePsi2Form,
    psi1_as,
    psi1_same_base,
    psi2_as,
    psi2_same_base,
)
from .identities import (
    KNOWN_QUARANTINE,
    REGISTRY,
    SWEEP_POLICY,
    report_from_dict,
    resolve_ids,
    sweep,
)
from .qcore import DomainError, PoleError, TruncationPolicy, q_exp_E, q_gamma, qpow
from .qseries import CONVENTIONS, phi01, phi10, phi11, phi21

__all__ = ["CliConfig", "UsageError", "parse_args", "parse_number", "main", "FUNCTIONS"]

EXIT_OK, EXIT_USAGE, EXIT_NONCONVERGED, EXIT_FAILED = 0, 1, 2, 3

FUNCTIONS = ("psi1", "psi2", "phi21", "phi11", "phi10", "phi01", "qgamma", "qexp")
FORMATS = ("json", "csv", "text")
PARAM_NAMES = ("a", "b", "c", "d", "q", "p", "x", "y", "t")

REQUIRED = {
    "psi1": ("a", "b", "c", "d", "q", "p", "x", "y"),
    "psi2": ("a", "b", "c", "q", "p", "x", "y"),
    "phi21": ("a", "b", "c", "q", "x"),
    "phi11": ("a", "c", "q", "x"),
    "phi10": ("a", "q", "x"),
    "phi01": ("c", "q", "x"),
    "qgamma": ("t", "q"),
    "qexp": ("t", "q"),
}

PSI1_FORMS = tuple(f.value for f in Psi1Form) + tuple(f.value for f in SameBasePsi1Form)
PSI2_FORMS = tuple(f.value for f in Psi2Form) + tuple(f.value for f in SameBasePsi2Form)

_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class UsageError(ValueError):
    pass


def parse_number(name: str, text: str) -> complex:
    """Decimal or complex literal such as '0.3', '-1e-2', '0.3+0.1i' or '2i'."""
    s = str(text).strip().replace(" ", "")
    if not s:
        raise UsageError(f"--{name}: empty value")
    if _NUMBER.match(s):
        return complex(float(s), 0.0)
    if s.endswith(("i", "j")):
        try:
            return complex(s[:-1] + "j")
        except ValueError:
            pass
    raise UsageError(f"--{name}: cannot parse {text!r} as a number (use e.g. 0.3 or 0.3+0.1i)")


def _real_or_complex(z: complex):
    return z.real if z.imag == 0 else z


@dataclass
class CliConfig:
    subcommand: str
    function: str | None = None
    params: dict = field(default_factory=dict)      # name -> decimal string as given
    form: str | None = None
    convention: str = "standard"
    ids: str = "all"
    n_points: int = 50
    seed: int = 0
    rel_tol: float = SWEEP_POLICY.rel_tol
    max_terms: int = SWEEP_POLICY.max_terms
    format: str | None = None
    output: str | None = None
    jobs: int = 1
    quarantined: bool = False
    input: str | None = None

    def policy(self) -> TruncationPolicy:
        return TruncationPolicy(rel_tol=self.rel_tol, max_terms=self.max_terms)

    def to_argv(self) -> list:
        """Textual form; parse_args(cfg.to_argv()) == cfg."""
        argv = [self.subcommand]
        if self.subcommand == "eval":
            argv.append(self.function)
            for k in PARAM_NAMES:
                if k in self.params:
                    # the joined form keeps values like -1e-3 or -0.2+0.1i out of option parsing
                    argv.append(f"--{k}={self.params[k]}")
            if self.form is not None:
                argv += ["--form", self.form]
            argv += ["--convention", self.convention,
                     "--rel-tol", repr(self.rel_tol), "--max-terms", str(self.max_terms)]
        elif self.subcommand == "verify":
            argv += ["--ids", self.ids, "--n", str(self.n_points), "--seed", str(self.seed),
                     "--rel-tol", repr(self.rel_tol), "--max-terms", str(self.max_terms),
                     "--jobs", str(self.jobs)]
        elif self.subcommand == "list":
            if self.quarantined:
                argv.append("--quarantined")
        elif self.subcommand == "report":
            argv += ["--input", self.input]
        if self.subcommand in ("eval", "verify", "report") and self.format is not None:
            argv += ["--format", self.format]
        if self.output is not None and self.subcommand in ("eval", "verify", "report"):
            argv += ["--output", self.output]
        return argv


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bihumbert", description="Bibasic Humbert functions: evaluation and identity checks.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate a function at one point")
    ev.add_argument("function", choices=FUNCTIONS)
    for k in PARAM_NAMES:
        ev.add_argument(f"--{k}", default=None)
    ev.add_argument("--form", default=None)
    ev.add_argument("--convention", choices=CONVENTIONS, default="standard")
    ev.add_argument("--rel-tol", type=float, default=None)
    ev.add_argument("--max-terms", type=int, default=None)
    ev.add_argument("--format", choices=("json", "text"), default=None)
    ev.add_argument("--output", default=None)

    ve = sub.add_parser("verify", help="sweep identities at seeded random points")
    ve.add_argument("--ids", default="all")
    ve.add_argument("--n", type=int, default=50, dest="n_points")
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--rel-tol", type=float, default=SWEEP_POLICY.rel_tol)
    ve.add_argument("--max-terms", type=int, default=SWEEP_POLICY.max_terms)
    ve.add_argument("--format", choices=FORMATS, default=None)
    ve.add_argument("--output", default=None)
    ve.add_argument("--jobs", type=int, default=1)

    li = sub.add_parser("list", help="list registry ids")
    li.add_argument("--quarantined", action="store_true")

    re_ = sub.add_parser("report", help="re-render a saved JSON report")
    re_.add_argument("--input", required=True)
    re_.add_argument("--format", choices=FORMATS, default=None)
    re_.add_argument("--output", default=None)
    return parser


def parse_args(argv) -> CliConfig:
    ns = _build_parser().parse_args(list(argv))
    cfg = CliConfig(subcommand=ns.subcommand)
    if ns.subcommand == "eval":
        cfg.function = ns.function
        cfg.params = {k: getattr(ns, k) for k in PARAM_NAMES if getattr(ns, k) is not None}
        cfg.form = ns.form
        cfg.convention = ns.convention
        if ns.rel_tol is not None:
            cfg.rel_tol = ns.rel_tol
        else:
            cfg.rel_tol = TruncationPolicy().rel_tol
        if ns.max_terms is not None:
            cfg.max_terms = ns.max_terms
        cfg.format, cfg.output = ns.format, ns.output
    elif ns.subcommand == "verify":
        cfg.ids, cfg.n_points, cfg.seed = ns.ids, ns.n_points, ns.seed
        cfg.rel_tol, cfg.max_terms, cfg.jobs = ns.rel_tol, ns.max_terms, ns.jobs
        cfg.format, cfg.output = ns.format, ns.output
    elif ns.subcommand == "list":
        cfg.quarantined = ns.quarantined
    else:
        cfg.input, cfg.format, cfg.output = ns.input, ns.format, ns.output
    _validate(cfg)
    return cfg


def _validate(cfg: CliConfig) -> None:
    if cfg.subcommand == "eval":
        missing = [k for k in REQUIRED[cfg.function] if k not in cfg.params]
        if missing:
            raise UsageError(f"{cfg.function} needs --{', --'.join(missing)}")
        for k, v in cfg.params.items():
            parse_number(k, v)
        if cfg.form is not None:
            allowed = {"psi1": PSI1_FORMS, "psi2": PSI2_FORMS}.get(cfg.function, ())
            if cfg.form not in allowed:
                raise UsageError(f"--form {cfg.form!r} not available for {cfg.function}; choose from {', '.join(allowed) or 'none'}")
    if cfg.subcommand in ("eval", "verify"):
        try:
            cfg.policy()
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if cfg.subcommand == "verify":
        if cfg.n_points < 1:
            raise UsageError("--n must be >= 1")
        if cfg.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        try:
            resolve_ids(cfg.ids)
        except KeyError as exc:
            raise UsageError(f"{exc.args[0]}; valid ids: {', '.join(REGISTRY)}") from None


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _evaluate(cfg: CliConfig):
    v = {k: parse_number(k, s) for k, s in cfg.params.items()}
    policy = cfg.policy()
    fn = cfg.function
    if fn in ("psi1", "psi2"):
        params = HumbertParams(
            a=_real_or_complex(v["a"]), b=_real_or_complex(v["b"]), c=_real_or_complex(v["c"]),
            d=_real_or_complex(v.get("d", 0j)), q=_real_or_complex(v["q"]), p=_real_or_complex(v["p"]),
        )
        form = cfg.form or "direct"
        if fn == "psi1":
            if form in {f.value for f in SameBasePsi1Form}:
                return psi1_same_base(form, params, v["x"], v["y"], policy, cfg.convention)
            return psi1_as(form, params, v["x"], v["y"], policy, cfg.convention)
        if form in {f.value for f in SameBasePsi2Form}:
            return psi2_same_base(form, params, v["x"], v["y"], policy)
        return psi2_as(form, params, v["x"], v["y"], policy, cfg.convention)
    q = _real_or_complex(v["q"])
    if fn == "phi21":
        return phi21(qpow(q, v["a"]), qpow(q, v["b"]), qpow(q, v["c"]), q, v["x"], policy)
    if fn == "phi11":
        return phi11(qpow(q, v["a"]), qpow(q, v["c"]), q, v["x"], policy, cfg.convention)
    if fn == "phi10":
        return phi10(qpow(q, v["a"]), q, v["x"], policy)
    if fn == "phi01":
        return phi01(qpow(q, v["c"]), q, v["x"], policy, cfg.convention)
    if fn == "qgamma":
        return q_gamma(_real_or_complex(v["t"]), q, policy)
    return q_exp_E(v["t"], q, policy)


def cmd_eval(cfg: CliConfig) -> int:
    try:
        res = _evaluate(cfg)
    except (DomainError, PoleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    value = complex(res.value)
    if cfg.format == "json":
        doc = {
            "function": cfg.function,
            "value": [value.real, value.imag],
            "err_estimate": res.err_estimate,
            "terms_used": res.terms_used,
            "converged": res.converged,
        }
        text = json.dumps(doc) + "\n"
    else:
        shown = repr(value.real) if value.imag == 0 else f"{value.real!r}{value.imag:+.17g}i"
        text = (f"value={shown} err_estimate={res.err_estimate:.3g} "
                f"terms_used={res.terms_used} converged={res.converged}\n")
    _emit(text, cfg.output)
    return EXIT_OK if res.converged else EXIT_NONCONVERGED


def cmd_verify(cfg: CliConfig) -> int:
    report = sweep(cfg.ids, cfg.n_points, cfg.seed, cfg.policy(), jobs=cfg.jobs)
    _emit(report.render(cfg.format or "json"), cfg.output)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_list(cfg: CliConfig) -> int:
    for ident, entry in REGISTRY.items():
        quarantined = ident in KNOWN_QUARANTINE
        if cfg.quarantined and not quarantined:
            continue
        status = "quarantined" if quarantined else "active"
        print(f"{ident:<7} {status:<12} {entry.reference}")
    return EXIT_OK


def cmd_report(cfg: CliConfig) -> int:
    try:
        with open(cfg.input, encoding="utf-8") as fh:
            data = json.load(fh)
        report = report_from_dict(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: cannot read report {cfg.input!r}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report.render(cfg.format or "text"), cfg.output)
    return EXIT_OK if report.ok else EXIT_FAILED


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "list": cmd_list, "report": cmd_report}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except BrokenPipeError:
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
