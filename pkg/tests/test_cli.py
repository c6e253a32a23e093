import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihumbert.cli import CliConfig, UsageError, main, parse_args, parse_number
from bihumbert.identities import KNOWN_QUARANTINE, REGISTRY
from bihumbert.qseries import phi21


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_number():
    assert parse_number("x", "0.3") == 0.3
    assert parse_number("x", "0.3+0.1i") == 0.3 + 0.1j
    assert parse_number("x", "-2i") == -2j
    assert parse_number("x", "1e-3-2i") == 0.001 - 2j
    for bad in ("", "abc", "0.3+", "1..2"):
        with pytest.raises(UsageError):
            parse_number("x", bad)


def test_eval_origin(capsys):
    code, out, _ = run(["eval", "psi1", "--a", "1", "--b", "1", "--c", "1", "--d", "1",
                        "--q", "0.5", "--p", "0.3", "--x", "0", "--y", "0"], capsys)
    assert code == 0
    assert out.startswith("value=1.0 ")
    assert "converged=True" in out


def test_eval_psi2_at_y_zero(capsys):
    code, out, _ = run(["eval", "psi2", "--a", "1", "--b", "1", "--c", "1", "--q", "0.5", "--p", "0.5",
                        "--x", "0.2", "--y", "0", "--format", "json"], capsys)
    assert code == 0
    value = complex(*json.loads(out)["value"])
    # the q^c denominator survives at y = 0
    assert abs(value - phi21(0.5, 0, 0.5, 0.5, 0.2).value) < 1e-12


def test_eval_negative_complex_literal(capsys):
    code, out, _ = run(["eval", "phi10", "--a", "1", "--q", "0.5", "--x=-0.2+0.1i", "--format", "json"], capsys)
    assert code == 0


def test_eval_domain_error(capsys):
    code, _, err = run(["eval", "psi1", "--a", "1", "--b", "1", "--c", "1", "--d", "1",
                        "--q", "0.5", "--p", "0.3", "--x", "1.5", "--y", "0"], capsys)
    assert code == 1
    assert "|x|" in err


def test_eval_missing_and_bad_parameters(capsys):
    code, _, err = run(["eval", "psi1", "--a", "1"], capsys)
    assert code == 1 and "--b" in err
    code, _, err = run(["eval", "phi10", "--a", "one", "--q", "0.5", "--x", "0.1"], capsys)
    assert code == 1 and "--a" in err


def test_eval_nonconvergence(capsys):
    code, out, _ = run(["eval", "phi10", "--a", "0.5", "--q", "0.5", "--x", "0.9", "--max-terms", "5"], capsys)
    assert code == 2
    assert "converged=False" in out


def test_eval_forms_and_functions(capsys):
    base = ["--a", "1", "--b", "1", "--c", "1", "--d", "1", "--q", "0.5", "--p", "0.3", "--x", "0.2", "--y", "0.1"]
    values = []
    for form in ("direct", "rowsum", "connection"):
        code, out, _ = run(["eval", "psi1", *base, "--form", form, "--format", "json"], capsys)
        assert code == 0
        values.append(complex(*json.loads(out)["value"]))
    assert max(abs(v - values[0]) for v in values) < 1e-9
    for fn, args in (("qgamma", ["--t", "3", "--q", "0.5"]), ("qexp", ["--t", "0", "--q", "0.5"])):
        code, out, _ = run(["eval", fn, *args, "--format", "json"], capsys)
        assert code == 0
    assert json.loads(out)["value"] == [1.0, 0.0]
    code, _, err = run(["eval", "phi10", "--a", "1", "--q", "0.5", "--x", "0.1", "--form", "rowsum"], capsys)
    assert code == 1


def test_verify_example(capsys):
    code, out, _ = run(["verify", "--ids", "2.4", "--n", "50", "--seed", "7", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["identities"][0]["pass_rate"] == 1.0


def test_verify_all_contains_every_id(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, _, _ = run(["verify", "--ids", "all", "--n", "1", "--seed", "1", "--output", str(path)], capsys)
    assert code == 0
    doc = json.loads(path.read_text())
    assert [i["id"] for i in doc["identities"]] == list(REGISTRY)


def test_verify_unknown_id(capsys):
    code, _, err = run(["verify", "--ids", "9.9"], capsys)
    assert code == 1
    assert "2.33" in err


def test_verify_failure_exit(capsys, monkeypatch):
    from bihumbert.identities import harness
    monkeypatch.setattr(harness, "KNOWN_QUARANTINE", {})
    code, _, _ = run(["verify", "--ids", "2.35", "--n", "2", "--format", "text"], capsys)
    assert code == 3


def test_list(capsys):
    code, out, _ = run(["list"], capsys)
    lines = out.splitlines()
    assert code == 0 and len(lines) == len(REGISTRY)
    assert any(l.startswith("2.33") and l.endswith("Thm 2.10 connection relation") for l in lines)
    code, out, _ = run(["list", "--quarantined"], capsys)
    assert [l.split()[0] for l in out.splitlines()] == [k for k in REGISTRY if k in KNOWN_QUARANTINE]


def test_report_round_trip(capsys, tmp_path):
    path = tmp_path / "r.json"
    run(["verify", "--ids", "2.4,2.35,2.41", "--n", "3", "--seed", "2", "--output", str(path)], capsys)
    code, out, _ = run(["report", "--input", str(path), "--format", "json"], capsys)
    assert code == 0
    assert out == path.read_text()
    code, out, _ = run(["report", "--input", str(path)], capsys)
    assert "2.35    quarantined" in out
    code, out, _ = run(["report", "--input", str(path), "--format", "csv"], capsys)
    assert out.splitlines()[0].startswith("id,a,b,c,d,q,p,x_re")
    code, _, _ = run(["report", "--input", str(tmp_path / "missing.json")], capsys)
    assert code == 1


def test_usage_errors_exit_one(capsys):
    assert run([], capsys)[0] == 1
    assert run(["frobnicate"], capsys)[0] == 1
    assert run(["verify", "--n", "0"], capsys)[0] == 1
    assert run(["verify", "--rel-tol", "-1"], capsys)[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bihumbert", "list", "--quarantined"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "2.35" in proc.stdout


numbers = st.floats(-5, 5, allow_nan=False).map(lambda v: repr(round(v, 6)))


@settings(max_examples=40, deadline=None)
@given(
    fn=st.sampled_from(["psi1", "phi21", "qgamma"]),
    vals=st.lists(numbers, min_size=9, max_size=9),
    conv=st.sampled_from(["standard", "plain"]),
    fmt=st.sampled_from([None, "json", "text"]),
)
def test_eval_config_round_trip(fn, vals, conv, fmt):
    names = ("a", "b", "c", "d", "q", "p", "x", "y", "t")
    argv = ["eval", fn]
    for k, v in zip(names, vals):
        argv.append(f"--{k}={v}")
    argv += ["--convention", conv]
    if fmt:
        argv += ["--format", fmt]
    cfg = parse_args(argv)
    assert parse_args(cfg.to_argv()) == cfg


@settings(max_examples=40, deadline=None)
@given(
    ids=st.sampled_from(["all", "2.4", "2.4,2.10", "2.13-eq"]),
    n=st.integers(1, 500), seed=st.integers(0, 2**31), jobs=st.integers(1, 4),
    rel_tol=st.sampled_from([1e-16, 1e-12, 3.5e-9]), fmt=st.sampled_from([None, "json", "csv", "text"]),
)
def test_verify_config_round_trip(ids, n, seed, jobs, rel_tol, fmt):
    cfg = CliConfig("verify", ids=ids, n_points=n, seed=seed, jobs=jobs, rel_tol=rel_tol, format=fmt)
    assert parse_args(cfg.to_argv()) == cfg
