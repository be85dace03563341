import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from wspaces.cli import run
from wspaces.seqcore import parse_dualvec, parse_primalvec, parse_rational

GEOM = "tail=geom(1/2,1/2)"


def run_json(*argv):
    code, out = run([*argv, "--json", "--deterministic"])
    return code, json.loads(out)


def walk_strings(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from walk_strings(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from walk_strings(v)
    elif isinstance(obj, str):
        yield obj


@pytest.mark.parametrize("argv,code", [
    (["classify", "--alpha", "prefix=[1/2,1/2]"], 0),
    (["rstar", "--alpha", GEOM], 0),
    (["distance", "--r", "1/2"], 0),
    (["projconst", "--alpha", "prefix=[1/2]"], 0),
    (["fpp", "--alpha", GEOM, "--eps", "1/3"], 0),
    (["embed", "--beta", "prefix=[1/4]", "--alpha", GEOM], 0),
    (["components", "--beta", "prefix=[1/4]", "--alpha", GEOM], 0),
    (["kernel", "--beta", "prefix=[1/4]", "--r", "1/2"], 0),
    (["matrix", "--alpha", GEOM, "--nmax", "4"], 0),
    (["delta", "--alpha", GEOM, "--kmax", "8", "--nmax", "8"], 0),
    (["limitcheck", "--alpha", GEOM, "--k", "2"], 0),
    (["project", "thm71", "--alpha", GEOM, "--eps", "1/2", "--probe", "64"], 0),
    (["project", "l1", "--catalog", "example-5.14", "--alpha", GEOM], 0),
    (["opnorm", "shift"], 0),
    (["model", "example-6.7", "--check", "P", "--witness", "all-ones"], 0),
    (["model", "example-6.7", "--check", "S"], 1),
    (["model", "example-6.8", "--check", "P"], 1),
    (["model", "example-4.2", "--check", "cor41"], 0),
    (["splus-demo", "--samples", "20"], 0),
    (["embed", "--beta", GEOM, "--alpha", GEOM], 2),
    (["classify", "--alpha", "prefix=[2]"], 2),
    (["classify", "--alpha", "prefix=[1/0]"], 2),
    (["model", "example-1.1"], 2),
    (["nonsense"], 2),
])
def test_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_report_shape():
    code, rep = run_json("distance", "--r", "1/2")
    assert code == 0 and rep["exit_code"] == 0
    assert set(rep) == {"command", "inputs", "values", "checks", "exit_code"}
    assert F(rep["values"]["distance"]) == F(5, 3)
    _, out = run(["distance", "--r", "1/2", "--json"])
    assert "timestamp" in json.loads(out)


def test_exit_code_matches_checks():
    for argv in (["model", "example-6.8", "--check", "S"], ["model", "example-6.7", "--check", "S"]):
        code, rep = run_json(*argv)
        assert (code == 1) == any(c["status"] == "fail" for c in rep["checks"])


def test_input_error_json():
    code, out = run(["classify", "--alpha", "prefix=[2]", "--json"])
    assert code == 2 and json.loads(out)["exit_code"] == 2


@pytest.mark.parametrize("argv", [
    ["embed", "--beta", "prefix=[1/4]", "--alpha", GEOM, "--samples", "10"],
    ["delta", "--alpha", GEOM],
    ["project", "thm71", "--alpha", GEOM, "--eps", "1/2"],
    ["splus-demo", "--samples", "10", "--seed", "3"],
])
def test_deterministic(argv):
    a = run(argv + ["--deterministic"])
    b = run(argv + ["--deterministic"])
    assert a == b
    assert "timestamp" not in a[1]


def test_printed_values_reparse():
    """Every printed vector or rational parses back to an equal value."""
    seen = 0
    for argv in (["embed", "--beta", "prefix=[1/4]", "--alpha", GEOM, "--samples", "5"],
                 ["kernel", "--beta", "prefix=[1/4]", "--r", "1/2"],
                 ["project", "l1", "--catalog", "example-5.14", "--alpha", GEOM, "--length", "6"],
                 ["matrix", "--alpha", GEOM, "--nmax", "3"]):
        _, rep = run_json(*argv)
        for s in walk_strings(rep["values"]):
            if s.startswith(("prefix=", "tail=")):
                try:
                    v = parse_dualvec(s)
                    printer = "dual"
                except Exception:
                    v = parse_primalvec(s)
                    printer = "primal"
                from wspaces.seqcore import format_dualvec, format_primalvec

                assert (format_dualvec(v) if printer == "dual" else format_primalvec(v)) == s
                seen += 1
            elif "/" in s and s.replace("/", "").lstrip("-").isdigit():
                assert str(parse_rational(s)) == s
                seen += 1
    assert seen > 0


def test_kernel_value():
    _, rep = run_json("kernel", "--beta", "prefix=[1/4]", "--r", "1/2")
    assert parse_dualvec(rep["values"]["f"]) == parse_dualvec("prefix=[1/2,-1/4]")


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "wspaces.cli", "rstar", "--alpha", GEOM, "--deterministic"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "1" in out.stdout
