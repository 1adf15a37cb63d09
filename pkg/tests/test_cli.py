import json
import subprocess
import sys

import pytest

from ratcont.cli import emit_report, main
from ratcont.cli.problems import parse_problem
from ratcont.errors import ParseError
from ratcont.paperlab import run_scenario

CIRCLE = """\
# f = x/(2+y) on the unit circle
[variety]
vars = x, y
x^2 + y^2 - 1

[rep]
point = x=1, y=0
p = x
q = 2 + y

[samples]
x=0, y=0
x=2, y=-1
"""

LINE = """\
[variety]
y
[rep]
point = x=0, y=0
f = x
"""


def run(*argv):
    lines = []
    code = main(list(argv), lines.append)
    return code, "\n".join(lines)


def run_json(*argv):
    code, text = run(*argv, "--json")
    return code, json.loads(text)


def test_limit_along_axis():
    code, text = run("limit", "--f", "x^2/(x^2+y^2)", "--curve", "x=t,y=0")
    assert code == 0
    assert text.splitlines()[0] == "Finite 1"
    assert "agrees" in text


def test_limit_variants():
    code, data = run_json("limit", "--f", "x/y", "--curve", "x=t, y=t^2", "--side", "both")
    assert code == 0 and data["value"] == "+oo" and data["minus"]["value"] == "-oo"
    code, data = run_json("limit", "--f", "x/y", "--curve", "x=-t, y=t^2", "--semantics", "valuation")
    assert data["kind"] == "Infinity"
    assert run("limit", "--f", "x/y", "--curve", "x=t, y=0")[0] == 1


def test_surface_limit_with_base_point():
    code, data = run_json("limit", "--f", "z^2*(x^2+y^2*z^2-y^3)/(x^2+y^2*z^2+y^4)",
                          "--curve", "x=t, y=t, z=0 @ (0,0,2)")
    assert code == 0 and data["value"] == "4" and data["float_check"]["agrees"]


def test_verify_example_json():
    code, data = run_json("verify-example", "EX3")
    assert code == 0 and data["pass"] is True and data["schema"] == "ratcont/1"
    assert all(c["verdict"] == "pass" for c in data["checks"])


def test_verify_example_tamper_and_list():
    assert run("verify-example", "EX4", "--tamper")[0] == 1
    code, text = run("verify-example", "--list")
    assert code == 0 and [ln.split()[0] for ln in text.splitlines()] == ["EX1", "EX2", "EX3", "EX4", "EX5"]
    assert run("verify-example", "EX7")[0] == 2
    assert run("verify-example")[0] == 2


def test_ideal_verbs():
    assert run("nf", "--expr", "y^2", "--ideal", "y") == (0, "0")
    assert run("member", "--expr", "x^2-y^2", "--ideal", "x-y") == (0, "true")
    assert run("member", "--expr", "x", "--ideal", "x^2") == (1, "false")
    code, text = run("gb", "--ideal", "x^2+y^2-1, x", "--order", "lex", "--vars", "x,y")
    assert code == 0 and text.splitlines() == ["x", "y^2 - 1"]


def test_restrict_verbs():
    assert run("restrict", "--f", "x^2/(x^2+y^2)", "--point", "x=0, y=0") == (0, "0")
    assert run("restrict", "--f", "x^2/(x^2+y^2)", "--point", "y=0, x=0") == (0, "1")
    assert run("restrict", "--f", "x/y", "--ideal", "x-y") == (0, "1")
    assert run("restrict", "--f", "x/y", "--ideal", "y")[0] == 1
    assert run("restrict", "--f", "x/y", "--ideal", "x, x+1")[0] == 1
    assert run("restrict", "--f", "x/y")[0] == 2


def test_extend_problem_files(tmp_path):
    circle = tmp_path / "circle.txt"
    circle.write_text(CIRCLE)
    code, data = run_json("extend", "--problem", str(circle))
    assert code == 0 and data["pass"]
    assert data["verdicts"]["regularity"]["kind"] == "spot-check"
    line = tmp_path / "line.txt"
    line.write_text(LINE)
    code, data = run_json("extend", "--problem", str(line))
    assert code == 0 and data["verdicts"]["regularity"]["kind"] == "certificate"
    assert data["lowest_terms"] == "(y^2 + x)/(y^2 + 1)"


def test_extend_failures(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text(LINE.replace("point = x=0, y=0", "point = x=0, y=1"))
    assert run("extend", "--problem", str(bad))[0] == 2
    clash = tmp_path / "clash.txt"
    clash.write_text(LINE + "[rep]\npoint = x=1, y=0\nf = x + 1\n")
    assert run("extend", "--problem", str(clash))[0] == 1
    assert run("extend", "--problem", str(tmp_path / "missing.txt"))[0] == 2


def test_problem_file_errors_name_the_line():
    with pytest.raises(ParseError) as info:
        parse_problem("[variety]\ny\n[rep]\npoint = x=0\nq = 1/\n")
    assert info.value.line == 5
    with pytest.raises(ParseError):
        parse_problem("[rep]\npoint = x=0\n")  # no p or f


def test_certify():
    assert run("certify", "--f", "(x^5+y^5)/(x^4+y^4)")[0] == 0
    assert run("certify", "--f", "x^2/(x^2+y^2)")[0] == 1
    assert run("certify", "--f", "x^3/(x^2+y)")[0] == 2
    code, text = run("certify", "--expr", "2*(x1^2+u*x1*x2+u^2*x2^2) - (x1^2+x2^2)", "--squares", "1 : x1 + u*x2",
                     "--side-terms", "u^2 - 1 : x2", "--radical", "u^3 = 1 + x3^2")
    assert code == 0 and text.startswith("valid")
    assert run("certify", "--expr", "x^2 - y^2", "--squares", "1 : x")[0] == 1
    assert run("certify", "--expr", "x^2")[0] == 2


def test_padic_eval():
    code, data = run_json("padic-eval", "--f", "x^2/(x^2+y^2)", "--padic", "3:10", "--point", "x=3, y=9")
    assert code == 0 and data["valuation"] == 0 and data["digits"] == 8
    assert run("padic-eval", "--f", "1/x", "--padic", "3:5", "--point", "x=0")[0] == 1
    assert run("padic-eval", "--f", "1/x", "--padic", "3:5", "--point", "x=81", "--min-digits", "3")[0] == 1
    assert run("padic-eval", "--f", "1/x", "--padic", "three", "--point", "x=1")[0] == 2


def test_malformed_input_exits_2():
    assert run("limit", "--f", "x^(1/2)", "--curve", "x=t")[0] == 2
    assert run("limit", "--f", "x/(y/(x+1))", "--curve", "x=t, y=t")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("nf", "--expr", "y", "--ideal", "y", "--unknown-flag")[0] == 2


def test_exit_codes_partition(capsys):
    # usage errors go to stderr, never to the result stream
    code, text = run("limit", "--f", "x^", "--curve", "x=t")
    assert code == 2 and text == ""
    assert "error" in capsys.readouterr().err


def test_emit_report():
    assert json.loads(emit_report(None)) == {"checks": [], "pass": True, "schema": "ratcont/1"}
    text = emit_report(run_scenario("EX1"))
    data = json.loads(text)
    assert len(data["checks"]) == 5
    assert text == json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2)
    assert data["checks"][0]["witness"]["cofactor"] == "u^2*y^2 + u*x*y + x^2"


def test_json_is_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "ratcont.cli", "verify-example", "EX2", "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
