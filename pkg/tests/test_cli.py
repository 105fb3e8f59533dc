import json

import pytest

from bvcheck.algebra import parse_element
from bvcheck.cli import main
from bvcheck.specfile import parse_spec

LAPLACIAN_SPEC = """\
GENERATORS
x1 0
x2 0
xi1 1
xi2 1

OPERATOR D
1 | 0 0 0 0 | 1 0 1 0
1 | 0 0 0 0 | 0 1 0 1

SUITE bv-core order=2
SUITE brackets arity=2
SUITE gerstenhaber
"""

NOT_ODD_SPEC = """\
GENERATORS
x 0

OPERATOR D
1 | 1 | 1

SUITE bv-core
"""

NOT_SQUARE_ZERO_SPEC = """\
GENERATORS
x 0
xi 1

OPERATOR D
1 | 0 0 | 1 1
1 | 0 1 | 0 0

SUITE bv-core order=2
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_check_passes_on_good_spec(tmp_path, capsys):
    spec = write(tmp_path, "good.spec", LAPLACIAN_SPEC)
    code = main(["check", "--spec", spec, "--budget-degree", "2",
                 "--budget-tuples", "40"])
    out = capsys.readouterr().out
    assert code == 0
    assert "result: PASS" in out
    assert "[FAIL" not in out


def test_check_fails_with_witness(tmp_path, capsys):
    spec = write(tmp_path, "bad.spec", NOT_SQUARE_ZERO_SPEC)
    code = main(["check", "--spec", spec])
    out = capsys.readouterr().out
    assert code == 1
    assert "result: FAIL" in out


def test_exit_code_two_on_malformed_spec(tmp_path, capsys):
    spec = write(tmp_path, "broken.spec", "GENERATORS\nx zero\n")
    code = main(["check", "--spec", spec])
    err = capsys.readouterr().err
    assert code == 2
    assert "line 2" in err


def test_exit_code_two_on_unknown_model(capsys):
    assert main(["check", "--model", "nosuch"]) == 2
    assert "unknown model" in capsys.readouterr().err


def test_exit_code_three_when_only_untested(tmp_path, capsys):
    # with an empty enumeration window the Leibniz-failure witness search
    # cannot find anything: nothing fails, one item stays untested
    code = main(["check", "--model", "polyvector2", "--suite", "derivation",
                 "--budget-degree", "0"])
    out = capsys.readouterr().out
    assert code == 3
    assert "UNTESTED" in out
    assert "result: PASS" in out


def test_json_reports_are_byte_identical(tmp_path):
    spec = write(tmp_path, "good.spec", LAPLACIAN_SPEC)
    outs = []
    for name in ("a.json", "b.json"):
        target = tmp_path / name
        code = main(["check", "--spec", spec, "--seed", "7",
                     "--budget-degree", "2", "--format", "json",
                     "--out", str(target)])
        assert code == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
    payload = json.loads(outs[0])
    assert payload["schema"] == "bvcheck-report/1"
    assert payload["seed"] == 7
    assert all(s["passed"] for s in payload["suites"])


def test_json_failure_witness_round_trips(tmp_path):
    spec = write(tmp_path, "bad.spec", NOT_SQUARE_ZERO_SPEC)
    target = tmp_path / "report.json"
    code = main(["check", "--spec", spec, "--format", "json",
                 "--out", str(target)])
    assert code == 1
    payload = json.loads(target.read_text())
    items = [i for s in payload["suites"] for i in s["items"]]
    witness_item = next(
        i for i in items if i["name"] == "operator squares to zero"
    )
    assert witness_item["status"] == "fail"
    table = parse_spec(NOT_SQUARE_ZERO_SPEC).table
    D = parse_spec(NOT_SQUARE_ZERO_SPEC).operators["D"]
    w = parse_element(table, witness_item["witness"])
    assert not D.apply(D.apply(w)).is_zero()


def test_check_fails_on_even_operator(tmp_path, capsys):
    spec = write(tmp_path, "even.spec", NOT_ODD_SPEC)
    assert main(["check", "--spec", spec]) == 1
    assert "operator is odd" in capsys.readouterr().out


def test_suite_flag_overrides_spec(tmp_path, capsys):
    spec = write(tmp_path, "good.spec", LAPLACIAN_SPEC)
    code = main(["check", "--spec", spec, "--suite", "linfty",
                 "--budget-degree", "2", "--budget-tuples", "30"])
    out = capsys.readouterr().out
    assert code == 0
    assert "relation n=1" in out
    assert "bracket order" not in out


def test_unknown_suite_is_a_spec_error(tmp_path, capsys):
    spec = write(tmp_path, "good.spec", LAPLACIAN_SPEC)
    assert main(["check", "--spec", spec, "--suite", "nosuch"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_brackets_subcommand_tabulates_values(capsys):
    code = main(["brackets", "--model", "polyvector2", "--arity", "2",
                 "--budget-degree", "2", "--budget-tuples", "40"])
    out = capsys.readouterr().out
    assert code == 0
    assert "recursion vs unshuffle expansion" in out
    assert "F(" in out


def test_split_subcommand(capsys):
    code = main(["split", "--model", "mixed-order", "--budget-tuples", "60"])
    out = capsys.readouterr().out
    assert code == 0
    for fragment in ("n=1 (degree +1)", "n=2 (degree -1)", "n=3 (degree -3)"):
        assert fragment in out


def test_cohomology_subcommand(capsys):
    code = main(["cohomology", "--model", "koszul2", "--window", "6",
                 "--budget-tuples", "60"])
    out = capsys.readouterr().out
    assert code == 0
    assert "{0: 1, 2: 1}" in out
    assert "degree 2 - x1" in out


def test_explain_subcommand(capsys):
    code = main(["explain", "--model", "mixed-order"])
    out = capsys.readouterr().out
    assert code == 0
    assert "operator D" in out
    assert "order 3" in out


def test_missing_spec_and_model(capsys):
    assert main(["check"]) == 2
    assert "--spec or --model" in capsys.readouterr().err
