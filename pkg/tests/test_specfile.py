from fractions import Fraction

import pytest

from bvcheck.operators import Operator, format_operator
from bvcheck.specfile import ModelSpec, SpecError, parse_spec

GOOD = """\
# odd Laplacian on one pair
GENERATORS
x 0
xi 1

OPERATOR D
1 | 0 0 | 1 1

SUITE bv-core order=2
SUITE linfty n=3
"""


def test_parse_good_spec():
    spec = parse_spec(GOOD)
    assert spec.table.names == ("x", "xi")
    assert spec.table.degrees == (0, 1)
    D = spec.operators["D"]
    assert D.degree() == -1
    assert D.structural_order() == 2
    assert spec.suites == [("bv-core", {"order": 2}), ("linfty", {"n": 3})]
    assert spec.main_operator() == D


def test_rational_coefficients_and_term_merging():
    text = "GENERATORS\nx 0\nOPERATOR D\n-3/2 | 0 | 1\n1/2 | 0 | 1\n"
    spec = parse_spec(text)
    D = spec.operators["D"]
    assert D.terms == {((0,), (1,)): Fraction(-1)}


def test_model_line_supplies_table_and_operators():
    spec = parse_spec("MODEL polyvector2\nSUITE bv-core\n")
    assert spec.model_name == "polyvector2"
    assert len(spec.table) == 4
    assert spec.main_operator().degree() == -1
    assert spec.differential().is_zero()


def test_operator_round_trips_through_term_format():
    spec = parse_spec(GOOD)
    D = spec.operators["D"]
    lines = format_operator(D).split(" ; ")
    # the renderer emits the documented `coeff | multiplier | derivatives`
    # shape; the textual round trip is exercised end to end by the CLI tests
    assert lines == ["1 | 1 | d/dx d/dxi"]


@pytest.mark.parametrize(
    "text,fragment,line",
    [
        ("OPERATOR D\n1 | 0 | 1\n", "before any GENERATORS", 1),
        ("GENERATORS\nx 0\nx 1\n", "duplicate generator", 3),
        ("GENERATORS\nx zero\n", "bad degree", 2),
        ("GENERATORS\nx 0\nGENERATORS\n", "duplicate GENERATORS", 3),
        ("GENERATORS\nx 0\nOPERATOR D\nfoo | 0 | 1\n", "bad rational", 4),
        ("GENERATORS\nx 0\nOPERATOR D\n1 | 0 0 | 1\n", "expected 1 exponents", 4),
        ("GENERATORS\nxi 1\nOPERATOR D\n1 | 0 | 2\n", "odd generator", 4),
        ("GENERATORS\nx 0\nOPERATOR D\n", "no terms", 4),
        ("GENERATORS\nx 0\nOPERATOR D\n1 | 0 | 1\nOPERATOR D\n1 | 0 | 1\n",
         "duplicate operator", 5),
        ("MODEL nosuch\n", "unknown model", 1),
        ("MODEL polyvector2\nGENERATORS\n", "conflicts", 2),
        ("GENERATORS\nx 0\nSUITE\n", "SUITE needs a name", 3),
        ("GENERATORS\nx 0\nSUITE linfty n=two\n", "must be an integer", 3),
        ("MODEL polyvector2\nBOGUS\n", "unrecognized", 2),
        ("", "no GENERATORS or MODEL", 1),
    ],
)
def test_error_positions(text, fragment, line):
    with pytest.raises(SpecError) as err:
        parse_spec(text)
    assert fragment in err.value.message
    assert err.value.line == line


def test_comments_and_blank_lines_ignored():
    text = "\n# header\nGENERATORS\nx 0  # flat\n\nOPERATOR D  # main\n1 | 0 | 1\n"
    spec = parse_spec(text)
    assert spec.table.names == ("x",)
    assert ((0,), (1,)) in spec.operators["D"].terms


def test_main_operator_fallbacks():
    spec = parse_spec("GENERATORS\nx 0\nOPERATOR only\n1 | 0 | 1\n")
    assert spec.main_operator() == spec.operators["only"]
    two = parse_spec(
        "GENERATORS\nx 0\nOPERATOR a\n1 | 0 | 1\nOPERATOR b\n2 | 0 | 1\n"
    )
    with pytest.raises(SpecError):
        two.main_operator()
