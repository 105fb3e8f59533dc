from fractions import Fraction

import pytest

from bvcheck.algebra import (
    AlgebraError,
    Element,
    GeneratorTable,
    enumerate_monomials,
)
from bvcheck.operators import Operator, format_operator

TABLE = GeneratorTable(("x", "y", "xi", "eta"), (0, 2, 1, 3))


def gen(name):
    return Element.generator(TABLE, name)


def test_derivative_on_even_generator():
    dx = Operator.derivative(TABLE, "x")
    x, y = gen("x"), gen("y")
    assert dx.apply(x * x * y) == 2 * (x * y)
    assert dx.apply(y).is_zero()
    assert dx.apply(Element.one(TABLE)).is_zero()


def test_left_derivative_sign_on_odd_generators():
    deta = Operator.derivative(TABLE, "eta")
    xi, eta = gen("xi"), gen("eta")
    # d/deta must cross xi first: d/deta (xi eta) = -xi
    assert deta.apply(xi * eta) == -xi
    assert Operator.derivative(TABLE, "xi").apply(xi * eta) == eta


def test_multiplication_operator():
    xi = gen("xi")
    m = Operator.multiplication(xi)
    assert m.apply(gen("x")) == xi * gen("x")
    assert m.apply(xi).is_zero()


def test_derivative_word_ordering():
    # lowest table index outermost: the (x, xi) mixed term acts as d/dx d/dxi
    op = Operator.term(TABLE, 1, (0, 0, 0, 0), (1, 0, 1, 0))
    x, xi = gen("x"), gen("xi")
    assert op.apply(x * xi) == Element.one(TABLE)


def test_degree_and_parity_of_terms():
    op = Operator.term(TABLE, 1, (1, 0, 0, 0), (0, 0, 1, 0))
    assert op.degree() == -1
    assert op.parity() == 1
    mixed = op + Operator.derivative(TABLE, "y")
    assert not mixed.is_degree_homogeneous()
    with pytest.raises(AlgebraError):
        mixed.degree()


def test_compose_agrees_with_sequential_apply():
    z = (0, 0, 0, 0)
    ops = [
        Operator.derivative(TABLE, "x"),
        Operator.derivative(TABLE, "xi"),
        Operator.derivative(TABLE, "eta"),
        Operator.multiplication(gen("xi")),
        Operator.term(TABLE, Fraction(1, 2), (1, 0, 0, 0), (0, 1, 0, 0)),
        Operator.term(TABLE, 1, z, (1, 0, 1, 0)),
        Operator.term(TABLE, -2, (0, 0, 1, 0), (0, 0, 0, 1)),
    ]
    monos = enumerate_monomials(TABLE, 3)
    for A in ops:
        for B in ops:
            AB = A.compose(B)
            for m in monos:
                e = Element.monomial(TABLE, m)
                assert AB.apply(e) == A.apply(B.apply(e)), (
                    format_operator(A),
                    format_operator(B),
                    m,
                )


def test_odd_derivatives_anticommute():
    dxi = Operator.derivative(TABLE, "xi")
    deta = Operator.derivative(TABLE, "eta")
    assert (dxi.compose(deta) + deta.compose(dxi)).is_zero()
    assert dxi.compose(dxi).is_zero()


def test_degree_components_partition():
    op = Operator.derivative(TABLE, "x") + Operator.derivative(TABLE, "xi")
    comps = op.degree_components()
    assert set(comps) == {0, -1}
    total = Operator.zero(TABLE)
    for c in comps.values():
        total = total + c
    assert total == op


def test_structural_order():
    assert Operator.zero(TABLE).structural_order() == 0
    assert Operator.multiplication(gen("x")).structural_order() == 0
    assert Operator.derivative(TABLE, "x").structural_order() == 1
    assert Operator.term(TABLE, 1, (0, 0, 0, 0), (2, 0, 1, 0)).structural_order() == 3


def test_is_odd():
    assert Operator.derivative(TABLE, "xi").is_odd()
    assert not Operator.derivative(TABLE, "x").is_odd()
    assert not Operator.zero(TABLE).is_odd()


def test_square_zero_check_and_witness():
    dxi = Operator.derivative(TABLE, "xi")
    ok, witness = dxi.is_square_zero()
    assert ok and witness is None

    bad = Operator.derivative(TABLE, "x") + Operator.multiplication(gen("x"))
    ok, witness = bad.is_square_zero()
    assert not ok
    m = Element.monomial(TABLE, witness)
    assert not bad.apply(bad.apply(m)).is_zero()


def test_format_operator_term_lines():
    op = Operator.term(TABLE, Fraction(-3, 2), (1, 0, 0, 0), (0, 0, 1, 0))
    text = format_operator(op)
    assert text == "-3/2 | x | d/dxi"
    assert format_operator(Operator.zero(TABLE)) == "0"
