import pytest

from conicrank.conic import (
    classify_conic_fibers,
    component_sum_check,
    delta_epsilon,
    fiber_at_infinity,
)
from conicrank.curve import ConicForm, parse_curve
from conicrank.errors import ComponentSumViolation
from conicrank.qpoly import QQ, Poly, poly_gcd

x = Poly.gen(QQ, "x")


def labels(fibers):
    return [(f.label(), f.type_label()) for f in fibers]


def test_example_fibers():
    fibers = classify_conic_fibers(parse_curve("(x^2-1)*T + x^3 - x + 4").conic())
    assert labels(fibers) == [("x - 1", "A3"), ("x + 1", "A3"), ("infinity", "D5")]
    assert delta_epsilon(fibers) == (2, 1)
    assert component_sum_check(fibers)


def test_instance_a_fibers():
    fibers = classify_conic_fibers(parse_curve("T^2 + x^3 + 1").conic())
    assert labels(fibers) == [("x + 1", "A2"), ("x^2 - x + 1", "A2"), ("infinity", "D6")]
    assert delta_epsilon(fibers) == (3, 1)
    assert component_sum_check(fibers)


def test_d_kind_fiber():
    # conic form only: A = x, B = 0, C = x^2 + x (shared root at x = 0)
    cf = ConicForm(A=x, B=Poly((), QQ, "x"), C=x**2 + x)
    fibers = classify_conic_fibers(cf)
    assert labels(fibers) == [("x", "D3"), ("x + 1", "A2"), ("infinity", "D6")]
    assert delta_epsilon(fibers) == (1, 2)
    assert component_sum_check(fibers)
    # the D location divides A, B and C
    d = fibers[0]
    for p in (cf.A, cf.B, cf.C):
        assert p.is_zero() or poly_gcd(p, d.location) == d.location


def test_component_sum_violation():
    fibers = classify_conic_fibers(parse_curve("T^2 + x^3 + 1").conic())
    with pytest.raises(ComponentSumViolation):
        component_sum_check(fibers[:-1])


def test_fiber_at_infinity():
    fibers = classify_conic_fibers(parse_curve("(x^3-x)*T + 4").conic())
    inf = fiber_at_infinity(fibers)
    assert inf.kind == "D" and inf.n == 3
