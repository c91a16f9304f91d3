import math

import pytest

from conicrank.curve import parse_curve, weierstrass_invariants
from conicrank.errors import RationalityViolation, UnclassifiableTriple
from conicrank.kodaira import (
    KodairaFiber,
    LocalData,
    Place,
    bad_places,
    classify_kodaira,
    elliptic_fibers,
    euler_check,
    local_valuations,
    shioda_tate_rank,
)
from conicrank.qpoly import QQ, Poly

T = Poly.gen(QQ, "T")

W_EX = weierstrass_invariants(parse_curve("(x^2-1)*T + x^3 - x + 4"))
W_A = weierstrass_invariants(parse_curve("T^2 + x^3 + 1"))


def test_bad_places_example():
    places = bad_places(W_EX)
    assert places[-1].is_infinity
    finite = [p for p in places if not p.is_infinity]
    assert sum(p.degree for p in finite) == 4  # squarefree quartic


def test_bad_places_instance_a():
    places = bad_places(W_A)
    assert [p.label() for p in places] == ["T^2 + 1", "infinity"]


def test_local_valuations():
    d = local_valuations(W_EX, Place(None))
    assert (d.v_c4, d.v_c6, d.v_delta) == (2, 3, 8)
    d = local_valuations(W_A, Place(T**2 + 1))
    assert (d.v_c4, d.v_c6, d.v_delta) == (math.inf, 1, 2)
    d = local_valuations(W_A, Place(None))
    assert (d.v_c4, d.v_c6, d.v_delta) == (math.inf, 4, 8)


def _triple(vc4, vc6, vd):
    return LocalData(Place(None), vc4, vc6, vd)


def test_classify_table():
    f = classify_kodaira(_triple(2, 3, 8))
    assert f.symbol == "I2*" and f.m == 7 and f.euler == 8
    f = classify_kodaira(_triple(math.inf, 1, 2))
    assert f.symbol == "II" and f.m == 1
    f = classify_kodaira(_triple(math.inf, 4, 8))
    assert f.symbol == "IV*" and f.m == 7
    assert classify_kodaira(_triple(0, 0, 3)).symbol == "I3"
    assert classify_kodaira(_triple(1, 1, 2)).symbol == "II"
    assert classify_kodaira(_triple(1, 2, 3)).symbol == "III"
    assert classify_kodaira(_triple(2, 2, 4)).symbol == "IV"
    assert classify_kodaira(_triple(2, 3, 6)).symbol == "I0*"
    assert classify_kodaira(_triple(math.inf, 3, 6)).symbol == "I0*"
    assert classify_kodaira(_triple(3, 5, 9)).symbol == "III*"
    assert classify_kodaira(_triple(math.inf, 5, 10)).symbol == "II*"


def test_classify_rejects_good_reduction():
    with pytest.raises(UnclassifiableTriple):
        classify_kodaira(_triple(0, 0, 0))


def test_shioda_tate():
    fibers = elliptic_fibers(W_EX)
    assert shioda_tate_rank(fibers) == 2
    assert euler_check(fibers)
    fibers_a = elliptic_fibers(W_A)
    assert shioda_tate_rank(fibers_a) == 2
    assert euler_check(fibers_a)
    assert shioda_tate_rank([]) == 8


def test_euler_check_fails_on_partial_list():
    bad = [KodairaFiber.make(Place(None), "I1")]
    with pytest.raises(RationalityViolation):
        euler_check(bad)


def test_fiber_make_symbols():
    f = KodairaFiber.make(Place(None), "I0*")
    assert f.m == 5 and f.euler == 6 and f.index == 0
    f = KodairaFiber.make(Place(None), "I12")
    assert f.m == 12 and f.euler == 12 and f.is_multiplicative
    assert KodairaFiber.make(Place(None), "II*").m == 9
