import random
from fractions import Fraction
from itertools import product

import pytest

from conicrank.qpoly import (
    QQ,
    Poly,
    factor,
    is_square_rational,
    lagrange_interpolate,
    poly_gcd,
    poly_xgcd,
    resultant,
    squarefree_decomposition,
)

x = Poly.gen(QQ, "x")


def P(*coeffs):
    return Poly([Fraction(c) for c in coeffs], QQ, "x")


def test_ring_ops():
    assert (x + 1) * (x - 1) == x**2 - 1
    q, r = divmod(x**3, x - 2)
    assert q == x**2 + 2 * x + 4 and r == P(8)
    p = P(3, 0, 7)
    assert p + Poly((), QQ, "x") == p


def test_division_by_zero_poly():
    with pytest.raises(ZeroDivisionError):
        divmod(x, Poly((), QQ, "x"))


def test_gcd():
    assert poly_gcd(x**2 - 1, x - 1) == x - 1
    assert poly_gcd(x**2 + 1, x**2 - 1) == P(1)
    assert poly_gcd(3 * x + 6, Poly((), QQ, "x")) == x + 2


def test_xgcd():
    g, u, v = poly_xgcd(x**2 - 1, x - 1)
    assert g == x - 1 and u * (x**2 - 1) + v * (x - 1) == g
    g, u, v = poly_xgcd(x**2 + 1, x)
    assert g == P(1) and u * (x**2 + 1) + v * x == P(1)


def test_squarefree_decomposition():
    assert squarefree_decomposition((x**2 - 1) ** 2) == [(x**2 - 1, 2)]
    assert squarefree_decomposition(x**2 - 1) == [(x**2 - 1, 1)]
    assert squarefree_decomposition(x**3) == [(x, 3)]
    for g, _ in squarefree_decomposition((x - 2) ** 3 * (x**2 + 1)):
        assert poly_gcd(g, g.derivative()).degree == 0


def test_resultant_convention():
    # Sylvester determinant convention: Res(x-2, x-3) = -1.
    assert resultant(x - 2, x - 3) == -1
    assert resultant(x**5 + x - 7, P(1)) == 1
    assert resultant(x**2, x - 2) == 4


def test_factor_examples():
    f = factor((x**2 - 1) ** 2)
    assert f.unit == 1
    assert list(f.factors) == [(x - 1, 2), (x + 1, 2)]
    f = factor(x**3 + 1)
    assert list(f.factors) == [(x + 1, 1), (x**2 - x + 1, 1)]
    f = factor(x**2 - x + 1)
    assert list(f.factors) == [(x**2 - x + 1, 1)]


def test_is_square_rational():
    assert is_square_rational(Fraction(4)) == 2
    assert is_square_rational(Fraction(2)) is None
    assert is_square_rational(Fraction(9, 4)) == Fraction(3, 2)
    assert is_square_rational(Fraction(0)) == 0
    assert is_square_rational(Fraction(-4)) is None


def _divisors(n):
    n = abs(n)
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.update((i, n // i))
        i += 1
    return sorted(out)


def _kronecker_irreducible(p):
    """No proper divisor of degree <= deg(p)/2: exhaustive rational-root
    search for linear divisors, Kronecker interpolation for quadratics."""
    d = p.degree
    if d == 1:
        return True
    scale = 1
    for c in p.coeffs:
        scale = scale * c.denominator // __import__("math").gcd(scale, c.denominator)
    ints = [int(c * scale) for c in p.coeffs]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return False
    for num in _divisors(a0):
        for den in _divisors(an):
            for s in (1, -1):
                if p.evaluate(Fraction(s * num, den)) == 0:
                    return False
    if d <= 3:
        return True
    if d == 4:
        # Kronecker: a quadratic divisor's integer values at -1, 0, 1 divide
        # the (scaled) polynomial's values there; interpolate each candidate.
        vals = [p.evaluate(Fraction(t)) * scale for t in (-1, 0, 1)]
        if any(v == 0 for v in vals):
            return False
        cands = [
            [s * w for w in _divisors(int(v)) for s in (1, -1)] for v in vals
        ]
        for gm, g0, gp in product(*cands):
            # g(x) = c2 x^2 + c1 x + c0 through (-1, gm), (0, g0), (1, gp)
            c0 = Fraction(g0)
            c2 = Fraction(gp + gm, 2) - c0
            c1 = Fraction(gp - gm, 2)
            if c2 == 0:
                continue
            g = Poly([c0, c1, c2], QQ, "x")
            _, rem = divmod(p, g)
            if rem.is_zero():
                return False
        return True
    raise NotImplementedError


@pytest.mark.parametrize("seed", range(6))
def test_factor_roundtrip_random(seed):
    rng = random.Random(seed)
    deg = rng.randint(1, 10)
    coeffs = [Fraction(rng.randint(-20, 20)) for _ in range(deg)] + [
        Fraction(rng.randint(1, 20))
    ]
    p = Poly(coeffs, QQ, "x")
    f = factor(p)
    prod = Poly.const(f.unit, QQ, "x")
    for g, e in f.factors:
        assert g.lc() == 1 and g.degree >= 1
        prod = prod * g**e
        if g.degree <= 4:
            assert _kronecker_irreducible(g)
    assert prod == p


def test_resultant_vs_gcd_property():
    rng = random.Random(11)
    for _ in range(20):
        p = Poly([Fraction(rng.randint(-5, 5)) for _ in range(3)] + [Fraction(1)], QQ, "x")
        q = Poly([Fraction(rng.randint(-5, 5)) for _ in range(2)] + [Fraction(1)], QQ, "x")
        assert (resultant(p, q) == 0) == (poly_gcd(p, q).degree > 0)


def test_lagrange_interpolate():
    pts = [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(2)), (Fraction(2), Fraction(5))]
    p = lagrange_interpolate(pts, QQ, "y")
    for a, b in pts:
        assert p.evaluate(a) == b
    assert p.degree == 2
