"""Number fields QQ[x]/(m(x)) and quadratic tower extensions.

NFElement and TowerElement implement the usual operators, so they can be
used directly as coefficients of the generic Poly class. The square test
uses a modular pre-filter (a degree-1 prime where the residue is a
certified quadratic non-residue) and falls back to a Trager-style norm
computation: the characteristic polynomial of a shifted square root is
built by resultant interpolation, factored over QQ, and a root in the
field is reconstructed with a gcd over K[y].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .qpoly import (
    QQ,
    Poly,
    factor,
    is_square_rational,
    lagrange_interpolate,
    poly_gcd,
    poly_xgcd,
    resultant,
)


class NumberField:
    """QQ[x]/(m(x)) for m monic irreducible; degree 1 is allowed."""

    __slots__ = ("modulus", "degree")

    def __init__(self, modulus: Poly, check=True):
        if modulus.field != QQ:
            raise ValueError("modulus must be a polynomial over QQ")
        if modulus.degree < 1:
            raise ValueError("modulus must be nonconstant")
        modulus = modulus.monic()
        if check:
            fp = factor(modulus)
            if len(fp.factors) != 1 or fp.factors[0][1] != 1:
                raise ValueError(f"modulus is not irreducible: {modulus}")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "degree", modulus.degree)

    def __setattr__(self, name, value):
        raise AttributeError("NumberField is immutable")

    def element(self, rep) -> "NFElement":
        if isinstance(rep, (int, Fraction)):
            rep = Poly.const(Fraction(rep), QQ, self.modulus.var)
        if rep.var != self.modulus.var:
            rep = rep.with_var(self.modulus.var)
        return NFElement(self, rep % self.modulus)

    def generator(self) -> "NFElement":
        return self.element(Poly.gen(QQ, self.modulus.var))

    def zero(self):
        return self.element(0)

    def one(self):
        return self.element(1)

    def coerce(self, v):
        if isinstance(v, NFElement):
            if v.field == self:
                return v
            raise ValueError("element of a different number field")
        if isinstance(v, (int, Fraction)):
            return self.element(v)
        raise TypeError(f"cannot coerce {v!r} into {self!r}")

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("NF", self.modulus))

    def __repr__(self):
        return f"QQ[{self.modulus.var}]/({self.modulus})"


class NFElement:
    """Canonical residue modulo the field's defining polynomial."""

    __slots__ = ("field", "rep")

    def __init__(self, field: NumberField, rep: Poly):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, name, value):
        raise AttributeError("NFElement is immutable")

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise ValueError("mixed number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return NFElement(self.field, self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, -self.rep)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.element(self.rep * other.rep)

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if self.rep.is_zero():
            raise ZeroDivisionError("inverting zero in a number field")
        g, u, _ = poly_xgcd(self.rep, self.field.modulus)
        if g.degree != 0:
            raise ArithmeticError("modulus is not irreducible")
        return self.field.element(u * (QQ.one() / g.constant_coeff()))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        acc = self.field.one()
        base = self
        if n < 0:
            base = base.inverse()
            n = -n
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.rep == other.rep

    def __bool__(self):
        return not self.rep.is_zero()

    def __hash__(self):
        return hash(("NFElement", self.field.modulus.coeffs, self.rep.coeffs))

    def is_rational(self):
        return self.rep.is_constant()

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.rep.constant_coeff()

    def __repr__(self):
        return str(self.rep)


def reduce_mod(p: Poly, K: NumberField) -> NFElement:
    """The image of p(x) in QQ[x]/(m(x)); zero iff m divides p."""
    return K.element(p)


# ---------------------------------------------------------------------------
# Square testing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModularCertificate:
    """Witness that a is a non-square: at the degree-1 prime (p, x - r),
    the residue of a is a quadratic non-residue mod p."""

    prime: int
    root: int
    residue: int


@dataclass(frozen=True)
class SquareTestResult:
    witness: object  # NFElement | None
    certificate: ModularCertificate | None
    method: str  # "zero" | "rational" | "modular" | "norm"


def _int_clear(p: Poly):
    """(L, integer coefficient list) with L*p having integer coefficients."""
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return lcm, [int(c * lcm) for c in p.coeffs]


def _nonsquare_certificate(K: NumberField, a: NFElement, prime_bound=300):
    """Search degree-1 primes for a quadratic-residue obstruction."""
    m = K.modulus
    lm, mint = _int_clear(m)
    la, aint = _int_clear(a.rep)
    disc = resultant(m, m.derivative())
    dnum = abs(disc.numerator) * disc.denominator
    for p in sympy.primerange(3, prime_bound):
        if lm % p == 0 or la % p == 0 or dnum % p == 0:
            continue
        la_inv = pow(la % p, p - 2, p)
        for r in range(p):
            if _eval_mod(mint, r, p) == 0:
                val = _eval_mod(aint, r, p) * la_inv % p
                if val and pow(val, (p - 1) // 2, p) == p - 1:
                    return ModularCertificate(p, r, val)
    return None


def _eval_mod(coeffs, r, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * r + c) % p
    return acc


def _norm_of_shifted_sqrt(K: NumberField, a: NFElement, s: int) -> Poly:
    """Res_x(m(x), (y - s*x)^2 - a(x)) as a polynomial in y, by interpolation."""
    d = K.degree
    m = K.modulus
    x = Poly.gen(QQ, m.var)
    pts = []
    for c in range(2 * d + 1):
        h = (Poly.const(Fraction(c), QQ, m.var) - s * x) ** 2 - a.rep
        val = Fraction(0) if h.is_zero() else resultant(m, h)
        pts.append((Fraction(c), val))
    return lagrange_interpolate(pts, QQ, "y")


def _sqrt_by_norm(K: NumberField, a: NFElement):
    """Trager-style square root in K, or None if a is not a square."""
    theta = K.generator()
    for s in range(0, 8 * K.degree + 8):
        norm = _norm_of_shifted_sqrt(K, a, s)
        if norm.degree >= 1 and poly_gcd(norm, norm.derivative()).degree == 0:
            break
    else:
        raise ArithmeticError("no squarefree shift found")  # pragma: no cover
    y = "y"
    f = Poly((-a, K.zero(), K.one()), K, y)  # y^2 - a over K
    for g, _ in factor(norm).factors:
        shifted = g.compose(Poly((s * theta, K.one()), K, y))
        h = poly_gcd(f, shifted)
        if h.degree == 1:
            beta = -h.constant_coeff()
            if beta * beta == a:
                return beta
    return None


def square_root_in_field(K: NumberField, a: NFElement) -> SquareTestResult:
    """Exact square test in K with a verifying witness or an obstruction."""
    a = K.coerce(a)
    if not a:
        return SquareTestResult(K.zero(), None, "zero")
    if K.degree == 1:
        w = is_square_rational(a.rep.constant_coeff())
        if w is None:
            return SquareTestResult(None, None, "rational")
        return SquareTestResult(K.element(w), None, "rational")
    cert = _nonsquare_certificate(K, a)
    if cert is not None:
        return SquareTestResult(None, cert, "modular")
    beta = _sqrt_by_norm(K, a)
    if beta is None:
        return SquareTestResult(None, None, "norm")
    return SquareTestResult(beta, None, "norm")


def is_square_nf(K: NumberField, a) -> NFElement | None:
    """Witness beta with beta^2 = a, or None; a = 0 yields witness 0."""
    return square_root_in_field(K, K.coerce(a)).witness


# ---------------------------------------------------------------------------
# Quadratic towers
# ---------------------------------------------------------------------------

class QuadTower:
    """base(sqrt(alpha)) for alpha a certified non-square in the base.

    The base is either QQ or a NumberField; elements are pairs (u, v)
    representing u + v*sqrt(alpha).
    """

    __slots__ = ("base", "alpha")

    def __init__(self, base, alpha, check=True):
        alpha = base.coerce(alpha)
        if not alpha:
            raise ValueError("alpha must be nonzero")
        if check and _base_square_witness(base, alpha) is not None:
            raise ValueError("alpha is a square in the base field")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "alpha", alpha)

    def __setattr__(self, name, value):
        raise AttributeError("QuadTower is immutable")

    def element(self, u, v=0) -> "TowerElement":
        return TowerElement(self, self.base.coerce(u), self.base.coerce(v))

    def sqrt_alpha(self) -> "TowerElement":
        return self.element(0, 1)

    def zero(self):
        return self.element(0)

    def one(self):
        return self.element(1)

    def coerce(self, v):
        if isinstance(v, TowerElement):
            if v.tower == self:
                return v
            raise ValueError("element of a different tower")
        return self.element(self.base.coerce(v))

    def __eq__(self, other):
        return (
            isinstance(other, QuadTower)
            and self.base == other.base
            and self.alpha == other.alpha
        )

    def __hash__(self):
        return hash(("QuadTower", repr(self.base), repr(self.alpha)))

    def __repr__(self):
        return f"{self.base!r}(sqrt({self.alpha!r}))"


class TowerElement:
    """u + v*sqrt(alpha) with u, v in the base field."""

    __slots__ = ("tower", "u", "v")

    def __init__(self, tower, u, v):
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    def __setattr__(self, name, value):
        raise AttributeError("TowerElement is immutable")

    def _coerce(self, other):
        if isinstance(other, TowerElement):
            if other.tower != self.tower:
                raise ValueError("mixed towers")
            return other
        if isinstance(other, (int, Fraction, NFElement)):
            return self.tower.element(self.tower.base.coerce(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TowerElement(self.tower, self.u + other.u, self.v + other.v)

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.tower, -self.u, -self.v)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        al = self.tower.alpha
        return TowerElement(
            self.tower,
            self.u * other.u + al * (self.v * other.v),
            self.u * other.v + self.v * other.u,
        )

    __rmul__ = __mul__

    def inverse(self) -> "TowerElement":
        norm = self.u * self.u - self.tower.alpha * (self.v * self.v)
        if not norm:
            raise ZeroDivisionError("inverting zero in a quadratic tower")
        ninv = self.tower.base.one() / norm
        return TowerElement(self.tower, self.u * ninv, -self.v * ninv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        acc = self.tower.one()
        base = self
        if n < 0:
            base = base.inverse()
            n = -n
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.u == other.u and self.v == other.v

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def __hash__(self):
        return hash(("TowerElement", repr(self.u), repr(self.v)))

    def __repr__(self):
        return f"({self.u!r}) + ({self.v!r})*sqrt({self.tower.alpha!r})"


def _base_square_witness(base, a):
    if isinstance(base, NumberField):
        return is_square_nf(base, a)
    return is_square_rational(a)


def adjoin_sqrt(base, a):
    """sqrt(a) over QQ or a NumberField.

    Returns the witness in the base field when a is a square there, and a
    QuadTower (whose sqrt_alpha squares to a) otherwise. a must be nonzero.
    """
    a = base.coerce(a)
    if not a:
        raise ValueError("adjoin_sqrt of zero")
    w = _base_square_witness(base, a)
    if w is not None:
        return w
    return QuadTower(base, a, check=False)
