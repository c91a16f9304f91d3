"""Rational functions over an arbitrary exact coefficient field.

The generic polynomial type is qpoly.Poly with a field handle (QQ, a
NumberField, or a QuadTower); this module adds the fraction field K(T)
needed for point coordinates on curves over function fields.
"""

from __future__ import annotations

from fractions import Fraction

from .qpoly import Poly, poly_gcd


class RatFn:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.field.one(), num.field, num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not num.is_zero():
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num // g
                den = den // g
            lc_inv = num.field.one() / den.lc()
            num = num * lc_inv
            den = den * lc_inv
        else:
            den = Poly.const(num.field.one(), num.field, num.var)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFn is immutable")

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFn":
        return cls(p)

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_poly(self):
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError("not a polynomial")
        return self.num

    def _coerce(self, other):
        if isinstance(other, RatFn):
            return other
        if isinstance(other, Poly):
            return RatFn(other)
        try:
            c = self.num.field.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return RatFn(Poly.const(c, self.num.field, self.num.var))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den)

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
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return (RatFn(self.den, self.num)) ** (-n)
        return RatFn(self.num**n, self.den**n)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFn", self.num.coeffs, self.den.coeffs))

    def evaluate(self, v):
        d = self.den.evaluate(v)
        if not d:
            raise ZeroDivisionError("pole at evaluation point")
        return self.num.evaluate(v) / d

    def __repr__(self):
        if self.is_poly():
            return str(self.num)
        return f"({self.num})/({self.den})"
