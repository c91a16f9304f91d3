"""Exact univariate polynomial arithmetic.

Polynomials are dense tuples of coefficients, lowest degree first, tagged
with a variable name ("T" or "x") and a coefficient field handle. The
default field is QQ (coefficients are fractions.Fraction); the same class
also serves extension fields, whose element types implement the usual
arithmetic operators and are truthy exactly when nonzero.

Factorization into irreducibles over QQ is delegated to sympy; everything
else (gcd, squarefree decomposition, resultants) is implemented here.
The resultant follows the Sylvester-matrix determinant convention, with
the first deg(g) rows holding the coefficients of f. In particular
Res(x - 2, x - 3) = -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

Rational = Fraction


class RationalField:
    """Field handle for QQ; elements are fractions.Fraction."""

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, v):
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        raise TypeError(f"cannot coerce {v!r} into QQ")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class Poly:
    """Dense univariate polynomial over an exact field."""

    __slots__ = ("coeffs", "field", "var")

    def __init__(self, coeffs=(), field=QQ, var="x"):
        cs = [field.coerce(c) if isinstance(c, (int, Fraction)) else c for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def gen(cls, field=QQ, var="x"):
        return cls((field.zero(), field.one()), field, var)

    @classmethod
    def const(cls, value, field=QQ, var="x"):
        return cls((value,), field, var)

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_coeff(self):
        return self.coeffs[0] if self.coeffs else self.field.zero()

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def is_constant(self):
        return len(self.coeffs) <= 1

    # -- ring operations --------------------------------------------------

    def _check(self, other):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
        if self.field != other.field:
            raise ValueError("coefficient field mismatch")

    def _coerce_scalar(self, v):
        if isinstance(v, (int, Fraction)):
            return self.field.coerce(v)
        return v

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self._coerce_scalar(other), self.field, self.var)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out, self.field, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.field, self.var)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self._coerce_scalar(other), self.field, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = self._coerce_scalar(other)
            return Poly([c * s for c in self.coeffs], self.field, self.var)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly((), self.field, self.var)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.field, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly.const(self.field.one(), self.field, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        """Euclidean division; divisor must be nonzero."""
        if not isinstance(other, Poly):
            other = Poly.const(self._coerce_scalar(other), self.field, self.var)
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly((), self.field, self.var), self
        rem = list(self.coeffs)
        dq = self.degree - other.degree
        quot = [self.field.zero()] * (dq + 1)
        inv_lc = self.field.one() / other.lc()
        for k in range(dq, -1, -1):
            c = rem[other.degree + k] * inv_lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[j + k] = rem[j + k] - c * b
        return Poly(quot, self.field, self.var), Poly(rem[: other.degree], self.field, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self._coerce_scalar(other), self.field, self.var)
        if not isinstance(other, Poly):
            return NotImplemented
        return (
            self.var == other.var
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.var, self.coeffs))

    # -- derived operations ----------------------------------------------

    def monic(self):
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        inv = self.field.one() / self.lc()
        return self * inv

    def evaluate(self, v):
        """Horner evaluation; v may live in any ring containing the field."""
        if not self.coeffs:
            return self.field.zero()
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * v + c
        return acc

    def derivative(self):
        return Poly(
            [self.coeffs[i] * i for i in range(1, len(self.coeffs))],
            self.field,
            self.var,
        )

    def compose(self, inner):
        """Substitution self(inner) for a polynomial inner."""
        acc = Poly((), inner.field, inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.const(inner.field.coerce(c) if isinstance(c, (int, Fraction)) else c, inner.field, inner.var)
        return acc

    def with_var(self, var):
        return Poly(self.coeffs, self.field, var)

    def lift(self, field):
        """Re-coerce rational coefficients into an extension field."""
        return Poly([field.coerce(c) for c in self.coeffs], field, self.var)

    def multiplicity_of(self, factor):
        """Largest e with factor^e dividing self."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        e = 0
        p = self
        while True:
            q, r = divmod(p, factor)
            if not r.is_zero():
                return e
            e += 1
            p = q

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly) -> str:
    """Human-readable form, highest degree first: 'x^3 - x + 4'."""
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p[i]
        if not c:
            continue
        if isinstance(c, Fraction):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                xi = p.var if i == 1 else f"{p.var}^{i}"
                body = xi if mag == 1 else f"{mag}*{xi}"
        else:
            sign = "+"
            if i == 0:
                body = f"({c})"
            else:
                xi = p.var if i == 1 else f"{p.var}^{i}"
                body = f"({c})*{xi}"
        parts.append((sign, body))
    sign0, body0 = parts[0]
    out = body0 if sign0 == "+" else f"-{body0}"
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd via the Euclidean algorithm; gcd(0, 0) is an error."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(p: Poly, q: Poly):
    """Extended Euclid: returns (g, u, v) with u*p + v*q = g, g monic."""
    field, var = p.field, p.var
    zero = Poly((), field, var)
    one = Poly.const(field.one(), field, var)
    r0, r1 = p, q
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        qq, rr = divmod(r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, s0 - qq * s1
        t0, t1 = t1, t0 - qq * t1
    inv = field.one() / r0.lc()
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_decomposition(p: Poly):
    """Yun decomposition: p = unit * prod g_i^i with g_i squarefree, coprime.

    Returns a list of (g_i, i) with nonconstant g_i only.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    p = p.monic()
    out = []
    if p.is_constant():
        return out
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = poly_gcd(b, d) if not d.is_zero() else b
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        if d.is_zero():
            break
        c = d // g
        i += 1
    return out


@dataclass(frozen=True)
class FactoredPoly:
    """unit * prod factor^multiplicity, factors monic irreducible over QQ."""

    unit: Fraction
    factors: tuple  # of (Poly, int)

    def expand(self) -> Poly:
        if not self.factors:
            var = "x"
        else:
            var = self.factors[0][0].var
        acc = Poly.const(self.unit, QQ, var)
        for f, m in self.factors:
            acc = acc * f**m
        return acc


_SYMPY_CACHE = {}


def _to_sympy(p: Poly):
    sym = sympy.Symbol(p.var)
    return sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)],
        sym,
        domain="QQ",
    )


def _from_sympy(sp, var) -> Poly:
    coeffs = [Fraction(c.p, c.q) for c in reversed(sp.all_coeffs())]
    return Poly(coeffs, QQ, var)


def factor(p: Poly) -> FactoredPoly:
    """Factor into monic irreducibles over QQ; deterministic ordering."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.field != QQ:
        raise ValueError("factor is only implemented over QQ")
    key = (p.var, p.coeffs)
    hit = _SYMPY_CACHE.get(key)
    if hit is not None:
        return hit
    content, flist = _to_sympy(p).factor_list()
    unit = Fraction(content.p, content.q)
    factors = []
    for sp, mult in flist:
        f = _from_sympy(sp, p.var)
        unit *= f.lc() ** mult
        factors.append((f.monic(), int(mult)))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    result = FactoredPoly(unit, tuple(factors))
    _SYMPY_CACHE[key] = result
    return result


def resultant(p: Poly, q: Poly) -> Fraction:
    """Sylvester determinant Res(p, q); both arguments must be nonzero."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    m, n = p.degree, q.degree
    if m == 0:
        return p.lc() ** n
    if n == 0:
        return q.lc() ** m
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - n - 1 - i))
    return _det(rows)


def _det(rows):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        pv = rows[col][col]
        det *= pv
        inv = 1 / pv
        for r in range(col + 1, n):
            f = rows[r][col] * inv
            if f:
                for c in range(col, n):
                    rows[r][c] -= f * rows[col][c]
    return det


def is_square_rational(r: Fraction):
    """Return s >= 0 with s^2 = r when r is a square in QQ, else None."""
    r = Fraction(r)
    if r < 0:
        return None
    if r == 0:
        return Fraction(0)
    ns = math.isqrt(r.numerator)
    ds = math.isqrt(r.denominator)
    if ns * ns == r.numerator and ds * ds == r.denominator:
        return Fraction(ns, ds)
    return None


def lagrange_interpolate(points, field=QQ, var="x") -> Poly:
    """Interpolating polynomial through (xi, yi) with distinct xi."""
    x = Poly.gen(field, var)
    acc = Poly((), field, var)
    for i, (xi, yi) in enumerate(points):
        num = Poly.const(field.coerce(yi) if isinstance(yi, (int, Fraction)) else yi, field, var)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * (x - xj) * (field.one() / (field.coerce(xi) - field.coerce(xj)))
        acc = acc + num
    return acc
