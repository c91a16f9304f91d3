"""Curve ingestion: parsing, validation, and Weierstrass invariants.

A curve is given by its right hand side in one of two equivalent shapes:

    y^2 = a3(T)*x^3 + a2(T)*x^2 + a1(T)*x + a0(T)      (deg a_i <= 2)
    y^2 = A(x)*T^2 + B(x)*T + C(x)                     (deg A,B,C <= 3)

The coefficient of x^i*T^j is simultaneously the T^j coefficient of a_i
and the x^i coefficient of the j-th of (C, B, A), so conversion is a
transpose of the 4x3 coefficient array.

The expression grammar accepts integers, rationals p/q, the variables T
and x, the operators + - * / ^ and parentheses; division is only allowed
by nonzero constants, and whitespace is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, ValidationError
from .qpoly import QQ, Poly, poly_gcd

X_DEG_MAX = 3
T_DEG_MAX = 2


# ---------------------------------------------------------------------------
# Expression parsing
# ---------------------------------------------------------------------------

class BiPoly:
    """Sparse polynomial in x and T with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            if c:
                clean[key] = c
        self.terms = clean

    @classmethod
    def const(cls, c):
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def var(cls, name):
        return cls({(1, 0) if name == "x" else (0, 1): Fraction(1)})

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return BiPoly(out)

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return BiPoly(out)

    def __pow__(self, n):
        acc = BiPoly.const(1)
        for _ in range(n):
            acc = acc * self
        return acc

    def is_constant(self):
        return all(k == (0, 0) for k in self.terms)

    def constant_value(self):
        return self.terms.get((0, 0), Fraction(0))

    def scale(self, c):
        return BiPoly({k: v * c for k, v in self.terms.items()})

    def x_degree(self):
        return max((i for (i, _) in self.terms), default=0)

    def t_degree(self):
        return max((j for (_, j) in self.terms), default=0)


_TOKEN_CHARS = set("+-*/^()")


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append((ch, ch, i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), i))
            i = j
        elif ch in ("T", "x"):
            tokens.append(("var", ch, i))
            i = j = i + 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected trailing token {tok[1]!r}", tok[2])
        return value

    def expr(self):
        kind, _, _ = self.peek()
        if kind in ("+", "-"):
            value = BiPoly.const(0)
        else:
            value = self.term()
        while True:
            kind, _, _ = self.peek()
            if kind == "+":
                self.take()
                value = value + self.term()
            elif kind == "-":
                self.take()
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, _, pos = self.peek()
            if kind == "*":
                self.take()
                value = value * self.factor()
            elif kind == "/":
                self.take()
                divisor = self.factor()
                if not divisor.is_constant():
                    raise ParseError("division by a non-constant expression", pos)
                c = divisor.constant_value()
                if not c:
                    raise ParseError("division by zero", pos)
                value = value.scale(1 / c)
            else:
                return value

    def factor(self):
        kind, _, _ = self.peek()
        if kind == "-":
            self.take()
            return -self.factor()
        if kind == "+":
            self.take()
            return self.factor()
        base = self.atom()
        kind, _, pos = self.peek()
        if kind == "^":
            self.take()
            tok = self.expect("num")
            return base ** tok[1]
        return base

    def atom(self):
        kind, value, pos = self.take()
        if kind == "num":
            return BiPoly.const(value)
        if kind == "var":
            return BiPoly.var(value)
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {value!r}", pos)


def parse_expression(text) -> BiPoly:
    """Parse the right hand side of a curve equation."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Curve data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConicForm:
    A: Poly
    B: Poly
    C: Poly


@dataclass(frozen=True)
class CurveInput:
    """Validated coefficients a0..a3 in QQ[T] of degree at most 2."""

    a0: Poly
    a1: Poly
    a2: Poly
    a3: Poly

    def a_list(self):
        return [self.a0, self.a1, self.a2, self.a3]

    def conic(self) -> ConicForm:
        polys = []
        for j in range(T_DEG_MAX + 1):  # C, B, A
            polys.append(Poly([a[j] for a in self.a_list()], QQ, "x"))
        return ConicForm(A=polys[2], B=polys[1], C=polys[0])

    def expression(self) -> str:
        terms = []
        for i in range(X_DEG_MAX, -1, -1):
            a = self.a_list()[i]
            if a.is_zero():
                continue
            body = str(a) if a.is_constant() and a.constant_coeff() > 0 else f"({a})"
            if i == 0:
                terms.append(body)
            elif i == 1:
                terms.append(f"{body}*x")
            else:
                terms.append(f"{body}*x^{i}")
        return " + ".join(terms) if terms else "0"


def discriminant_ell(c: CurveInput) -> Poly:
    """a3^2 * (-27 a0^2 a3^2 + 18 a0 a1 a2 a3 + a1^2 a2^2 - 4 a0 a2^3 - 4 a1^3 a3)."""
    a0, a1, a2, a3 = c.a_list()
    return a3**2 * gamma_part(c)


def gamma_part(c: CurveInput) -> Poly:
    a0, a1, a2, a3 = c.a_list()
    return (
        -27 * a0**2 * a3**2
        + 18 * a0 * a1 * a2 * a3
        + a1**2 * a2**2
        - 4 * a0 * a2**3
        - 4 * a1**3 * a3
    )


def delta_conic(cf: ConicForm) -> Poly:
    """B^2 - 4AC; identically zero input is rejected."""
    d = cf.B**2 - 4 * cf.A * cf.C
    if d.is_zero():
        raise ValidationError("Delta_conic = B^2 - 4AC is identically zero")
    return d


def _from_bipoly(bp: BiPoly) -> CurveInput:
    if bp.x_degree() > X_DEG_MAX:
        raise ValidationError(f"degree in x exceeds {X_DEG_MAX}")
    if bp.t_degree() > T_DEG_MAX:
        raise ValidationError(f"degree in T exceeds {T_DEG_MAX}")
    a = []
    for i in range(X_DEG_MAX + 1):
        coeffs = [bp.terms.get((i, j), Fraction(0)) for j in range(T_DEG_MAX + 1)]
        a.append(Poly(coeffs, QQ, "T"))
    return CurveInput(a0=a[0], a1=a[1], a2=a[2], a3=a[3])


def validate_curve(c: CurveInput) -> CurveInput:
    for i, a in enumerate(c.a_list()):
        if a.degree > T_DEG_MAX:
            raise ValidationError(f"deg a{i} exceeds {T_DEG_MAX}")
    if discriminant_ell(c).is_zero():
        raise ValidationError("Delta_ell is identically zero: not an elliptic curve")
    nonzero = [a for a in c.a_list() if not a.is_zero()]
    g = nonzero[0]
    for a in nonzero[1:]:
        g = poly_gcd(g, a)
    if g.degree > 0 and poly_gcd(g, g.derivative()).degree > 0:
        raise ValidationError("all a_i share a square factor; rescale the curve")
    delta_conic(c.conic())
    return c


def curve_from_a(a_polys) -> CurveInput:
    """Build a validated curve from the four a_i(T)."""
    return validate_curve(CurveInput(*a_polys))


def curve_from_conic(A: Poly, B: Poly, C: Poly) -> CurveInput:
    bp = BiPoly()
    for j, p in ((2, A), (1, B), (0, C)):
        if p.degree > X_DEG_MAX:
            raise ValidationError(f"degree in x exceeds {X_DEG_MAX}")
        for i in range(p.degree + 1):
            bp = bp + BiPoly({(i, j): p[i]})
    return validate_curve(_from_bipoly(bp))


def parse_curve(source) -> CurveInput:
    """Accepts an expression string or a dict with keys 'a' or 'A','B','C'."""
    if isinstance(source, str):
        return validate_curve(_from_bipoly(parse_expression(source)))
    if isinstance(source, dict):
        if "a" in source:
            if len(source["a"]) != 4:
                raise ValidationError("'a' must list the four polynomials a0..a3")
            polys = []
            for expr in source["a"]:
                bp = parse_expression(expr) if isinstance(expr, str) else BiPoly.const(expr)
                if bp.x_degree() > 0:
                    raise ValidationError("a_i(T) must not involve x")
                polys.append(
                    Poly([bp.terms.get((0, j), Fraction(0)) for j in range(T_DEG_MAX + 1)], QQ, "T")
                )
            return curve_from_a(polys)
        if {"A", "B", "C"} <= source.keys():
            polys = {}
            for name in "ABC":
                expr = source[name]
                bp = parse_expression(expr) if isinstance(expr, str) else BiPoly.const(expr)
                if bp.t_degree() > 0:
                    raise ValidationError(f"{name}(x) must not involve T")
                polys[name] = Poly(
                    [bp.terms.get((i, 0), Fraction(0)) for i in range(X_DEG_MAX + 1)], QQ, "x"
                )
            return curve_from_conic(polys["A"], polys["B"], polys["C"])
        raise ValidationError("curve object needs key 'a' or keys 'A', 'B', 'C'")
    raise ValidationError(f"unsupported curve source {type(source).__name__}")


# ---------------------------------------------------------------------------
# Weierstrass invariants of the scaled model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeierstrassData:
    """Invariants of y^2 = x^3 + p x^2 + q x + r with p = a2, q = a1 a3,
    r = a0 a3^2 (the model after scaling x and y by a3(T))."""

    curve: CurveInput
    p: Poly
    q: Poly
    r: Poly
    c4: Poly
    c6: Poly
    delta_std: Poly
    delta_ell: Poly
    gamma: Poly


def weierstrass_invariants(c: CurveInput) -> WeierstrassData:
    a0, a1, a2, a3 = c.a_list()
    p, q, r = a2, a1 * a3, a0 * a3**2
    b2 = 4 * p
    b4 = 2 * q
    b6 = 4 * r
    c4 = b2**2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    num = c4**3 - c6**2
    delta_std, rem = divmod(num, Poly.const(Fraction(1728), QQ, "T"))
    assert rem.is_zero()
    delta_ell = discriminant_ell(c)
    assert delta_std == 16 * delta_ell, "c-invariant discriminant disagrees"
    gamma, rem = divmod(delta_ell, a3**2)
    assert rem.is_zero()
    assert c4.degree <= 4 and c6.degree <= 6 and delta_std.degree <= 12
    return WeierstrassData(
        curve=c, p=p, q=q, r=r, c4=c4, c6=c6,
        delta_std=delta_std, delta_ell=delta_ell, gamma=gamma,
    )
