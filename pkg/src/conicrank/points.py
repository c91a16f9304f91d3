"""Points induced by the conic bundle and the group law over K(T).

Curves live on the scaled model Y^2 = X^3 + p X^2 + q X + r with p = a2,
q = a1 a3, r = a0 a3^2, base-changed to an exact coefficient field K
(QQ, a number field, or a quadratic tower). A reducible conic fiber at a
root theta of Delta_conic induces the point

    (a3(T) theta, a3(T) sqrt(A(theta)) (T - B(theta)/(2 A(theta))))

when A(theta) != 0, and (a3(T) theta, a3(T) sqrt(C(theta))) when
A(theta) = 0; D-type fibers induce the 2-torsion point with Y = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import CurveInput
from .errors import VerificationFailure
from .funcfield import RatFn
from .numfield import NumberField, QuadTower, adjoin_sqrt, is_square_nf, reduce_mod
from .qpoly import QQ, Poly, is_square_rational


class FFPoint:
    """Identity O or an affine point with RatFn coordinates."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("FFPoint is immutable")

    @property
    def is_identity(self):
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, FFPoint):
            return NotImplemented
        if self.is_identity or other.is_identity:
            return self.is_identity and other.is_identity
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash(("FFPoint", self.x, self.y))

    def __repr__(self):
        return "O" if self.is_identity else f"({self.x!r}, {self.y!r})"


IDENTITY = FFPoint()


class CurveOverFF:
    """Y^2 = X^3 + p X^2 + q X + r over K(T) for an exact field K."""

    __slots__ = ("field", "p", "q", "r")

    def __init__(self, field, p: Poly, q: Poly, r: Poly):
        disc = (
            18 * p * q * r - 4 * p**3 * r + p**2 * q**2 - 4 * q**3 - 27 * r**2
        )
        if disc.is_zero():
            raise ValueError("singular cubic: zero discriminant")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)

    def __setattr__(self, name, value):
        raise AttributeError("CurveOverFF is immutable")

    @classmethod
    def from_curve(cls, c: CurveInput, field) -> "CurveOverFF":
        a0, a1, a2, a3 = (a.lift(field) for a in c.a_list())
        return cls(field, a2, a1 * a3, a0 * a3**2)

    def rhs(self, x: RatFn) -> RatFn:
        return x**3 + RatFn(self.p) * x**2 + RatFn(self.q) * x + RatFn(self.r)

    def contains(self, pt: FFPoint) -> bool:
        if pt.is_identity:
            return True
        return pt.y**2 == self.rhs(pt.x)

    def point(self, x, y) -> FFPoint:
        if isinstance(x, Poly):
            x = RatFn(x)
        if isinstance(y, Poly):
            y = RatFn(y)
        pt = FFPoint(x, y)
        if not self.contains(pt):
            raise VerificationFailure(f"point {pt!r} is not on the curve")
        return pt

    # -- group law --------------------------------------------------------

    def negate(self, pt: FFPoint) -> FFPoint:
        if pt.is_identity:
            return pt
        return FFPoint(pt.x, -pt.y)

    def add(self, P: FFPoint, Q: FFPoint) -> FFPoint:
        if P.is_identity:
            return Q
        if Q.is_identity:
            return P
        if P.x == Q.x:
            if P.y == -Q.y:
                return IDENTITY
            lam = (3 * P.x**2 + 2 * RatFn(self.p) * P.x + RatFn(self.q)) / (2 * P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam**2 - RatFn(self.p) - P.x - Q.x
        y3 = lam * (P.x - x3) - P.y
        return FFPoint(x3, y3)

    def double(self, P: FFPoint) -> FFPoint:
        return self.add(P, P)

    def multiply(self, n: int, P: FFPoint) -> FFPoint:
        if n < 0:
            return self.multiply(-n, self.negate(P))
        acc = IDENTITY
        base = P
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc


# ---------------------------------------------------------------------------
# Point construction from conic fibers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstructedPoint:
    curve: CurveOverFF
    point: FFPoint
    field: object  # coefficient field the coordinates live in
    theta: object  # root used (element of the base field)
    radicand: object  # A(theta) or C(theta)
    sqrt_value: object  # exact square root used for the y-coordinate
    rational: bool  # True when the point is defined over the base field


def _base_field_and_root(location: Poly):
    """QQ with the rational root for degree 1, else QQ[x]/(location)."""
    if location.degree == 1:
        return QQ, -location.constant_coeff()
    K = NumberField(location, check=False)
    return K, K.generator()


def _evaluate(poly_x: Poly, base, theta):
    if base is QQ or isinstance(base, type(QQ)):
        return poly_x.evaluate(theta)
    return reduce_mod(poly_x, base)


def _sqrt_in(base, value):
    """(field, sqrt, rational) with sqrt^2 = value in field (base or tower)."""
    res = adjoin_sqrt(base, value)
    if isinstance(res, QuadTower):
        return res, res.sqrt_alpha(), False
    return base, res, True


def construct_point(cf, c: CurveInput, location: Poly, field=None, sqrt_value=None) -> ConstructedPoint:
    """The induced point for an A-type conic fiber at the given factor.

    A caller may force a common coefficient field by passing both field
    and sqrt_value (with sqrt_value^2 equal to the radicand in field).
    """
    base, theta = _base_field_and_root(location)
    alpha = _evaluate(cf.A, base, theta)
    if alpha:
        radicand = alpha
    else:
        radicand = _evaluate(cf.C, base, theta)
        if not radicand:
            raise ValueError("D-type location: use verify_two_torsion instead")
    if field is None:
        field, sqrt_value, rational = _sqrt_in(base, radicand)
    else:
        if not sqrt_value * sqrt_value == field.coerce(radicand):
            raise ValueError("provided sqrt_value does not square to the radicand")
        rational = not isinstance(field, QuadTower)
    T = Poly.gen(field, "T")
    theta_f = field.coerce(theta)
    sqrt_f = field.coerce(sqrt_value) if not isinstance(field, QuadTower) else sqrt_value
    if alpha:
        beta = field.coerce(_evaluate(cf.B, base, theta)) / (2 * field.coerce(alpha))
        y_raw = sqrt_f * (T - Poly.const(beta, field, "T"))
    else:
        y_raw = Poly.const(sqrt_f, field, "T")
    a3 = c.a3.lift(field)
    curve = CurveOverFF.from_curve(c, field)
    point = curve.point(a3 * theta_f, a3 * y_raw)
    return ConstructedPoint(curve, point, field, theta, radicand, sqrt_f, rational)


def verify_two_torsion(c: CurveInput, fiber) -> bool:
    """The point (a3 theta, 0) of a finite D-type fiber doubles to O."""
    if fiber.kind != "D" or fiber.is_infinity:
        raise ValueError("verify_two_torsion needs a finite D-type fiber")
    base, theta = _base_field_and_root(fiber.location)
    curve = CurveOverFF.from_curve(c, base)
    a3 = c.a3.lift(base)
    x = a3 * base.coerce(theta)
    pt = curve.point(x, Poly((), base, "T"))
    if not curve.double(pt).is_identity:
        raise VerificationFailure("2-torsion candidate did not double to O")
    return True


# ---------------------------------------------------------------------------
# Linear relation checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationResult:
    applicable: bool
    reason: str | None  # set when not applicable
    relation_holds: bool | None  # sum of [n_theta] P_theta == O
    triple_sum_zero: bool | None  # P1 + P2 + P3 == O, when three A-fibers exist


def verify_linear_relation(c: CurveInput, cf, fibers) -> RelationResult:
    """Evaluate sum over finite fibers of [mult] P_theta against O.

    Only applicable when every finite fiber has a rational location and
    all square roots live in QQ or in one common quadratic tower.
    """
    finite = [f for f in fibers if not f.is_infinity]
    if any(f.location.degree > 1 for f in finite):
        return RelationResult(False, "irrational fiber location", None, None)
    radicands = []
    for f in finite:
        if f.kind != "A":
            continue
        theta = -f.location.constant_coeff()
        alpha = cf.A.evaluate(theta)
        radicands.append(alpha if alpha else cf.C.evaluate(theta))
    nonsquare = [r for r in radicands if is_square_rational(r) is None]
    if not nonsquare:
        field = QQ
        sqrt_of = {r: is_square_rational(r) for r in radicands}
    else:
        alpha0 = nonsquare[0]
        for r in nonsquare[1:]:
            if is_square_rational(r / alpha0) is None:
                return RelationResult(False, "square roots span incompatible towers", None, None)
        tower = QuadTower(QQ, alpha0, check=False)
        field = tower
        sqrt_of = {}
        for r in radicands:
            w = is_square_rational(r)
            if w is not None:
                sqrt_of[r] = tower.element(w)
            else:
                sqrt_of[r] = tower.sqrt_alpha() * tower.element(is_square_rational(r / alpha0))
    curve = CurveOverFF.from_curve(c, field)
    a3 = c.a3.lift(field)
    total = IDENTITY
    a_points = []
    for f in finite:
        mult = f.n - 1
        theta = -f.location.constant_coeff()
        if f.kind == "D":
            pt = curve.point(a3 * field.coerce(theta), Poly((), field, "T"))
        else:
            built = construct_point(cf, c, f.location, field=field,
                                    sqrt_value=sqrt_of[cf.A.evaluate(theta) or cf.C.evaluate(theta)])
            pt = built.point
            a_points.append(pt)
        total = curve.add(total, curve.multiply(mult, pt))
    triple = None
    if len(a_points) == 3:
        s = curve.add(curve.add(a_points[0], a_points[1]), a_points[2])
        triple = s.is_identity
    return RelationResult(True, None, total.is_identity, triple)
