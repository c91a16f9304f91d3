"""Bad places of the elliptic fibration and Kodaira fiber classification.

Over residue fields of characteristic zero the Kodaira type is a pure
function of the minimal valuation triple (v(c4), v(c6), v(Delta)), so the
full Tate algorithm reduces to a table lookup. The place at infinity is
handled by degree arithmetic: v_inf(f) = (weighted bound) - deg f with
bounds (4, 6, 12) for (c4, c6, Delta) on a rational elliptic surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NegativeRank, RationalityViolation, UnclassifiableTriple
from .qpoly import Poly, factor

INF = math.inf


@dataclass(frozen=True)
class Place:
    """A monic irreducible polynomial in T, or the place at infinity."""

    modulus: Poly | None  # None marks infinity

    @property
    def is_infinity(self):
        return self.modulus is None

    @property
    def degree(self):
        return 1 if self.modulus is None else self.modulus.degree

    def label(self):
        return "infinity" if self.modulus is None else str(self.modulus)

    def sort_key(self):
        if self.modulus is None:
            return (1, 0, ())
        return (0, self.modulus.degree, self.modulus.coeffs)

    def __repr__(self):
        return f"Place({self.label()})"


@dataclass(frozen=True)
class LocalData:
    place: Place
    v_c4: object  # int or math.inf
    v_c6: object
    v_delta: int
    minimal: bool = True
    minimalization_steps: int = 0


_COMPONENTS = {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}
_EULER = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}


@dataclass(frozen=True)
class KodairaFiber:
    place: Place
    symbol: str  # "I3", "I2*", "II", "IV*", ...
    m: int  # geometric component count
    euler: int

    @classmethod
    def make(cls, place: Place, symbol: str) -> "KodairaFiber":
        if symbol.startswith("I") and symbol not in ("II", "III", "IV", "II*", "III*", "IV*"):
            if symbol.endswith("*"):
                n = int(symbol[1:-1])
                return cls(place, symbol, m=n + 5, euler=n + 6)
            n = int(symbol[1:])
            return cls(place, symbol, m=n, euler=n)
        return cls(place, symbol, m=_COMPONENTS[symbol], euler=_EULER[symbol])

    @property
    def is_multiplicative(self):
        return self.symbol[0] == "I" and not self.symbol.endswith("*") and self.symbol not in ("II", "III", "IV")

    @property
    def index(self):
        """n of I_n / I_n*; None for the other additive types."""
        s = self.symbol
        if s in ("II", "III", "IV", "II*", "III*", "IV*"):
            return None
        return int(s[1:-1]) if s.endswith("*") else int(s[1:])


def bad_places(w) -> list[Place]:
    """Irreducible factors of Delta_std, plus infinity when deg < 12."""
    places = [Place(f) for f, _ in factor(w.delta_std).factors]
    places.sort(key=Place.sort_key)
    if 12 - w.delta_std.degree >= 1:
        places.append(Place(None))
    return places


def _valuation(p: Poly, q: Poly):
    if p.is_zero():
        return INF
    return p.multiplicity_of(q)


def local_valuations(w, place: Place) -> LocalData:
    if place.is_infinity:
        vc4 = INF if w.c4.is_zero() else 4 - w.c4.degree
        vc6 = INF if w.c6.is_zero() else 6 - w.c6.degree
        vd = 12 - w.delta_std.degree
    else:
        q = place.modulus
        vc4 = _valuation(w.c4, q)
        vc6 = _valuation(w.c6, q)
        vd = w.delta_std.multiplicity_of(q)
    steps = 0
    while vc4 >= 4 and vc6 >= 6 and vd >= 12:
        vc4 -= 4
        vc6 -= 6
        vd -= 12
        steps += 1
        assert steps <= 2, "minimalization ran away"
    return LocalData(place, vc4, vc6, vd, minimal=True, minimalization_steps=steps)


def classify_kodaira(d: LocalData) -> KodairaFiber:
    """Kodaira type from a minimal triple with v(Delta) >= 1."""
    vc4, vc6, vd = d.v_c4, d.v_c6, d.v_delta
    if vd < 1:
        raise UnclassifiableTriple(f"good reduction passed to classifier at {d.place.label()}")
    if vc4 == 0:
        symbol = f"I{vd}"
    elif vc6 == 1:
        symbol = "II"
    elif vc4 == 1:
        symbol = "III"
    elif vc6 == 2:
        symbol = "IV"
    elif vd == 6 and vc4 >= 2 and vc6 >= 3:
        symbol = "I0*"
    elif vc4 == 2 and vc6 == 3:
        symbol = f"I{vd - 6}*"
    elif vc6 == 4:
        symbol = "IV*"
    elif vc4 == 3:
        symbol = "III*"
    elif vc6 == 5:
        symbol = "II*"
    else:
        raise UnclassifiableTriple(
            f"no Kodaira type for (v_c4, v_c6, v_delta) = ({vc4}, {vc6}, {vd}) at {d.place.label()}"
        )
    fiber = KodairaFiber.make(d.place, symbol)
    assert fiber.euler == vd, f"Euler number {fiber.euler} != v(Delta) {vd} for {symbol}"
    return fiber


def elliptic_fibers(w) -> list[KodairaFiber]:
    """Classified bad fibers, ordered by place; good places are dropped."""
    fibers = []
    for place in bad_places(w):
        data = local_valuations(w, place)
        if data.v_delta >= 1:
            fibers.append(classify_kodaira(data))
    return fibers


def shioda_tate_rank(fibers) -> int:
    """r = 8 - sum of degree * (m - 1) over all bad fibers."""
    r = 8 - sum(f.place.degree * (f.m - 1) for f in fibers)
    if r < 0:
        raise NegativeRank(f"Shioda-Tate rank {r} < 0: misclassified fibers")
    return r


def euler_check(fibers) -> bool:
    total = sum(f.place.degree * f.euler for f in fibers)
    if total != 12:
        raise RationalityViolation(f"Euler numbers sum to {total}, expected 12")
    return True
