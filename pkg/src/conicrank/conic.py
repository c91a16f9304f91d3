"""Singular fibers of the conic bundle over the x-line.

Each irreducible factor f of Delta_conic = B^2 - 4AC with multiplicity e
carries one reducible fiber with n = e + 1 components: type D when A and
C both vanish at the root (then B does too), type A otherwise. The fiber
at infinity always exists and is of type D with n = 9 - deg Delta_conic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import ConicForm, delta_conic
from .errors import ComponentSumViolation, ConsistencyError
from .numfield import NFElement, NumberField, reduce_mod
from .qpoly import Poly, factor


@dataclass(frozen=True)
class ConicFiber:
    location: Poly | None  # monic irreducible in x; None marks infinity
    kind: str  # "A" or "D"
    n: int  # component count index: A_n (n >= 2) or D_n (n >= 3)
    residue_field: NumberField | None = None
    a_residue: NFElement | None = None
    c_residue: NFElement | None = None

    @property
    def is_infinity(self):
        return self.location is None

    @property
    def degree(self):
        return 1 if self.location is None else self.location.degree

    def label(self):
        return "infinity" if self.location is None else str(self.location)

    def type_label(self):
        return f"{self.kind}{self.n}"


def classify_conic_fibers(cf: ConicForm) -> list[ConicFiber]:
    """One fiber per irreducible factor of Delta_conic, plus infinity."""
    disc = delta_conic(cf)
    fibers = []
    for f, mult in factor(disc).factors:
        K = NumberField(f, check=False)
        a_res = reduce_mod(cf.A, K)
        c_res = reduce_mod(cf.C, K)
        if not a_res and not c_res:
            kind = "D"
            if reduce_mod(cf.B, K):
                raise ConsistencyError(
                    f"B({f}) != 0 although A and C vanish: impossible for a root of Delta_conic"
                )
        else:
            kind = "A"
        n = mult + 1
        if kind == "D" and n < 3:
            raise ConsistencyError(f"D-type fiber with n = {n} < 3 at {f}")
        fibers.append(ConicFiber(f, kind, n, K, a_res, c_res))
    fibers.sort(key=lambda fb: (fb.location.degree, fb.location.coeffs))
    n_inf = 9 - disc.degree
    if not 3 <= n_inf <= 9:
        raise ConsistencyError(f"fiber at infinity has n = {n_inf} outside [3, 9]")
    fibers.append(ConicFiber(None, "D", n_inf))
    return fibers


def delta_epsilon(fibers) -> tuple[int, int]:
    """Geometric counts: delta over A-type fibers, epsilon over D-type."""
    d = sum(f.degree for f in fibers if f.kind == "A")
    e = sum(f.degree for f in fibers if f.kind == "D")
    if not 0 <= d <= 8:
        raise ConsistencyError(f"delta = {d} outside [0, 8]")
    return d, e


def component_sum_check(fibers) -> bool:
    total = sum(f.degree * (f.n - 1) for f in fibers)
    if total != 8:
        raise ComponentSumViolation(f"conic components sum to {total}, expected 8")
    return True


def fiber_at_infinity(fibers) -> ConicFiber:
    return next(f for f in fibers if f.is_infinity)
