"""Defect, arithmetic orbit count delta_k, rank bounds, and family rules.

The defect Df = delta - r is computed directly and re-derived from the
configuration of the conic fiber at infinity G_inf = D_n together with
the Kodaira fibers sharing components with it; the two must agree.
delta_k counts the Galois orbits of Delta_conic roots whose residue
A(theta) (or C(theta) when A(theta) = 0) is a nonzero square, giving
delta_k >= r_k >= delta_k - Df. Structured families pin r_k exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .conic import ConicFiber, fiber_at_infinity
from .curve import ConicForm, CurveInput, WeierstrassData, delta_conic
from .errors import (
    ConsistencyError,
    NegativeDefect,
    SharedFiberInconsistency,
    TableMismatch,
)
from .kodaira import KodairaFiber, Place
from .numfield import ModularCertificate, square_root_in_field
from .qpoly import Poly, factor, is_square_rational, resultant, squarefree_decomposition


# ---------------------------------------------------------------------------
# Defect, twice
# ---------------------------------------------------------------------------

def defect_direct(delta: int, r: int) -> int:
    df = delta - r
    if df < 0:
        raise NegativeDefect(f"delta = {delta} < r = {r}: upstream misclassification")
    return df


@dataclass(frozen=True)
class SharedPlaces:
    places: list  # Place objects on the T-line
    doubled: bool  # True when a3 has a double zero (including deg a3 = 0)


def shared_fiber_places(c: CurveInput) -> SharedPlaces:
    """Zeros of the degree-2 homogenization of a3: the places where the
    elliptic fibers share components with the conic fiber at infinity."""
    a3 = c.a3
    if a3.degree == 2:
        parts = factor(a3).factors
        if len(parts) == 1 and parts[0][1] == 2:
            return SharedPlaces([Place(parts[0][0])], doubled=True)
        return SharedPlaces([Place(f) for f, _ in parts], doubled=False)
    if a3.degree == 1:
        return SharedPlaces([Place(a3.monic()), Place(None)], doubled=False)
    return SharedPlaces([Place(None)], doubled=True)


def check_shared_pattern(shared: SharedPlaces, n_inf: int) -> None:
    """A doubled zero of a3 must pair with G_inf = D_n, n >= 4; simple
    zeros with D_3."""
    if shared.doubled and n_inf < 4:
        raise SharedFiberInconsistency(
            f"a3 has a doubled zero but G_inf is D_{n_inf} (expected n >= 4)"
        )
    if not shared.doubled and n_inf != 3:
        raise SharedFiberInconsistency(
            f"a3 has simple zeros but G_inf is D_{n_inf} (expected D_3)"
        )


def match_shared_fibers(shared: SharedPlaces, fibers) -> list:
    """Pair each shared place with its Kodaira fiber (None = good reduction)."""
    out = []
    for place in shared.places:
        hit = None
        for f in fibers:
            if place.is_infinity and f.place.is_infinity:
                hit = f
            elif not place.is_infinity and f.place.modulus == place.modulus:
                hit = f
        out.append((place, hit))
    return out


def _counts_for_d3(f: KodairaFiber | None) -> bool:
    if f is None:
        return False
    if f.symbol == "IV":
        return True
    return f.is_multiplicative and f.index >= 3


def defect_table(n_inf: int, shared_pairs) -> int:
    """Df from the (G_inf, shared Kodaira fibers) configuration."""
    if n_inf == 3:
        return sum(p.degree for p, f in shared_pairs if _counts_for_d3(f))
    if len(shared_pairs) != 1:
        raise TableMismatch(
            f"G_inf = D_{n_inf} must share components with exactly one fiber, "
            f"got {len(shared_pairs)}"
        )
    place, f = shared_pairs[0]
    if f is None:
        raise TableMismatch(
            f"G_inf = D_{n_inf} but the shared place {place.label()} has good reduction"
        )
    s, idx = f.symbol, f.index
    starred_i = s.endswith("*") and idx is not None
    if n_inf == 4 and f.is_multiplicative:
        if idx == 4:
            return 0
        if idx >= 5:
            return 1
    if n_inf == 5 and s == "I1*":
        return 1
    if n_inf == 5 and starred_i and idx >= 2:
        return 0
    if n_inf == 6 and s == "IV*":
        return 1
    if n_inf == 7 and s == "III*":
        return 0
    if n_inf == 9 and s == "II*":
        return 0
    if starred_i and n_inf == idx + 5:
        return 0
    raise TableMismatch(
        f"no row for G_inf = D_{n_inf} with shared fiber {s} at {place.label()}"
    )


@dataclass(frozen=True)
class DefectReport:
    df_direct: int
    df_table: int | None
    consistent: bool
    n_inf: int
    shared_pairs: list  # (Place, KodairaFiber | None)

    @property
    def df(self) -> int:
        return self.df_direct


def defect_report(c: CurveInput, conic_fibers, kodaira_fibers, delta: int, r: int) -> DefectReport:
    df = defect_direct(delta, r)
    if not 0 <= df <= 2:
        raise ConsistencyError(f"Df = {df} outside [0, 2]")
    n_inf = fiber_at_infinity(conic_fibers).n
    shared = shared_fiber_places(c)
    check_shared_pattern(shared, n_inf)
    pairs = match_shared_fibers(shared, kodaira_fibers)
    df_t = defect_table(n_inf, pairs)
    if df_t != df:
        raise TableMismatch(
            f"table defect {df_t} != direct defect {df} "
            f"(G_inf = D_{n_inf}, shared = {[(p.label(), f.symbol if f else None) for p, f in pairs]})"
        )
    return DefectReport(df, df_t, True, n_inf, pairs)


# ---------------------------------------------------------------------------
# delta_k: Galois-orbit square counting
# ---------------------------------------------------------------------------

A_SQUARE = "A-square"
A_NONSQUARE = "A-nonsquare"
A_ZERO_C_SQUARE = "A-zero-C-square"
A_ZERO_C_NONSQUARE = "A-zero-C-nonsquare"
D_EXCLUDED = "D-excluded"


@dataclass(frozen=True)
class OrbitRecord:
    factor: Poly
    fiber_kind: str  # "A" or "D"
    square_status: str
    counted: bool
    witness: object = None  # NFElement with witness^2 = residue, when counted
    certificate: ModularCertificate | None = None


def delta_k(fibers) -> tuple[int, list[OrbitRecord]]:
    """Count orbits whose residue square test succeeds (one per factor)."""
    records = []
    for f in fibers:
        if f.is_infinity:
            continue
        if f.kind == "D":
            records.append(OrbitRecord(f.location, "D", D_EXCLUDED, False))
            continue
        if f.a_residue:
            residue = f.a_residue
            statuses = (A_SQUARE, A_NONSQUARE)
        else:
            residue = f.c_residue
            statuses = (A_ZERO_C_SQUARE, A_ZERO_C_NONSQUARE)
        res = square_root_in_field(f.residue_field, residue)
        if res.witness is not None:
            if not res.witness * res.witness == residue:
                raise ConsistencyError(f"square witness failed to verify at {f.location}")
            records.append(OrbitRecord(f.location, "A", statuses[0], True, res.witness))
        else:
            records.append(OrbitRecord(f.location, "A", statuses[1], False,
                                       certificate=res.certificate))
    dk = sum(1 for rec in records if rec.counted)
    return dk, records


def rank_bounds(dk: int, df: int) -> tuple[int, int]:
    return max(0, dk - df), dk


# ---------------------------------------------------------------------------
# Family detection
# ---------------------------------------------------------------------------

FAMILY_DEFECT_ZERO = "defect-zero"
FAMILY_CONSTANT_A = "constant-A"
FAMILY_C_SHIFT_OF_B = "C-shift-of-B"
FAMILY_BOUNDS_ONLY = "bounds-only"

TAG_GENERIC_A3 = "generic-nonconstant-a3"
TAG_CUBIC_A_SPLIT = "cubic-A-split-square-roots"


@dataclass(frozen=True)
class FamilyResult:
    tag: str
    r_k: int | None
    mu: object = None  # the constant whose squareness decides r_k, when relevant
    mu_is_square: bool | None = None
    diagnostics: tuple = ()


def _diagnostic_tags(c: CurveInput, w: WeierstrassData, cf: ConicForm) -> tuple:
    tags = []
    if (
        c.a3.degree >= 1
        and w.gamma.degree == 8
        and resultant(c.a3, w.gamma)
    ):
        tags.append(TAG_GENERIC_A3)
    x = Poly.gen(c.a3.field, "x")
    if cf.A == x**3:
        disc = delta_conic(cf)
        if disc.degree == 6 and all(e == 1 for _, e in squarefree_decomposition(disc)):
            roots = [-f.constant_coeff() for f, _ in factor(disc).factors if f.degree == 1]
            if len(roots) == 6 and all(r and is_square_rational(r) is not None for r in roots):
                tags.append(TAG_CUBIC_A_SPLIT)
    return tuple(tags)


def _constant_a_shape(cf: ConicForm):
    """mu when A = mu is a nonzero constant, deg B <= 2 and deg C = 3."""
    if cf.A.degree == 0 and cf.B.degree <= 2 and cf.C.degree == 3:
        return cf.A.constant_coeff()
    return None


def _c_shift_shape(cf: ConicForm):
    """(lambda, mu) when A = 0, B is a monic separable cubic, C = lambda*B + mu."""
    if not cf.A.is_zero():
        return None
    B, C = cf.B, cf.C
    if B.degree != 3 or B.lc() != 1:
        return None
    if any(e > 1 for _, e in squarefree_decomposition(B)):
        return None
    lam = C[3]
    rem = C - B * lam
    if rem.degree > 0:
        return None
    mu = rem.constant_coeff()
    if not mu:
        return None
    return lam, mu


def detect_family(c: CurveInput, w: WeierstrassData, cf: ConicForm, df: int, dk: int) -> FamilyResult:
    """First matching rule fixes r_k; otherwise only the bounds stand."""
    diagnostics = _diagnostic_tags(c, w, cf)
    if df == 0:
        return FamilyResult(FAMILY_DEFECT_ZERO, dk, diagnostics=diagnostics)
    mu = _constant_a_shape(cf)
    if mu is not None:
        if df != 1:
            raise ConsistencyError(f"constant-A family must have Df = 1, got {df}")
        sq = is_square_rational(mu) is not None
        return FamilyResult(FAMILY_CONSTANT_A, dk - 1 if sq else dk, mu, sq, diagnostics)
    shift = _c_shift_shape(cf)
    if shift is not None:
        if df != 1:
            raise ConsistencyError(f"C-shift-of-B family must have Df = 1, got {df}")
        _, mu = shift
        sq = is_square_rational(mu) is not None
        return FamilyResult(FAMILY_C_SHIFT_OF_B, dk - 1 if sq else dk, mu, sq, diagnostics)
    return FamilyResult(FAMILY_BOUNDS_ONLY, None, diagnostics=diagnostics)


@dataclass(frozen=True)
class RankReport:
    delta: int
    epsilon: int
    r: int
    defect: DefectReport
    delta_k: int
    orbits: list
    bounds: tuple
    family: FamilyResult

    @property
    def r_k_exact(self) -> int | None:
        return self.family.r_k


def rank_report(c: CurveInput, w: WeierstrassData, cf: ConicForm,
                conic_fibers, kodaira_fibers, delta: int, epsilon: int, r: int) -> RankReport:
    dreport = defect_report(c, conic_fibers, kodaira_fibers, delta, r)
    dk, orbits = delta_k(conic_fibers)
    bounds = rank_bounds(dk, dreport.df)
    fam = detect_family(c, w, cf, dreport.df, dk)
    if fam.r_k is not None and not bounds[0] <= fam.r_k <= bounds[1]:
        raise ConsistencyError(
            f"family rule gave r_k = {fam.r_k} outside bounds {bounds}"
        )
    return RankReport(delta, epsilon, r, dreport, dk, orbits, bounds, fam)
