"""End-to-end analysis: curve in, full fiber/rank report out."""

from __future__ import annotations

from dataclasses import dataclass

from .conic import (
    classify_conic_fibers,
    component_sum_check,
    delta_epsilon,
)
from .curve import CurveInput, weierstrass_invariants
from .kodaira import elliptic_fibers, euler_check, shioda_tate_rank
from .points import RelationResult, verify_linear_relation, verify_two_torsion
from .rank import RankReport, rank_report


@dataclass(frozen=True)
class Verifications:
    two_torsion: list  # (fiber label, True) per finite D-type fiber
    linear_relation: RelationResult


@dataclass(frozen=True)
class Analysis:
    curve: CurveInput
    weierstrass: object
    conic_form: object
    conic_fibers: list
    kodaira_fibers: list
    rank: RankReport
    verifications: Verifications | None

    @property
    def delta(self):
        return self.rank.delta

    @property
    def epsilon(self):
        return self.rank.epsilon

    @property
    def r(self):
        return self.rank.r

    @property
    def df(self):
        return self.rank.defect.df

    @property
    def delta_k(self):
        return self.rank.delta_k

    @property
    def r_k_exact(self):
        return self.rank.r_k_exact


def analyze(c: CurveInput, verify_points: bool = False) -> Analysis:
    w = weierstrass_invariants(c)
    cf = c.conic()
    conic_fibers = classify_conic_fibers(cf)
    component_sum_check(conic_fibers)
    kodaira_fibers = elliptic_fibers(w)
    euler_check(kodaira_fibers)
    delta, epsilon = delta_epsilon(conic_fibers)
    r = shioda_tate_rank(kodaira_fibers)
    report = rank_report(c, w, cf, conic_fibers, kodaira_fibers, delta, epsilon, r)
    verifications = None
    if verify_points:
        torsion = []
        for f in conic_fibers:
            if f.kind == "D" and not f.is_infinity:
                torsion.append((f.label(), verify_two_torsion(c, f)))
        relation = verify_linear_relation(c, cf, conic_fibers)
        verifications = Verifications(torsion, relation)
    return Analysis(c, w, cf, conic_fibers, kodaira_fibers, report, verifications)
