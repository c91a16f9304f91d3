"""Command-line entry point: analyze one curve or run the self-check sweep."""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter
from fractions import Fraction

from .curve import CurveInput, curve_from_a, delta_conic, parse_curve
from .errors import ConicRankError, ConsistencyError, ValidationError
from .pipeline import Analysis, analyze
from .qpoly import QQ, Poly, factor

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CONSISTENCY = 3


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _ser_poly(p: Poly) -> list:
    """Coefficient list, lowest degree first, exact [num, den] string pairs."""
    return [[str(c.numerator), str(c.denominator)] for c in p.coeffs]


def _ser_rational(c: Fraction) -> list:
    return [str(c.numerator), str(c.denominator)]


def _ser_place(place) -> object:
    return "infinity" if place.is_infinity else _ser_poly(place.modulus)


def report_dict(a: Analysis) -> dict:
    c = a.curve
    rk = a.rank
    out = {
        "curve": {
            "a": [_ser_poly(p) for p in c.a_list()],
            "conic": {
                "A": _ser_poly(a.conic_form.A),
                "B": _ser_poly(a.conic_form.B),
                "C": _ser_poly(a.conic_form.C),
            },
            "expression": c.expression(),
        },
        "conic_fibers": [
            {
                "location": "infinity" if f.is_infinity else _ser_poly(f.location),
                "kind": f.kind,
                "n": f.n,
                "degree": f.degree,
            }
            for f in a.conic_fibers
        ],
        "kodaira_fibers": [
            {
                "place": _ser_place(f.place),
                "type": f.symbol,
                "m": f.m,
                "euler": f.euler,
                "degree": f.place.degree,
            }
            for f in a.kodaira_fibers
        ],
        "delta": rk.delta,
        "epsilon": rk.epsilon,
        "rank_geometric": rk.r,
        "defect": {
            "direct": rk.defect.df_direct,
            "table": rk.defect.df_table,
            "consistent": rk.defect.consistent,
            "G_inf": f"D{rk.defect.n_inf}",
            "shared": [
                {"place": _ser_place(p), "fiber": f.symbol if f else None}
                for p, f in rk.defect.shared_pairs
            ],
        },
        "delta_k": rk.delta_k,
        "orbits": [
            {
                "factor": _ser_poly(o.factor),
                "kind": o.fiber_kind,
                "status": o.square_status,
                "counted": o.counted,
                "witness": None if o.witness is None else _ser_poly(o.witness.rep),
                "certificate": None
                if o.certificate is None
                else {
                    "prime": o.certificate.prime,
                    "root": o.certificate.root,
                    "residue": o.certificate.residue,
                },
            }
            for o in rk.orbits
        ],
        "bounds": list(rk.bounds),
        "family": {
            "tag": rk.family.tag,
            "mu": None if rk.family.mu is None else _ser_rational(rk.family.mu),
            "mu_is_square": rk.family.mu_is_square,
            "diagnostics": list(rk.family.diagnostics),
        },
        "rank_exact": rk.r_k_exact,
        "verifications": None,
    }
    if a.verifications is not None:
        rel = a.verifications.linear_relation
        out["verifications"] = {
            "two_torsion": [
                {"location": label, "ok": ok} for label, ok in a.verifications.two_torsion
            ],
            "linear_relation": {
                "applicable": rel.applicable,
                "reason": rel.reason,
                "holds": rel.relation_holds,
                "triple_sum_zero": rel.triple_sum_zero,
            },
        }
    return out


def render_json(a: Analysis) -> str:
    return json.dumps(report_dict(a), indent=2, sort_keys=True) + "\n"


def render_text(a: Analysis) -> str:
    rk = a.rank
    lines = []
    lines.append(f"curve: y^2 = {a.curve.expression()}")
    disc_parts = factor(delta_conic(a.conic_form))
    terms = " * ".join(
        f"({f})^{e}" if e > 1 else f"({f})" for f, e in disc_parts.factors
    )
    lines.append(f"Delta_conic = {disc_parts.unit} * {terms}")
    lines.append("conic fibers:")
    for f in a.conic_fibers:
        lines.append(f"  {f.type_label():<4} at {f.label()}  (degree {f.degree})")
    lines.append("elliptic fibers:")
    for f in a.kodaira_fibers:
        lines.append(
            f"  {f.symbol:<4} at {f.place.label()}  (m = {f.m}, euler = {f.euler}, degree {f.place.degree})"
        )
    lines.append(f"delta = {rk.delta}, epsilon = {rk.epsilon}")
    lines.append(f"rank over the algebraic closure: r = {rk.r}")
    lines.append(
        f"defect: direct = {rk.defect.df_direct}, table = {rk.defect.df_table} "
        f"(G_inf = D{rk.defect.n_inf})"
    )
    for p, f in rk.defect.shared_pairs:
        lines.append(f"  shared place {p.label()}: {f.symbol if f else 'good reduction'}")
    lines.append(f"delta_k = {rk.delta_k}")
    for o in rk.orbits:
        detail = o.square_status
        if o.witness is not None and not o.witness.is_rational():
            detail += f", witness {o.witness}"
        elif o.witness is not None:
            detail += f", witness {o.witness.rational_value()}"
        if o.certificate is not None:
            cert = o.certificate
            detail += f", non-residue mod {cert.prime} at root {cert.root}"
        lines.append(f"  orbit ({o.factor}): {detail}")
    lines.append(f"rank bounds over Q(T): {rk.bounds[0]} <= r_k <= {rk.bounds[1]}")
    fam = rk.family
    mu_part = "" if fam.mu is None else f" (mu = {fam.mu}, square: {fam.mu_is_square})"
    lines.append(f"family: {fam.tag}{mu_part}")
    if fam.diagnostics:
        lines.append(f"  diagnostics: {', '.join(fam.diagnostics)}")
    if rk.r_k_exact is not None:
        lines.append(f"exact rank over Q(T): r_k = {rk.r_k_exact}")
    else:
        lines.append("exact rank over Q(T): not determined by a family rule")
    if a.verifications is not None:
        lines.append("point verifications:")
        for label, ok in a.verifications.two_torsion:
            lines.append(f"  2-torsion at {label}: {'ok' if ok else 'FAILED'}")
        rel = a.verifications.linear_relation
        if not rel.applicable:
            lines.append(f"  linear relation: not applicable ({rel.reason})")
        else:
            lines.append(f"  linear relation sum [n]P = O: {rel.relation_holds}")
            if rel.triple_sum_zero is not None:
                lines.append(f"  P1 + P2 + P3 = O: {rel.triple_sum_zero}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Self-test sweep
# ---------------------------------------------------------------------------

def random_curve(rng: random.Random) -> CurveInput | None:
    """One draw with coefficients in {-3..3}; None when validation rejects."""
    polys = [
        Poly([Fraction(rng.randint(-3, 3)) for _ in range(3)], QQ, "T")
        for _ in range(4)
    ]
    try:
        return curve_from_a(polys)
    except ValidationError:
        return None


def self_test(count: int, seed: int, out=sys.stdout) -> int:
    rng = random.Random(seed)
    rejected = 0
    df_hist = Counter()
    family_hist = Counter()
    produced = 0
    while produced < count:
        c = random_curve(rng)
        if c is None:
            rejected += 1
            continue
        try:
            a = analyze(c)
            assert a.df in (0, 1, 2)
            assert a.rank.defect.df_table == a.rank.defect.df_direct
            assert a.delta >= a.r
        except (ConicRankError, AssertionError) as exc:
            print(f"self-test FAILED on curve: y^2 = {c.expression()}", file=out)
            print(f"  rerun with: --expr '{c.expression()}'", file=out)
            print(f"  error: {exc}", file=out)
            return 1
        df_hist[a.df] += 1
        family_hist[a.rank.family.tag] += 1
        produced += 1
    if count == 0:
        return EXIT_OK
    print(f"self-test: {count} curves analyzed, {rejected} rejected draws", file=out)
    print("defect histogram:", file=out)
    for df in sorted(df_hist):
        print(f"  Df = {df}: {df_hist[df]}", file=out)
    print("family histogram:", file=out)
    for tag in sorted(family_hist):
        print(f"  {tag}: {family_hist[tag]}", file=out)
    print("all invariants held (component sum, Euler sum, defect agreement)", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="conicrank",
        description=(
            "Rank bounds for elliptic curves y^2 = a3(T)x^3 + a2(T)x^2 + a1(T)x + a0(T) "
            "via the induced conic bundle"
        ),
    )
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--input", help="path to an expression or JSON curve file")
    src.add_argument("--expr", help="curve right-hand side, e.g. '(x^2-1)*T + x^3 - x + 4'")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--verify-points", action="store_true",
                    help="run 2-torsion and linear-relation checks on induced points")
    ap.add_argument("--self-test", type=int, metavar="N", default=None,
                    help="analyze N random curves and check structural invariants")
    ap.add_argument("--seed", type=int, default=0, help="RNG seed for --self-test")
    return ap


def _load_source(args):
    if args.expr is not None:
        return args.expr
    with open(args.input, encoding="utf-8") as fh:
        text = fh.read().strip()
    if text.startswith("{"):
        return json.loads(text)
    return text


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.self_test is not None:
        if args.self_test < 0:
            print("--self-test count must be >= 0", file=sys.stderr)
            return EXIT_VALIDATION
        return self_test(args.self_test, args.seed)
    if args.input is None and args.expr is None:
        print("one of --input, --expr, or --self-test is required", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        curve = parse_curve(_load_source(args))
    except ValidationError as exc:
        print(f"invalid curve: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        a = analyze(curve, verify_points=args.verify_points)
    except ValidationError as exc:
        print(f"invalid curve: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConsistencyError as exc:
        print(f"internal consistency violation: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    sys.stdout.write(render_json(a) if args.format == "json" else render_text(a))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
