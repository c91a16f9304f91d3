"""Sweep random small-coefficient curves and tabulate defect / family tags.

Usage: python demos/defect_histogram.py [count] [seed]
"""

import random
import sys
from collections import Counter
from fractions import Fraction

from conicrank.curve import curve_from_a
from conicrank.errors import ValidationError
from conicrank.pipeline import analyze
from conicrank.qpoly import QQ, Poly


def main(count=500, seed=0):
    rng = random.Random(seed)
    defects, families = Counter(), Counter()
    gaps = Counter()  # width of the r_k bounds interval
    done = rejected = 0
    while done < count:
        polys = [
            Poly([Fraction(rng.randint(-3, 3)) for _ in range(3)], QQ, "T")
            for _ in range(4)
        ]
        try:
            a = analyze(curve_from_a(polys))
        except ValidationError:
            rejected += 1
            continue
        defects[a.df] += 1
        families[a.rank.family.tag] += 1
        lo, hi = a.rank.bounds
        gaps[hi - lo] += 1
        done += 1
    print(f"{done} curves analyzed ({rejected} invalid draws rejected)")
    print("defect:", dict(sorted(defects.items())))
    print("family:", dict(families.most_common()))
    print("bound gap:", dict(sorted(gaps.items())))


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:3]))
