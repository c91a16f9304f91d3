"""Walk through three worked instances, printing the full analysis of each.

Usage: python demos/worked_instances.py
"""

from conicrank.cli import render_text
from conicrank.curve import parse_curve
from conicrank.pipeline import analyze

INSTANCES = [
    # defect zero, two rational orbits, exact rank 2
    "(x^2-1)*T + x^3 - x + 4",
    # constant-A family, one quadratic orbit, exact rank 1
    "T^2 + x^3 + 1",
    # C-shift-of-B family with a verifiable collinearity relation
    "(x^3-x)*T + 4",
]

for expr in INSTANCES:
    print("=" * 72)
    print(render_text(analyze(parse_curve(expr), verify_points=True)))
