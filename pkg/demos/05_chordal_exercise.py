"""Restricted chordal varieties of Gr(2, 4): ideals from stabilized sampling.

The symmetric square of wedge^2 V splits into non-isomorphic pieces; the
degree-two ideal of the p-restricted chordal variety should be the tail of
that decomposition starting at index p.  Sampling chord points exactly and
folding their orbit modules until the span stabilizes recovers the ideal and
matches it against the tails by exact subspace equality.

Pass "n6" on the command line to also run the 15-dimensional wedge^2 QQ^6
case (a couple of minutes of exact arithmetic).
"""

import sys

from orbitquad import ChordalSpec, chordal_ideal, chordal_sample

for p in (1, 2):
    spec = ChordalSpec(4, 2, p)
    print(f"C^{p}(Gr^2(QQ^4)): planes meet in dim >= {spec.meet_dim}")
    x = chordal_sample(spec, seed=3)
    print("  sample chord point:", [str(e) for e in x])
    report = chordal_ideal(spec, samples=20, seed=0)
    print("  isotypic dims:", report.isotypic_dims)
    print("  span dim:", report.span_dim, " ideal dim:", report.ideal.dim)
    print("  matched tail index:", report.matched_tail,
          "(ideal = sum of components from that index on)")
    print("  samples used:", report.samples_used)
    print()

if "n6" in sys.argv[1:]:
    print("C^1(Gr^2(QQ^6)) - this takes a while, every step exact...")
    report = chordal_ideal(ChordalSpec(6, 2, 1), samples=20, seed=0)
    print("  isotypic dims:", report.isotypic_dims)
    print("  ideal dim:", report.ideal.dim, " matched tail:", report.matched_tail)
