"""Pluecker quadric on wedge^2 QQ^4 and the membership locus of a point.

For y = e1^e2 the zero locus of the degree-two ideal of its orbit closure is
exactly the Grassmannian of 2-planes: decomposable 2-vectors pass the
membership test, generic ones fail.  The point e1^e2 + e3^e4 has a dense
orbit, so its ideal is zero and everything passes.
"""

import random
from fractions import Fraction as F

from orbitquad import (
    component_analysis,
    derived_rep,
    isotypic_decomposition,
    make_sl,
    my_membership,
    quadric_ideal,
    standard_rep,
)
from orbitquad.chordal import wedge_coordinates

r = derived_rep(standard_rep(make_sl(4)), "wedge", 2)
print("module:", r.label, "dim", r.dim, "basis", r.basis_labels)

decomp = isotypic_decomposition(r.sym_square())
print("S^2 splits into dims", decomp.dims(), "(multiplicity free:",
      decomp.multiplicity_free, ")")

y = [F(1), F(0), F(0), F(0), F(0), F(0)]          # e1 ^ e2
dense = [F(1), F(0), F(0), F(0), F(0), F(1)]      # e1^e2 + e3^e4
ideal = quadric_ideal(r, y)
print("\nideal dim at e1^e2:", ideal.dim, "(the Pluecker quadric)")
print("ideal dim at e1^e2 + e3^e4:", quadric_ideal(r, dense).dim, "(dense orbit)")

rng = random.Random(0)
print("\nmembership against y = e1^e2:")
for _ in range(4):
    u = [F(rng.randint(-3, 3)) for _ in range(4)]
    w = [F(rng.randint(-3, 3)) for _ in range(4)]
    x = wedge_coordinates([u, w], 4)
    if not any(x):
        continue
    print("  decomposable", [str(e) for e in x], "->", my_membership(r, y, x))
print("  generic     ", [str(e) for e in dense], "->", my_membership(r, y, dense))

report = component_analysis(r, [y, dense])
print("\nisotypic supports:", [sorted(s) for s in report.point_sets])
print("containments (i inside j):", report.containments)
print("maximal components:", report.maximal_count,
      "<= antichain bound", report.bound, ":", report.bound_ok)
