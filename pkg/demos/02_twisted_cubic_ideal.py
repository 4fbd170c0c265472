"""The twisted cubic as an orbit closure: its quadrics from pure linear algebra.

Take V = cubic binary forms (the 4-dimensional sl(2)-module) and y = x^3.
The orbit of y is the twisted cubic; the smallest submodule of S^2(V)
containing y y^t has dimension 7, so the degree-two ideal has dimension
10 - 7 = 3: the three classical quadrics through the twisted cubic.
"""

from fractions import Fraction as F

from orbitquad import (
    build_A,
    decompose_Q,
    generator_sequence,
    leibniz_check,
    make_sl,
    derived_rep,
    orbit_module,
    quadric_ideal,
    standard_rep,
)

r = derived_rep(standard_rep(make_sl(2)), "sym", 3)
print("module:", r.label, "dim", r.dim, "with basis", r.basis_labels)

y = [F(1), F(0), F(0), F(0)]  # x^3
module = orbit_module(r, y)
ideal = quadric_ideal(r, y)
print("\norbit module dim:", module.dim, " ideal dim:", ideal.dim)
print("quadrics (as symmetric matrices pairing by trace):")
for phi in ideal.basis:
    print("  ", [[str(e) for e in row] for row in phi.data])

# Along the orbit every quadric vanishes; off it they do not.
on_orbit = [F(1), F(3), F(3), F(1)]     # (x + z)^3
off_orbit = [F(1), F(0), F(0), F(1)]    # x^3 + z^3 (a rank-2 form)
print("\nvalues on (x+z)^3:", [str(ideal.evaluate(k, on_orbit)) for k in range(3)])
print("values on x^3+z^3:", [str(ideal.evaluate(k, off_orbit)) for k in range(3)])

# The generator sequence and its multi-degree bound reconstruct everything
# an enveloping-algebra element does to y y^t.
gs = generator_sequence(r, y)
print("\ngenerator sequence:", gs.symbols, "bound N =", gs.box.N)
a = build_A(r, y, gs)
print("A (columns are D^i y / i!):")
for row in a.data:
    print("  ", [str(e) for e in row])

print("\nLeibniz identity over the doubled box:",
      all(leibniz_check(r, y, gs, n) for n in gs.box.doubled().indices()))

word = ("X(1,2)", "Y(1,2)", "Y(1,2)")
b = decompose_Q(r, y, gs, word)
print("coefficients b for Q = X Y Y acting on yy:", [str(e) for e in b.data])
