"""A full certification run on the conic instance, with its JSON report.

certify_irreducibility chains every construction: generator sequence, the
matrix A of scaled derivatives, the Leibniz identity on the whole doubled
box, seeded enveloping-algebra decompositions, the hyperplane ledger, and
both directions of the rank-one correspondence.  Everything is exact, so a
"consistent" verdict means every identity held on the nose.
"""

import json
from fractions import Fraction as F

from orbitquad import certify_irreducibility, derived_rep, make_sl, standard_rep

r = derived_rep(standard_rep(make_sl(2)), "sym", 2)
y = [F(1), F(0), F(0)]  # x^2: the Veronese conic

report = certify_irreducibility(r, y, trials=25, seed=7)
print("verdict:", report.verdict)
print("dims:", report.dims, " rank A:", report.rank_A)
print("sequence:", report.symbols, "N =", report.N)
print("hyperplanes: %d checked, %d satisfy the product-span property, %d do not"
      % (report.hyperplane_trials, report.hyperplane_good, report.hyperplane_bad))
print("forward: %d/%d  reverse: %d/%d  leibniz: %d/%d  decompose: %d/%d"
      % (report.forward_passes, report.forward_trials,
         report.reverse_passes, report.reverse_trials,
         report.leibniz_passes, report.leibniz_trials,
         report.decompose_passes, report.decompose_trials))

print("\nfull JSON document:")
print(json.dumps(report.to_json_dict(), sort_keys=True, indent=2)[:1200], "...")
