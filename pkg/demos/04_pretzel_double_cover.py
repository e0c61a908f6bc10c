"""
Brieskorn groups and the covering involution
============================================

The double branched cover of a (p, q, r) pretzel knot is a Brieskorn
manifold.  Sweep the standard parameterization of its SL2(C)
representations and certify that each irreducible one is conjugate to its
pull-back under the covering involution.
"""

import numpy as np

from sl2slice.pretzel import BrieskornGroup, RepParams, build_rep, surjectivity_report
from sl2slice.sl2 import QUAT_K

for pqr in [(2, 3, 7), (3, 5, 7)]:
    report = surjectivity_report(*pqr)
    s = report.summary()
    print(f"Sigma{pqr}: {s['parameters']} parameter tuples, {s['admissible']} admissible,"
          f" {s['irreducible']} irreducible, {s['certified']} certified,"
          f" {s['distinct_characters']} distinct characters")

# one representation in detail
G = BrieskornGroup(2, 3, 7)
rep = build_rep(G, RepParams(-1, 0, 0, 1))
for label in G.presentation.generator_labels:
    print(label, np.round(rep[label].to_array(), 6).tolist())

# conjugation by k inverts t1 = s1 and t2 = s1 s2
t1, t2 = rep["s1"], rep["s1"] @ rep["s2"]
print("k t1 k^-1 == t1^-1:", np.allclose((QUAT_K @ t1 @ QUAT_K.inv()).to_array(), t1.inv().to_array()))
print("k t2 k^-1 == t2^-1:", np.allclose((QUAT_K @ t2 @ QUAT_K.inv()).to_array(), t2.inv().to_array()))

# the start of the parameter table the CLI prints; "guard" rows have a = +-1 or a trace of +-2
lines = surjectivity_report(2, 3, 7).table().splitlines()
print("\n".join(lines[:1] + [ln for ln in lines if "built" in ln][:6]))
