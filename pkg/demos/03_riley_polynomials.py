"""
Riley polynomials of two-bridge knots at t = -1
===============================================

For each built-in two-bridge knot compute phi(-1, u) exactly over the Gaussian
rationals and compare its roots with 2 cos(2 k pi / p) - 2.
"""

from sl2slice.registry import REGISTRY, get
from sl2slice.twobridge import explicit_metabelian_reps, factorization_check, gamma_matrix
from sl2slice.reps import is_irreducible

print(f"{'knot':<5} {'p':>3}  {'phi(-1,u)':<52} {'defect':>9}  match")
for name in sorted(REGISTRY, key=lambda n: (REGISTRY[n].p, n)):
    K = get(name)
    rep = factorization_check(K)
    print(f"{name:<5} {rep.p:>3}  {str(rep.polynomial):<52} {rep.max_defect:9.1e}  {rep.ok()}")

# the polynomial only depends on the determinant p
print()
print("5_1 and 4_1 share", get("5_1").riley, "; 7_1 and 5_2 share", get("7_1").riley)

# explicit representatives for the trefoil: one irreducible, then the abelian one
K = get("3_1")
for rho in explicit_metabelian_reps(K):
    g = gamma_matrix(rho)
    print("irreducible" if is_irreducible(rho) else "abelian    ",
          "rho(x y^-1) =", [[round(g.a.real, 12), round(g.b.real, 12)], [round(g.c.real, 12), round(g.d.real, 12)]])
