"""
Binary dihedral representations and their lifts
===============================================

Enumerate the binary dihedral representations of a knot group, lift them to
the double branched cover, and look for the matrix that intertwines each lift
with its deck-transformed copy.  The last part shows an abelian
representation of the 3-fold cover that admits no such matrix.
"""

from pathlib import Path

from sl2slice.knotdata import load_knot
from sl2slice.presentation import lift_sigman
from sl2slice.reps import (
    Representation,
    enumerate_dihedral,
    images_commute,
    involution_iota,
    is_metabelian,
    phi_n,
    tau_equivariance,
)
from sl2slice.sl2 import ONE, matrix_order

DATA = Path(__file__).parent / "data"

for name in ("trefoil", "figure_eight"):
    lp = load_knot(DATA / f"{name}.json").lin
    en = enumerate_dihedral(lp)
    print(f"{name}: {len(en.solutions)} solutions, {en.class_count} nontrivial classes")
    for cid, rho in enumerate(en.representations):
        lift = phi_n(rho, 2, 1)
        C = tau_equivariance(lift)
        print(f"  class {cid}: theta = {tuple(str(t) for t in en.representatives[cid])}"
              f"  metabelian {is_metabelian(rho)}  lift residual {lift.relation_residual:.1e}"
              f"  lift abelian {images_commute(lift)}  certificate found {C is not None}")
        # rho and iota(rho) give the same lift
        assert phi_n(involution_iota(rho), 2, 1).images == lift.images

# the lifted trefoil representation has image of order 3
rho = enumerate_dihedral(load_knot(DATA / "trefoil.json").lin).nontrivial[0]
print("order of the x1 image on the double cover:", matrix_order(phi_n(rho, 2, 1)["x1_0"], 12))

# an abelian representation of Sigma_3 that is not deck-equivariant
lp = load_knot(DATA / "trefoil.json").lin
S3 = lift_sigman(lp, 3)
signs = {"x1_0": 1, "x1_1": -1, "x1_2": -1, "x2_0": -1, "x2_1": 1, "x2_2": -1}
rep = Representation.from_mapping(S3, {k: s * ONE for k, s in signs.items()})
print("Sigma_3 sign representation: residual", rep.relation_residual,
      " intertwiner:", tau_equivariance(rep))
