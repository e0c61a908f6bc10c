"""
The trefoil from its Seifert data
=================================

Build the Lin presentation of the trefoil knot group from a Seifert matrix,
read off the Alexander polynomial, and compute the homology of its cyclic
branched covers.
"""

from pathlib import Path

from sl2slice.exactlin import alexander_polynomial, branched_cover_homology, cyclic_cover_homology
from sl2slice.knotdata import load_knot
from sl2slice.presentation import knot_group, lift_sigman

DATA = Path(__file__).parent / "data"

# the knot data file holds Q, the gluing matrix T and the relation words
lp = load_knot(DATA / "trefoil.json").lin
print("Seifert matrix Q =", lp.seifert_Q.tolist())
print("V =", lp.V.tolist(), " U =", lp.U.tolist())

# one generator per spine curve plus a meridian mu
G = knot_group(lp)
for r in G.relators:
    print("  relator:", G.format(r))

# Delta(t) = det(tU - V); Delta(-1) is the order of H_1 of the double cover
delta = alexander_polynomial(lp.V, lp.U)
print("Delta(t) =", delta, "  Delta(-1) =", delta(-1), "  Delta(1) =", delta(1))

# the n-fold branched cover is presented by a block circulant matrix
for n in range(2, 7):
    print(f"H_1(Sigma_{n}) = {branched_cover_homology(lp.V, lp.U, n)}"
          f"    H_1(C_{n}) = {cyclic_cover_homology(lp.V, lp.U, n)}")

# the lifted presentation has 2gn generators, permuted cyclically by the deck map
S3 = lift_sigman(lp, 3)
print("Sigma_3 generators:", ", ".join(S3.generator_labels))
print("first Sigma_3 relator:", S3.format(S3.relators[0]))
