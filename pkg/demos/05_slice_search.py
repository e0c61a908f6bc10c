"""
Searching the trace-zero slice
==============================

Two-bridge knots have only metabelian representations with tr rho(mu) = 0,
and those are the fixed points of the sign twist iota.  A numerical search on
a genus-2 example finds representations off that fixed set: rho and
iota(rho) have different characters but the same lift to the double cover.
"""

from pathlib import Path

from sl2slice.knotdata import load_knot
from sl2slice.reps import slice_search, two_to_one_probe

DATA = Path(__file__).parent / "data"

for name, seed in [("trefoil", 0), ("genus2", 1)]:
    lp = load_knot(DATA / f"{name}.json").lin
    found = slice_search(lp, attempts=20, seed=seed)
    print(f"{name}: {len(found)} irreducible slice characters found")
    for rho in found:
        w = two_to_one_probe(rho)
        kind = "fixed point " if w.fixed_point else "free orbit  "
        print(f"  {kind} metabelian {str(w.metabelian):<5}  |chi - chi o iota| = {w.character_gap:.3f}"
              f"  lift difference {w.lift_gap:.1e}  residual {rho.relation_residual:.1e}")
