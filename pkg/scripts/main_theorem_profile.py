"""Ext and local cohomology profile of E_{t+1} ⊕ E_{n-1}(d) with the structure-theorem clauses."""
import argparse
import sys

from ssideal.cohomology import (GradedHilbertFunction, approximation_presentation, ext_profile,
                                module_cohomology_profile, theorem_main1_check)
from ssideal.poly import PolynomialRing


def run(n: int, t: int, d: int) -> int:
    ring = PolynomialRing(n)
    pres = approximation_presentation(ring, t, d)
    prof = ext_profile(pres, n)
    for j in sorted(prof.ext):
        print(f"Ext^{j} = {prof.ext[j]}")
    lc = module_cohomology_profile(pres)
    for i in sorted(lc.per_index):
        print(f"H^{i} = {lc.describe(i)}")
    print(f"depth {lc.depth}, dim {lc.dim}")
    rep = theorem_main1_check(pres, t, GradedHilbertFunction.field())
    for c in rep.clauses:
        print(f"{'pass' if c.ok else 'FAIL'}  {c.check}")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--t", type=int, default=1)
    ap.add_argument("--d", type=int, default=0)
    a = ap.parse_args()
    sys.exit(run(a.n, a.t, a.d))
