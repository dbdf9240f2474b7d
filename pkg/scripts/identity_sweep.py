"""Closed-form identity sweep plus random Hilbert-numerator derivative checks."""
import argparse
import json
import sys
from dataclasses import replace

from ssideal.config import SweepConfig
from ssideal.invariants import derivative_sweep, identity_suite


def run(cfg: SweepConfig) -> int:
    ids = identity_suite(cfg.max_n, n_min=cfg.min_n)
    print(f"identities: {ids.cases} cases, {len(ids.mismatches)} mismatches {json.dumps(ids.checks)}")
    sw = derivative_sweep(cfg.random_cases, cfg.random_max_n, seed=cfg.seed)
    print(f"derivatives: {sw.cases} cases, {len(sw.mismatches)} mismatches "
          f"by mode {json.dumps(sw.by_mode)} positives {json.dumps(sw.positives)}")
    for m in (ids.mismatches + sw.mismatches)[:10]:
        print("  mismatch", json.dumps(m))
    return 0 if ids.ok and sw.ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    ap.add_argument("--min-n", type=int, default=SweepConfig.min_n)
    ap.add_argument("--cases", type=int, default=SweepConfig.random_cases)
    ap.add_argument("--random-max-n", type=int, default=SweepConfig.random_max_n)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    a = ap.parse_args()
    cfg = replace(SweepConfig(), max_n=a.max_n, min_n=a.min_n, random_cases=a.cases,
                  random_max_n=a.random_max_n, seed=a.seed)
    sys.exit(run(cfg))
