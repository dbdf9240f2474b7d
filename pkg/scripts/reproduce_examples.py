"""Verify every shipped fixture and write one JSON report per fixture."""
import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path

from ssideal.config import ReproduceConfig
from ssideal.cli import verify_path


def run(cfg: ReproduceConfig) -> int:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name in cfg.fixtures:
        start = time.perf_counter()
        rep = verify_path(cfg.fixture_dir / f"{name}.toml", kernel_tail=cfg.kernel_tail)
        out = cfg.out_dir / f"{name}.json"
        out.write_text(rep.to_json() + "\n", encoding="utf-8")
        failed = [c["check"] for c in rep.checks if c["status"] != "pass"]
        print(f"{name}: exit {rep.exit_code}, {len(rep.checks)} checks, "
              f"failed {failed or 'none'} [{time.perf_counter() - start:.2f} s] -> {out}")
        worst = max(worst, rep.exit_code)
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=ReproduceConfig.out_dir)
    ap.add_argument("--kernel-tail", choices=["Et1", "Et2"], default="Et2")
    ap.add_argument("fixtures", nargs="*")
    args = ap.parse_args()
    cfg = replace(ReproduceConfig(), out_dir=args.out_dir, kernel_tail=args.kernel_tail)
    if args.fixtures:
        cfg = replace(cfg, fixtures=tuple(args.fixtures))
    sys.exit(run(cfg))
