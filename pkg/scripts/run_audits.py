"""Sweep seeded random systems through classify and tally the theorem audits.

    python scripts/run_audits.py --count 10000 --seed 7 --max-atoms 5
"""
import argparse
import sys
import time
from collections import Counter
from dataclasses import dataclass

from wcop import classify
from wcop.oracle import random_corpus


@dataclass(frozen=True)
class SweepConfig:
    count: int = 10_000
    seed: int = 7
    max_atoms: int = 5
    max_order: int = 3


def sweep(cfg: SweepConfig) -> tuple:
    applies, holds, findings = Counter(), Counter(), []
    for idx, system in enumerate(random_corpus(cfg.seed, cfg.count, cfg.max_atoms)):
        report = classify(system, K=cfg.max_order, alt_depth=(0, 1))
        for a in report.audits:
            applies[a.name] += a.applies
            holds[a.name] += bool(a.applies and a.holds)
        findings.extend((idx, a.name, a.detail) for a in report.findings)
    return applies, holds, findings


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--count", type=int, default=SweepConfig.count)
    p.add_argument("--seed", type=int, default=SweepConfig.seed)
    p.add_argument("--max-atoms", type=int, default=SweepConfig.max_atoms)
    args = p.parse_args(argv)
    cfg = SweepConfig(args.count, args.seed, args.max_atoms)
    t0 = time.perf_counter()
    applies, holds, findings = sweep(cfg)
    print(f"{cfg.count} systems (seed {cfg.seed}, N <= {cfg.max_atoms}) in {time.perf_counter() - t0:.1f}s")
    for name in sorted(applies):
        print(f"  {name:40s} applies {applies[name]:6d}  holds {holds[name]:6d}")
    for idx, name, detail in findings:
        print(f"THEOREM-VIOLATION system {idx}: {name}: {detail}")
    return 2 if findings else 0


if __name__ == "__main__":
    sys.exit(main())
