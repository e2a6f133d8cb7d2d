"""Print the J table and alternating sums of the truncated Dirichlet shift.

    python scripts/dirichlet_table.py 12 --orders 5
"""
import argparse
import sys

from wcop import delta, j_table
from wcop.catalog import dirichlet
from wcop.scalars import fmt


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("atoms", type=int, nargs="?", default=12)
    p.add_argument("--orders", type=int, default=5)
    args = p.parse_args(argv)
    system = dirichlet(args.atoms)
    jt = j_table(system, args.orders)
    width = 8
    head = "".join(f"{k:>{width}}" for k in range(args.atoms))
    print(f"{'':10s}{head}")
    for n in range(args.orders + 1):
        print(f"J_{n:<8d}" + "".join(f"{fmt(v):>{width}}" for v in jt.J(n)))
    for n in range(1, args.orders + 1):
        print(f"Delta_{n:<4d}" + "".join(f"{fmt(v):>{width}}" for v in delta(jt, n)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
