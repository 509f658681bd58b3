"""Round-trip, Parseval and quasi-periodicity report for the lattice
transform on random Gaussian-polynomial inputs."""

import argparse
import json

from cstorus.roots import LieType, build_root_system
from cstorus.wgz import roundtrip_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--type", default="A")
    ap.add_argument("--rank", type=int, default=1)
    ap.add_argument("--level", type=int, default=2)
    ap.add_argument("--resolution", type=int, default=256)
    ap.add_argument("--box-radius", type=float, default=6.0)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rs = build_root_system(LieType(args.type, args.rank))
    rep = roundtrip_report(rs, args.level, args.resolution, args.box_radius,
                           trials=args.trials, seed=args.seed)
    print(json.dumps(rep, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
