"""Sweep the finite sector matrices over families and levels and print the
modular relation residuals."""

import argparse
import time

from cstorus.finrep import Convention, rep_matrices, verify_sl2z
from cstorus.roots import LieType, build_root_system

SWEEP = [("A", 1, 8), ("A", 2, 5), ("B", 2, 3), ("G", 2, 3)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--convention", choices=["lemma", "theorem"], default="lemma")
    args = ap.parse_args()
    conv = Convention.from_name(args.convention)
    start = time.monotonic()
    print(f"{'type':>5} {'k':>3} {'sector':>6} {'dim':>4} "
          f"{'S^4=Id':>10} {'braid':>10} {'unitary':>10}")
    for fam, rank, kmax in SWEEP:
        rs = build_root_system(LieType(fam, rank))
        for k in range(1, kmax + 1):
            for sector in (0, 1):
                m = rep_matrices(rs, k, sector, convention=conv)
                rep = verify_sl2z(m)
                flag = "" if rep.passed else "  FAIL"
                print(f"{fam}{rank:>4} {k:>3} {sector:>6} {m.dim:>4} "
                      f"{rep.residual_s4:>10.2e} {rep.residual_braid:>10.2e} "
                      f"{max(rep.residual_s_unitary, rep.residual_t_unitary):>10.2e}"
                      f"{flag}")
    print(f"elapsed: {time.monotonic() - start:.2f} s")


if __name__ == "__main__":
    main()
