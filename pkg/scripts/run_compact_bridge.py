"""Compare the anti-invariant sector at shifted level k + h against the
compact modular data for the simply laced types."""

import argparse

from cstorus.compactcheck import compare_shifted
from cstorus.finrep import Convention
from cstorus.roots import LieType, build_root_system


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--convention", choices=["lemma", "theorem"], default="lemma")
    args = ap.parse_args()
    conv = Convention.from_name(args.convention)
    print(f"{'type':>5} {'k':>3} {'k+h':>4} {'dim':>4} {'resid S':>10} "
          f"{'resid T':>10} {'S phase':>16}")
    for fam, rank, kmax in [("A", 1, 6), ("A", 2, 3)]:
        rs = build_root_system(LieType(fam, rank))
        for k in range(1, kmax + 1):
            rep = compare_shifted(rs, k, convention=conv)
            phase = complex(*rep["snapped_S_phase"])
            flag = "" if rep["passed"] else "  FAIL"
            print(f"{fam}{rank:>4} {k:>3} {rep['shifted_level']:>4} "
                  f"{rep['dim']:>4} {rep['residual_S']:>10.2e} "
                  f"{rep['residual_T']:>10.2e} {phase!s:>16}{flag}")


if __name__ == "__main__":
    main()
