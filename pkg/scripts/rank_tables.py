"""Print the ranks of the cross-effect terms of lambda^r on a rank-p module.

Columns: rank of cr_i Lambda^r(P, ..., P) for i = 1..r, then the alternating
sum and the closed form (-1)^(r-1) C(p+r-1, r).
"""

import argparse
from math import comb

from lambdacubes.kops import alternating_rank
from lambdacubes.multilinear import cross_effect_ranks


def main():
    ap = argparse.ArgumentParser(description="cross-effect rank table")
    ap.add_argument("--max-p", type=int, default=6)
    ap.add_argument("--max-r", type=int, default=5)
    args = ap.parse_args()

    for r in range(1, args.max_r + 1):
        print(f"r = {r}")
        for p in range(1, args.max_p + 1):
            ranks = [cross_effect_ranks(r, i, (p,) * i)[1] for i in range(1, r + 1)]
            closed = (-1) ** (r - 1) * comb(p + r - 1, r)
            print(f"  p={p}  terms={ranks}  alternating={alternating_rank(p, r)}  closed={closed}")


if __name__ == "__main__":
    main()
