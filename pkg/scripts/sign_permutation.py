"""Experiment: how lambda^r interacts with permuting the directions of a cube.

For each permutation sigma of the n directions we compare the symbol of
lambda^r(sigma . c) with the symbol of lambda^r(c) pushed through sigma, and
with its sign twist.  Symbols see only multilinearity, so a match is evidence
at that level and nothing more.
"""

import argparse
import random
from itertools import permutations

from lambdacubes.bincx import permute_directions
from lambdacubes.invariants import SymbolElement, symbol_of_sum
from lambdacubes.kops import lambda_cube
from lambdacubes.linalg import QQ
from lambdacubes.sampling import random_diagonal_cube


def permute_symbol(s: SymbolElement, sigma) -> SymbolElement:
    terms = {tuple(t[sigma[k]] for k in range(len(t))): v for t, v in s.terms.items()}
    return SymbolElement(s.n, s.field, terms)


def parity(sigma) -> int:
    inv = sum(1 for i in range(len(sigma)) for j in range(i) if sigma[j] > sigma[i])
    return -1 if inv % 2 else 1


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--rank", type=int, default=1)
    ap.add_argument("--max-r", type=int, default=3)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print("r  sigma      plain  twisted")
    for r in range(1, args.max_r + 1):
        for sigma in permutations(range(args.n)):
            plain = twisted = 0
            for _ in range(args.trials):
                c = random_diagonal_cube(rng, QQ, args.n, args.rank)
                lhs = symbol_of_sum(lambda_cube(permute_directions(c, sigma), r).terms)
                rhs = permute_symbol(symbol_of_sum(lambda_cube(c, r).terms), sigma)
                plain += lhs == rhs
                twisted += lhs == parity(sigma) * rhs
            print(f"{r}  {str(sigma):9}  {plain:>2}/{args.trials}  {twisted:>2}/{args.trials}")


if __name__ == "__main__":
    main()
