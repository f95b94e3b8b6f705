"""Print the universal product polynomials P_r and Newton polynomials N_r."""

import argparse

from lambdacubes.symfunc import newton_poly, product_poly, verify_newton_multiplicativity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-r", type=int, default=4)
    ap.add_argument("--check", action="store_true", help="also verify N_r(P) = N_r(X) N_r(Y)")
    args = ap.parse_args()
    for r in range(1, args.max_r + 1):
        print(f"P_{r} = {product_poly(r)}")
        print(f"N_{r} = {newton_poly(r)}")
        if args.check:
            print(f"  multiplicative: {verify_newton_multiplicativity(r)}")


if __name__ == "__main__":
    main()
