"""Finite-difference radial eigenvalues against the closed form as the grid is refined.

Usage: python scripts/oracle_convergence.py [--theta 1] [--levels 4]
"""
import argparse
import math

from twistmoyal.radial_oracle import FDProblem, fd_eigenvalues, oracle_energy

KS = {"0": 0.0, "sqrt5": math.sqrt(5), "3sqrt2": 3 * math.sqrt(2)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theta", type=float, default=1.0)
    ap.add_argument("--levels", type=int, default=4)
    ap.add_argument("--n", type=int, default=0, help="radial quantum number")
    args = ap.parse_args()

    for label, k in KS.items():
        exact = oracle_energy(args.theta, k, args.n)
        print(f"k = {label}: exact E = {exact:.10f}")
        prev = None
        for level in range(args.levels):
            N = 250 * 2 ** level
            E = fd_eigenvalues(FDProblem(args.theta, k, N), args.n + 1)[args.n]
            err = abs(E - exact) / exact
            order = f"{math.log2(prev / err):.3f}" if prev else "-"
            print(f"  N = {N:>5}  E = {E:.10f}  rel err = {err:.3e}  order = {order}")
            prev = err


if __name__ == "__main__":
    main()
