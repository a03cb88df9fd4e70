"""Energy branches E+ and E- against p, with the large-p behaviour.

Usage: python scripts/reproduce_spectrum.py [--theta 1] [--pmax 40]
"""
import argparse

from twistmoyal import spectrum


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theta", type=float, default=1.0)
    ap.add_argument("--pmax", type=int, default=40)
    args = ap.parse_args()

    fs = spectrum.figure_series(args.theta, args.pmax)
    print(f"{'p':>3} {'k_p':>10} {'E_plus':>10} {'E_minus':>11}")
    for r in fs.rows:
        print(f"{r.p:>3} {r.k_p:>10.6f} {r.E_plus:>10.6f} {r.E_minus:>11.6f}")
    limit = float(spectrum.E_PLUS_ASYMPTOTE) * args.theta
    print(f"\nE_plus decreasing: {fs.e_plus_decreasing}; limit 21/8 theta = {limit:.6f}; "
          f"gap at p={args.pmax}: {fs.rows[-1].E_plus - limit:.3e}")
    print(f"E_minus tail slope (p in [10, 20]): {fs.e_minus_tail_slope:.6f} theta")


if __name__ == "__main__":
    main()
