"""Associator norm of random exact triples as the twist shrinks.

Prints the norm per decade and the fitted log-log slope for each triple.
Usage: python scripts/associator_scaling.py [--seed 7] [--triples 6]
"""
import argparse
from fractions import Fraction

import numpy as np

from twistmoyal.starprod import DeformationParams, associator
from twistmoyal.verify import random_polynomial


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--triples", type=int, default=6)
    ap.add_argument("--decades", type=int, default=4)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    exps = range(1, args.decades + 1)
    print("triple  " + "  ".join(f"|A| at 1e-{j:<2}" for j in exps) + "   slope")
    done = 0
    while done < args.triples:
        f, g, h = (random_polynomial(rng, 3, 3, min_degree=1) for _ in range(3))
        norms = [float(associator(f, g, h, DeformationParams(1, Fraction(1, 10 ** j), Fraction(1, 2 * 10 ** j))).norm())
                 for j in exps]
        if min(norms) == 0:
            continue
        slope = np.polyfit([-j for j in exps], np.log10(norms), 1)[0]
        print(f"{done:>6}  " + "  ".join(f"{n:>12.4e}" for n in norms) + f"   {slope:.4f}")
        done += 1


if __name__ == "__main__":
    main()
