"""Count how many fundamental domains admit the 3^n shortcut, per lattice.

Draws random 3D lattices, reduces them, and enumerates the domains spanned
by relevant vectors for which three copies per axis give exact periodic
distances.  For mildly obtuse lattices the census is 16; stronger
anisotropy shrinks it (8 and 3 are common), and relevant-vector ties
(e.g. cubic symmetry) change the candidate pool entirely.

Usage: python scripts/domain_census.py [--samples 200] [--seed 7]
"""

import argparse
from collections import Counter

import numpy as np

from minimage import LatticeError, enumerate_ps, validate_basis


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    census: Counter[int] = Counter()
    done = 0
    while done < args.samples:
        try:
            lattice = validate_basis(rng.normal(size=(3, 3)))
            census[len(enumerate_ps(lattice))] += 1
        except LatticeError:
            continue
        done += 1

    print(f"{args.samples} random 3D lattices:")
    for count in sorted(census, reverse=True):
        bar = "#" * round(50 * census[count] / args.samples)
        print(f"  {count:>2} domains: {census[count]:>5}  {bar}")


if __name__ == "__main__":
    main()
