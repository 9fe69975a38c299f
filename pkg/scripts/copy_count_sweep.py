"""Sweep the shear of a 2D cell and print how many copies it needs.

The cell (1,0), (-k,1) spans the square lattice for every integer k, but
its reach grows linearly with the shear: h1 = (k+1)/2, so the number of
cell copies needed for exact periodic distances grows as 2*ceil(h1)+1.

Usage: python scripts/copy_count_sweep.py [--max-shear 12]
"""

import argparse

import numpy as np

from minimage import copy_counts, validate_basis


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-shear", type=int, default=12)
    args = parser.parse_args()

    lattice = validate_basis(np.eye(2))
    print(f"{'shear':>5} {'h1':>7} {'h2':>5} {'layers':>8} {'total':>6}")
    for k in range(args.max_shear + 1):
        cell = validate_basis(np.array([[1.0, -float(k)], [0.0, 1.0]]))
        cc = copy_counts(cell, lattice)
        print(f"{k:>5} {cc.h[0]:>7.3f} {cc.h[1]:>5.3f} "
              f"{str(cc.layers):>8} {cc.total:>6}")


if __name__ == "__main__":
    main()
