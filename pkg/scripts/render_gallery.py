"""Render SVG diagrams for a few instructive 2D cells.

Writes square, hexagonal, and sheared-cell figures showing the cell, its
copy block, the Voronoi cell, the relevant vectors, and the reach domain.

Usage: python scripts/render_gallery.py [--out-dir figures]
"""

import argparse
from pathlib import Path

import numpy as np

from minimage import render_2d, validate_basis


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="figures")
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    square = validate_basis(np.eye(2))
    hexagonal = validate_basis(np.array([[1.0, -0.5], [0.0, np.sqrt(3) / 2]]))
    sheared = validate_basis(np.array([[1.0, -5.0], [0.0, 1.0]]))

    for name, lattice, cell in [
        ("square", square, None),
        ("hexagonal", hexagonal, None),
        ("sheared_cell", square, sheared),
    ]:
        path = render_2d(lattice, cell, out / f"{name}.svg")
        print("wrote", path)


if __name__ == "__main__":
    main()
