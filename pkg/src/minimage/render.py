"""2D SVG diagrams: cell, Voronoi cell, relevant vectors, reach domain.

Fixed-viewport affine mapping, no text beyond a small legend; the figures
are test artifacts, not publication graphics.
"""

from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np

from .core import Basis
from .errors import UnsupportedDimension
from . import copies, voronoi

WIDTH = 720.0
MARGIN = 0.05


def render_2d(lattice: Basis, cell: Basis | None, out) -> Path:
    """Write an SVG showing the cell, its copies, V, relevant vectors, and
    the reach domain (cell + V Minkowski sum).  2D only."""
    if lattice.dim != 2:
        raise UnsupportedDimension("rendering is implemented for 2D only")
    if cell is None:
        cell = lattice
    counts = copies.copy_counts(cell, lattice)
    rel = voronoi.relevant_vectors(lattice)
    vc = voronoi.voronoi_cell(lattice)

    corners = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float) @ cell.matrix.T
    vverts = _angle_sorted(vc.vertices)
    domain = _hull(np.array([c + v for c in corners for v in vverts]))

    block = []
    for ij in itertools.product(*[range(-m, m + 1) for m in counts.layers]):
        shift = cell.matrix @ np.asarray(ij, dtype=float)
        block.append(corners + shift)

    pts = np.vstack([domain] + block)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = hi - lo
    lo = lo - MARGIN * span
    hi = hi + MARGIN * span
    scale = WIDTH / (hi[0] - lo[0])
    height = (hi[1] - lo[1]) * scale

    def xy(p):
        return f"{(p[0] - lo[0]) * scale:.2f},{(height - (p[1] - lo[1]) * scale):.2f}"

    def poly(points, style):
        return f'<polygon points="{" ".join(xy(p) for p in points)}" style="{style}"/>'

    latpts = _lattice_points(lattice, lo, hi)
    relset = {tuple(np.round(r, 9)) for r in rel.cartesians}
    relset |= {tuple(np.round(-r, 9)) for r in rel.cartesians}

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {WIDTH:.0f} {height:.0f}">',
        '<rect width="100%" height="100%" fill="white"/>',
        poly(domain, "fill:#9ecae1;fill-opacity:0.45;stroke:#3182bd;stroke-width:1.5"),
    ]
    for copy_corners in block:
        parts.append(poly(copy_corners, "fill:none;stroke:#999999;stroke-width:0.8"))
    parts.append(poly(corners, "fill:#08519c;fill-opacity:0.35;stroke:#08519c;stroke-width:1.5"))
    parts.append(poly(vverts, "fill:none;stroke:#d62728;stroke-width:1.5"))
    for p in latpts:
        parts.append(f'<circle cx="{xy(p).split(",")[0]}" cy="{xy(p).split(",")[1]}" '
                     'r="3" fill="#2ca02c"/>')
        if tuple(np.round(p, 9)) in relset:
            parts.append(f'<circle cx="{xy(p).split(",")[0]}" cy="{xy(p).split(",")[1]}" '
                         'r="7" fill="none" stroke="#d62728" stroke-width="1.5"/>')
    parts.append(
        '<text x="10" y="16" font-size="12" fill="#333">'
        'cell (dark blue), copies (gray), Voronoi cell (red), '
        'reach domain (light blue), lattice (green, relevant circled)</text>'
    )
    parts.append("</svg>")

    path = Path(out)
    path.write_text("\n".join(parts), encoding="utf-8")
    return path


def _angle_sorted(points: np.ndarray) -> np.ndarray:
    ang = np.arctan2(points[:, 1], points[:, 0])
    return points[np.argsort(ang, kind="stable")]


def _hull(points: np.ndarray) -> np.ndarray:
    """Convex hull in 2D by the monotone chain, counterclockwise."""
    pts = sorted(map(tuple, points))

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= 0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return np.array(lower[:-1] + upper[:-1])


def _lattice_points(lattice: Basis, lo: np.ndarray, hi: np.ndarray) -> list[np.ndarray]:
    corners = np.array(list(itertools.product(*zip(lo, hi))))
    fr = corners @ lattice.inv.T
    zmin = np.floor(fr.min(axis=0)).astype(int) - 1
    zmax = np.ceil(fr.max(axis=0)).astype(int) + 1
    out = []
    for ij in itertools.product(*[range(a, b + 1) for a, b in zip(zmin, zmax)]):
        p = lattice.matrix @ np.asarray(ij, dtype=float)
        if np.all(p >= lo - 1e-9) and np.all(p <= hi + 1e-9):
            out.append(p)
    return out
