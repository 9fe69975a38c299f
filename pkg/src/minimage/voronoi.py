"""Voronoi-relevant vectors, the origin Voronoi cell, and its extents.

A lattice vector r is Voronoi relevant when the bisector plane between 0
and r carries a facet of the Voronoi cell V, which happens exactly when
+-r are the unique shortest members of their class of L/2L.  The cell
itself is assembled from the halfspaces {x : x . r <= |r|^2 / 2} and its
vertices are enumerated by brute-force intersection of n-subsets of facet
planes, which is cheap at the sizes that can occur here (at most 7 facet
pairs in 2D and 13 in 3D would only arise for larger classes; the actual
maxima are 3 and 7).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import Basis, LatticeVector, canonical_sign
from .errors import DegenerateCell
from . import reduction

# Coefficient search radius per coset class, in reduced coordinates.
COSET_BOX = 2
# Relative norm window treated as a tie; a tied class contributes faces of
# lower dimension, not facets, and is discarded whole.
TIE_REL = 1e-9
# Geometric tolerance, as a fraction of the cell diameter.
GEOM_REL = 1e-8


@dataclass(frozen=True, eq=False)
class RelevantVectorSet:
    """Voronoi-relevant vectors, stored once per +-pair.

    ``vectors`` holds the canonical representative of each pair (first
    nonzero coefficient positive) in the caller's basis coordinates;
    ``cartesians`` caches their Cartesian forms row by row.
    """

    vectors: tuple[LatticeVector, ...]
    cartesians: np.ndarray

    def __post_init__(self):
        c = np.array(self.cartesians, dtype=float, copy=True)
        c.flags.writeable = False
        object.__setattr__(self, "cartesians", c)

    @property
    def count(self) -> int:
        """Number of relevant vectors counting both signs."""
        return 2 * len(self.vectors)

    def coeff_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(v.coeffs for v in self.vectors)


@dataclass(frozen=True, eq=False)
class VoronoiCell:
    """The origin Voronoi cell as halfspaces plus enumerated vertices.

    ``normals`` has one row per halfspace (both signs of every relevant
    vector), ``offsets`` the matching |r|^2 / 2, and ``volume`` equals the
    covolume |det B| of the lattice.
    """

    normals: np.ndarray
    offsets: np.ndarray
    vertices: np.ndarray
    volume: float

    def __post_init__(self):
        for name in ("normals", "offsets", "vertices"):
            a = np.array(getattr(self, name), dtype=float, copy=True)
            a.flags.writeable = False
            object.__setattr__(self, name, a)

    @property
    def dim(self) -> int:
        return self.normals.shape[1]

    @property
    def halfspaces(self) -> list[tuple[np.ndarray, float]]:
        return [(self.normals[i], float(self.offsets[i]))
                for i in range(len(self.offsets))]

    def diameter(self) -> float:
        return 2.0 * float(np.linalg.norm(self.vertices, axis=1).max())


def relevant_vectors(b: Basis) -> RelevantVectorSet:
    """Compute the Voronoi-relevant vectors of the lattice of ``b``.

    The basis is reduced internally; for each nonzero class c of L/2L the
    norm |B(2z + c)| is minimized over z in [-2, 2]^n.  A class whose
    minimum is attained by more than one +-pair (within TIE_REL) is tied
    and contributes no relevant vectors.
    """
    red = reduction.reduce(b)
    rm = red.basis.matrix
    u = red.transform
    n = b.dim
    zgrid = np.array(list(itertools.product(range(-COSET_BOX, COSET_BOX + 1), repeat=n)),
                     dtype=np.int64)
    found = []
    for cls in itertools.product((0, 1), repeat=n):
        if not any(cls):
            continue
        ys = 2 * zgrid + np.array(cls, dtype=np.int64)
        norms = np.linalg.norm(ys @ rm.T, axis=1)
        tied = ys[norms <= norms.min() * (1.0 + TIE_REL)]
        reps = {canonical_sign(row) for row in tied}
        if len(reps) != 1:
            continue
        y = np.array(reps.pop(), dtype=np.int64)
        found.append(canonical_sign(u @ y))
    found.sort(key=lambda t: (float(np.linalg.norm(b.matrix @ np.asarray(t, float))), t))
    carts = np.array([b.matrix @ np.asarray(t, float) for t in found])
    return RelevantVectorSet(vectors=tuple(LatticeVector(t) for t in found),
                             cartesians=carts)


def voronoi_cell(b: Basis) -> VoronoiCell:
    """Construct the origin Voronoi cell of the lattice of ``b``.

    Vertices come from intersecting all n-subsets of facet planes and
    keeping the points feasible for every halfspace; the volume is the sum
    over facets of the pyramid volumes to the origin.
    """
    rel = relevant_vectors(b)
    n = b.dim
    normals = np.vstack([rel.cartesians, -rel.cartesians])
    nnorm = np.linalg.norm(normals, axis=1)
    offsets = 0.5 * nnorm ** 2
    tol_len = GEOM_REL * b.diameter()

    combos = np.array(list(itertools.combinations(range(len(normals)), n)))
    mats = normals[combos]
    dets = np.linalg.det(mats)
    scale = np.prod(nnorm[combos], axis=1)
    ok = np.abs(dets) > 1e-10 * scale
    verts = np.linalg.solve(mats[ok], offsets[combos[ok]][..., None])[..., 0]

    feasible = np.all(verts @ normals.T <= offsets[None, :] + tol_len * nnorm[None, :],
                      axis=1)
    verts = verts[feasible]
    verts = _dedup(verts, tol_len)
    if len(verts) < n + 1:
        raise DegenerateCell(
            f"only {len(verts)} distinct vertices found (need at least {n + 1})"
        )

    volume = 0.0
    for i in range(len(normals)):
        r = normals[i]
        tight = verts[np.abs(verts @ r - offsets[i]) <= tol_len * nnorm[i]]
        if len(tight) < n:
            raise DegenerateCell("halfspace with too few tight vertices")
        volume += _facet_measure(tight, r) * (0.5 * nnorm[i]) / n
    return VoronoiCell(normals=normals, offsets=offsets, vertices=verts,
                       volume=float(volume))


def frac_extents(cell: VoronoiCell, frame: Basis) -> np.ndarray:
    """Half-extents of the Voronoi cell along the fractional axes of ``frame``.

    h_i = max over vertices x of |(frame^-1 x)_i|; central symmetry of the
    cell makes this the half-extent in both directions.
    """
    fracs = cell.vertices @ frame.inv.T
    return np.abs(fracs).max(axis=0)


def _dedup(points: np.ndarray, tol: float) -> np.ndarray:
    if len(points) == 0:
        return points
    order = np.lexsort(points.T[::-1])
    pts = points[order]
    kept: list[np.ndarray] = []
    for p in pts:
        if all(np.linalg.norm(p - q) > tol for q in kept):
            kept.append(p)
    return np.array(kept)


def _facet_measure(tight: np.ndarray, r: np.ndarray) -> float:
    """Length (2D) or area (3D) of a facet given its tight vertices."""
    rh = r / np.linalg.norm(r)
    if tight.shape[1] == 2:
        t = np.array([-rh[1], rh[0]])
        proj = tight @ t
        return float(proj.max() - proj.min())
    axis = int(np.argmin(np.abs(rh)))
    u = np.zeros(3)
    u[axis] = 1.0
    u = u - (u @ rh) * rh
    u /= np.linalg.norm(u)
    v = np.cross(rh, u)
    center = tight.mean(axis=0)
    q = tight - center
    ang = np.arctan2(q @ v, q @ u)
    ordered = q[np.argsort(ang, kind="stable")]
    area = 0.0
    for i in range(len(ordered)):
        a = ordered[i]
        b2 = ordered[(i + 1) % len(ordered)]
        area += 0.5 * float(np.cross(a, b2) @ rh)
    return abs(area)
