"""Minimum-image distances, distance matrices, and cutoff neighbor lists.

Strategy: reduce the basis, re-express the points there, and minimize over
the symmetric block of translates whose per-axis layer counts come from
the reach extents of the reduced cell.  For almost every lattice the
extents give one layer per axis, i.e. the familiar 3^n block; rare
strongly anisotropic 3D lattices need an extra layer on one axis, and
sizing the block from the extents keeps the result exact there too.  The
witness image is mapped back through the unimodular transform so results
are stated in the caller's coordinates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import Basis, LatticeVector, unimodular_inverse, wrap_frac
from . import copies, reduction, voronoi

# Images within this relative window of the minimum count as ties; the one
# with the lexicographically smallest coefficient vector is reported.
TIE_REL = 1e-12


@dataclass(frozen=True, eq=False)
class PeriodicPointSet:
    """Points of the quotient torus, as wrapped fractional coordinates."""

    basis: Basis
    points: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if pts.ndim != 2 or pts.shape[1] != self.basis.dim:
            raise ValueError(
                f"points must have shape (N, {self.basis.dim}), got {pts.shape}"
            )
        pts = wrap_frac(pts)
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != len(pts):
                raise ValueError("labels and points must have the same length")
            object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class DistanceResult:
    """A quotient distance together with the witnessing lattice translate."""

    distance: float
    image: LatticeVector


def _offset_grid(layers) -> np.ndarray:
    ranges = [range(-m, m + 1) for m in layers]
    return np.array(list(itertools.product(*ranges)), dtype=np.int64)


def _reduced_search_block(b: Basis) -> tuple[reduction.ReducedBasis, np.ndarray]:
    """Reduced basis plus the translate block that is exact for its cell."""
    red = reduction.reduce(b)
    h = voronoi.frac_extents(voronoi.voronoi_cell(red.basis), red.basis)
    layers = [copies.ceil_snapped(float(x)) for x in h]
    return red, _offset_grid(layers)


def _pick_image(dd: np.ndarray, images: np.ndarray) -> tuple[int, tuple[int, ...]]:
    """Index and coefficients of the minimal image, ties broken lexically."""
    dmin = float(dd.min())
    window = dmin * (1.0 + 2.0 * TIE_REL)
    tied = np.flatnonzero(dd <= window)
    best = min(tied, key=lambda t: tuple(images[t]))
    return int(best), tuple(int(x) for x in images[best])


def min_image_distance(b: Basis, p1, p2) -> DistanceResult:
    """Exact quotient distance between two fractional points.

    Arbitrary fractional inputs are accepted and wrapped internally.  The
    reported image t satisfies distance = |B (p2 + t - p1)| and is minimal
    over the searched block; exact ties return the lexicographically
    smallest coefficient vector.
    """
    red, t = _reduced_search_block(b)
    rm = red.basis.matrix
    u = red.transform
    uinv = unimodular_inverse(u)
    f1 = uinv @ np.asarray(p1, dtype=float)
    f2 = uinv @ np.asarray(p2, dtype=float)
    w1 = np.floor(f1).astype(np.int64)
    w2 = np.floor(f2).astype(np.int64)
    d1 = f1 - w1
    d2 = f2 - w2
    disp = (d2 - d1)[None, :] + t
    dd = np.einsum("ij,ij->i", disp @ rm.T, disp @ rm.T)
    images = (t + (w1 - w2)[None, :]) @ u.T
    k, img = _pick_image(dd, images)
    return DistanceResult(distance=float(math.sqrt(dd[k])), image=LatticeVector(img))


def pairwise_distances(ps: PeriodicPointSet) -> np.ndarray:
    """Symmetric matrix of quotient distances between all point pairs."""
    red, t = _reduced_search_block(ps.basis)
    rm = red.basis.matrix
    uinv = unimodular_inverse(red.transform)
    fr = wrap_frac(ps.points @ uinv.T)
    shifts = t @ rm.T
    npts = len(fr)
    out = np.empty((npts, npts))
    cart = fr @ rm.T
    chunk = max(1, 4_000_000 // (npts * len(t) + 1))
    for start in range(0, npts, chunk):
        stop = min(npts, start + chunk)
        diff = (cart[None, start:stop, None, :] - cart[:, None, None, :]
                + shifts[None, None, :, :])
        out[:, start:stop] = np.sqrt((diff ** 2).sum(axis=-1)).min(axis=-1)
    np.fill_diagonal(out, 0.0)
    return out


def neighbors_within(ps: PeriodicPointSet, cutoff: float
                     ) -> list[tuple[int, int, LatticeVector, float]]:
    """All pairs (i <= j) and lattice images within the distance cutoff.

    Self pairs i == j are included for every nonzero image (both signs);
    the zero image of a point with itself is not a neighbor.  The search
    block is sized so no image within the cutoff can be missed:
    layers_k = ceil((cutoff + diam V) / width_k) with width_k the slab
    width of the reduced cell along dual axis k.
    """
    if not cutoff > 0:
        raise ValueError("cutoff must be positive")
    red = reduction.reduce(ps.basis)
    rm = red.basis.matrix
    u = red.transform
    uinv = unimodular_inverse(u)
    fred = ps.points @ uinv.T
    w = np.floor(fred).astype(np.int64)
    fr = fred - w

    diam = voronoi.voronoi_cell(red.basis).diameter()
    widths = 1.0 / np.linalg.norm(red.basis.inv, axis=1)
    layers = [math.ceil((cutoff + diam) / wd) for wd in widths]
    t = _offset_grid(layers)
    shifts = t @ rm.T

    hits: list[tuple[int, int, LatticeVector, float]] = []
    npts = len(fr)
    cart = fr @ rm.T
    for i in range(npts):
        for j in range(i, npts):
            d = np.linalg.norm(cart[j] - cart[i] + shifts, axis=1)
            for k in np.flatnonzero(d <= cutoff):
                img = u @ (t[k] + w[i] - w[j])
                if i == j and not img.any():
                    continue
                hits.append((i, j, LatticeVector(tuple(int(x) for x in img)),
                             float(d[k])))
    hits.sort(key=lambda h: (h[0], h[1], h[3], h[2].coeffs))
    return hits
