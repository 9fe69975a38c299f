"""Lattice bases, coordinate transforms, and crystallographic cell ingestion.

Conventions used across the package:

- A basis is an (n, n) float matrix whose COLUMNS are the cell vectors
  v1, ..., vn, with n in {2, 3}.  The parallelepiped spanned by the columns
  is the unit cell; the lattice is the set of integer combinations of them.
- Fractional coordinates f and Cartesian coordinates x are related by
  x = M @ f and f = Minv @ x, where M is the basis matrix.
- Cell parameters (a, b, c, alpha, beta, gamma) follow the crystallographic
  convention: alpha = angle(v2, v3), beta = angle(v1, v3),
  gamma = angle(v1, v2), all angles in degrees.  v1 lies along +x and v2 in
  the xy-plane, so the constructed basis has positive determinant.

All value types are immutable after construction and every function here is
pure, so everything is safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InvalidCellParameters, SingularBasis, UnsupportedDimension

# Columns count as linearly independent when |det| exceeds this times the
# product of the column norms.
TOL_SINGULAR = 1e-10
# Relative tolerance for numerical identities (round trips, integrality).
TOL_NUM = 1e-9

# Plain ndarrays; the aliases only document intent in signatures.
FracPoint = np.ndarray
CartPoint = np.ndarray


def _readonly(a, dtype=float) -> np.ndarray:
    out = np.array(a, dtype=dtype, order="C", copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class Basis:
    """A lattice basis; columns of ``matrix`` span the unit cell.

    Construct through :func:`validate_basis` (or the ingestion helpers) so
    the independence invariant is checked and ``det`` is cached.
    """

    matrix: np.ndarray
    det: float

    def __post_init__(self):
        object.__setattr__(self, "matrix", _readonly(self.matrix))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def columns(self) -> tuple[np.ndarray, ...]:
        return tuple(self.matrix[:, i] for i in range(self.dim))

    @cached_property
    def inv(self) -> np.ndarray:
        return np.linalg.inv(self.matrix)

    def column_norms(self) -> np.ndarray:
        return np.linalg.norm(self.matrix, axis=0)

    def diameter(self) -> float:
        """Largest distance between two corners of the unit cell."""
        n = self.dim
        corners = np.array(np.meshgrid(*([[-1.0, 0.0, 1.0]] * n))).reshape(n, -1)
        return float(np.linalg.norm(self.matrix @ corners, axis=0).max())


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Pairwise inner products g_ij = v_i . v_j of a basis (length^2)."""

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _readonly(self.entries))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class LatticeVector:
    """A lattice point given by exact integer coefficients."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def cart(self, basis: Basis) -> np.ndarray:
        return basis.matrix @ np.asarray(self.coeffs, dtype=float)


def validate_basis(matrix) -> Basis:
    """Validate an (n, n) column matrix and return a :class:`Basis`.

    Negative determinants are accepted; orientation is preserved, never
    silently flipped.

    Raises
    ------
    UnsupportedDimension
        If the matrix is not square with n in {2, 3}.
    SingularBasis
        If the columns are numerically dependent or not finite.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 3):
        raise UnsupportedDimension(
            f"expected a square 2x2 or 3x3 column matrix, got shape {m.shape}"
        )
    if not np.all(np.isfinite(m)):
        raise SingularBasis("basis matrix contains non-finite entries")
    det = float(np.linalg.det(m))
    norm_prod = float(np.prod(np.linalg.norm(m, axis=0)))
    if det == 0.0 or abs(det) <= TOL_SINGULAR * norm_prod:
        raise SingularBasis(f"columns are numerically dependent (det = {det:g})")
    return Basis(matrix=m, det=det)


def cell_params_to_basis(a: float, b: float, c: float,
                         alpha: float, beta: float, gamma: float) -> Basis:
    """Build a 3D basis from cell lengths and angles (degrees).

    Standard setting: v1 along +x, v2 in the xy-plane with
    v1 . v2 = a b cos(gamma), v3 placed so all three pairwise angles match;
    the determinant is positive.

    Raises InvalidCellParameters when the inputs cannot define a cell of
    positive volume.
    """
    if not (a > 0 and b > 0 and c > 0):
        raise InvalidCellParameters("cell lengths must be positive")
    for name, ang in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        if not 0.0 < ang < 180.0:
            raise InvalidCellParameters(f"{name} must lie in (0, 180) degrees")
    ca = math.cos(math.radians(alpha))
    cb = math.cos(math.radians(beta))
    cg = math.cos(math.radians(gamma))
    sg = math.sin(math.radians(gamma))
    q = 1.0 - ca * ca - cb * cb - cg * cg + 2.0 * ca * cb * cg
    if q <= 0.0:
        raise InvalidCellParameters(
            f"angles ({alpha}, {beta}, {gamma}) give non-positive cell volume"
        )
    v1 = (a, 0.0, 0.0)
    v2 = (b * cg, b * sg, 0.0)
    v3 = (c * cb, c * (ca - cb * cg) / sg, c * math.sqrt(q) / sg)
    return validate_basis(np.column_stack([v1, v2, v3]))


def basis_to_cell_params(basis: Basis) -> tuple[float, float, float, float, float, float]:
    """Recover (a, b, c, alpha, beta, gamma) from a 3D basis via its Gram matrix."""
    if basis.dim != 3:
        raise UnsupportedDimension("cell parameters are defined for 3D bases only")
    g = gram_matrix(basis).entries
    a, b, c = (math.sqrt(g[i, i]) for i in range(3))
    alpha = math.degrees(math.acos(g[1, 2] / (b * c)))
    beta = math.degrees(math.acos(g[0, 2] / (a * c)))
    gamma = math.degrees(math.acos(g[0, 1] / (a * b)))
    return a, b, c, alpha, beta, gamma


def gram_matrix(basis: Basis) -> GramMatrix:
    g = basis.matrix.T @ basis.matrix
    return GramMatrix(entries=0.5 * (g + g.T))


def frac_to_cart(basis: Basis, frac) -> np.ndarray:
    """Map fractional to Cartesian coordinates; accepts (n,) or (N, n)."""
    return np.asarray(frac, dtype=float) @ basis.matrix.T


def cart_to_frac(basis: Basis, cart) -> np.ndarray:
    """Map Cartesian to fractional coordinates; accepts (n,) or (N, n)."""
    return np.asarray(cart, dtype=float) @ basis.inv.T


def wrap_frac(frac) -> np.ndarray:
    """Wrap fractional coordinates into [0, 1) componentwise."""
    w = np.asarray(frac, dtype=float) % 1.0
    # x % 1.0 rounds to exactly 1.0 for tiny negative x; fold that edge back.
    return np.where(w >= 1.0, 0.0, w)


def int_det(m) -> int:
    """Exact determinant of a small integer matrix."""
    a = [[int(x) for x in row] for row in np.asarray(m)]
    if len(a) == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))


def unimodular_inverse(u) -> np.ndarray:
    """Exact integer inverse of a unimodular integer matrix."""
    m = np.asarray(u)
    d = int_det(m)
    if abs(d) != 1:
        raise ValueError(f"matrix is not unimodular (det = {d})")
    a = [[int(x) for x in row] for row in m]
    if len(a) == 2:
        adj = np.array([[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]], dtype=np.int64)
    else:
        adj = np.empty((3, 3), dtype=np.int64)
        for i in range(3):
            for j in range(3):
                r = [k for k in range(3) if k != j]
                c = [k for k in range(3) if k != i]
                minor = a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
                adj[i, j] = minor if (i + j) % 2 == 0 else -minor
    return adj * d


def canonical_sign(coeffs) -> tuple[int, ...]:
    """Normalize an integer vector so its first nonzero entry is positive."""
    t = tuple(int(c) for c in coeffs)
    for x in t:
        if x != 0:
            return t if x > 0 else tuple(-y for y in t)
    return t
