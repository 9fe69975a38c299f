"""Shared fixtures, random lattice generators, and enumeration oracles."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

import minimage as mi
from minimage.core import canonical_sign

# One line per acceptance criterion, echoed after the run (see the
# pytest_terminal_summary hook below); populated by tests/test_acceptance.py.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.line(line)

# ---------------------------------------------------------------------------
# Frozen fixtures

HEX_2D = np.array([[1.0, -0.5], [0.0, np.sqrt(3.0) / 2.0]])
SKEW_2D = np.array([[1.0, -5.0], [0.0, 1.0]])          # columns (1,0), (-5,1)
FCC = np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]).T

# A 3D lattice whose successive minima are attained only by a vector triple
# with no all-obtuse signing (the product of its three pairwise inner
# products is positive, so no sign flips fix it).
NO_OBTUSE_SHORTEST_3D = np.array([
    [0.77965451, 0.57399889, -0.74925534],
    [0.21052717, 0.18402582, -0.16739624],
    [-0.02412731, -0.00314152, 0.04661637],
])

# A 3D lattice whose fully reduced basis (shortest, all pairwise inner
# products <= 0) still has a reach extent h = 1.0319 > 1: the plain 3^3
# image block returns a wrong distance for some pairs (witness gap 2.5e-5).
REDUCED_BUT_H_ABOVE_1 = np.array([
    [0.13125135, -0.35959709, -0.04705178],
    [0.09806472, -0.24771099, -0.06635602],
    [-0.17092042, 0.46656115, 0.07239761],
])


@pytest.fixture
def identity2():
    return mi.validate_basis(np.eye(2))


@pytest.fixture
def identity3():
    return mi.validate_basis(np.eye(3))


@pytest.fixture
def hexagonal2():
    return mi.validate_basis(HEX_2D)


@pytest.fixture
def fcc():
    return mi.validate_basis(FCC)


def basis_pool() -> list[mi.Basis]:
    """A small mixed bag of well-understood bases used by property tests."""
    return [
        mi.validate_basis(np.eye(2)),
        mi.validate_basis(HEX_2D),
        mi.validate_basis(SKEW_2D),
        mi.validate_basis(np.array([[2.0, 1.0], [0.0, 1.5]])),
        mi.validate_basis(np.eye(3)),
        mi.validate_basis(FCC),
        mi.cell_params_to_basis(2, 3, 4, 80, 95, 100),
        mi.cell_params_to_basis(1, 1.1, 1.2, 100, 95, 98),
    ]


# ---------------------------------------------------------------------------
# Random generators (all deterministic through the caller's rng)

def random_cond_basis(rng, n: int, cond: float) -> mi.Basis:
    """Random basis with prescribed 2-norm condition number."""
    q1, _ = np.linalg.qr(rng.normal(size=(n, n)))
    q2, _ = np.linalg.qr(rng.normal(size=(n, n)))
    s = np.geomspace(1.0, 1.0 / cond, n)
    return mi.validate_basis(q1 @ np.diag(s) @ q2 * rng.uniform(0.5, 2.0))


def random_unimodular(rng, n: int, steps: int = 6, kmax: int = 3) -> np.ndarray:
    u = np.eye(n, dtype=np.int64)
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        k = int(rng.integers(1, kmax + 1)) * (1 if rng.random() < 0.5 else -1)
        u[:, j] += k * u[:, i]
    if rng.random() < 0.5:
        perm = rng.permutation(n)
        u = u[:, perm]
    return u


def random_obtuse_2d(rng, distort: bool = False) -> mi.Basis:
    """Strictly obtuse tie-free 2D lattice, given by its reduced basis."""
    while True:
        blen = rng.uniform(1.0, 1.22)
        theta = np.radians(rng.uniform(93.0, 109.0))
        m = np.array([[1.0, blen * np.cos(theta)], [0.0, blen * np.sin(theta)]])
        b = mi.validate_basis(m)
        if not mi.is_reduced(b):
            continue
        if len(mi.relevant_vectors(b).vectors) != 3:
            continue
        if m[0, 1] > -0.02:
            continue
        break
    if distort:
        b = mi.validate_basis(b.matrix @ random_unimodular(rng, 2))
    return b


def random_obtuse_3d(rng, distort: bool = False) -> mi.Basis:
    """Strictly obtuse tie-free generic 3D lattice (its own reduced basis)."""
    while True:
        try:
            b = mi.cell_params_to_basis(
                rng.uniform(1.0, 1.08), rng.uniform(1.1, 1.18), rng.uniform(1.2, 1.3),
                rng.uniform(93.0, 106.0), rng.uniform(93.0, 106.0), rng.uniform(93.0, 106.0),
            )
        except mi.InvalidCellParameters:
            continue
        if not mi.is_reduced(b):
            continue
        if len(mi.relevant_vectors(b).vectors) != 7:
            continue
        g = b.matrix.T @ b.matrix
        nr = np.sqrt(np.diag(g))
        if max(g[i, j] / (nr[i] * nr[j])
               for i, j in itertools.combinations(range(3), 2)) > -0.02:
            continue
        break
    if distort:
        b = mi.validate_basis(b.matrix @ random_unimodular(rng, 3))
    return b


# ---------------------------------------------------------------------------
# Enumeration oracles (independent of the reduction / coset fast paths)

def enumerated_minima(matrix: np.ndarray, box: int) -> np.ndarray:
    """Successive minima of the lattice by greedy rank over a coefficient box."""
    n = matrix.shape[0]
    zs = np.array(list(itertools.product(range(-box, box + 1), repeat=n)))
    zs = zs[np.any(zs != 0, axis=1)]
    lens = np.linalg.norm(zs @ matrix.T, axis=1)
    order = np.argsort(lens, kind="stable")
    chosen: list[np.ndarray] = []
    vals: list[float] = []
    for idx in order:
        stack = np.array(chosen + [zs[idx]], dtype=float)
        if np.linalg.matrix_rank(stack) > len(chosen):
            chosen.append(zs[idx])
            vals.append(float(lens[idx]))
            if len(chosen) == n:
                break
    return np.array(vals)


# ---------------------------------------------------------------------------
# Domain key tables

def domain_keys_2d() -> set:
    return {((0, 1), (1, 0)), ((1, 0), (1, 1)), ((0, 1), (1, 1))}


def _vsum(*vs):
    return tuple(int(sum(x)) for x in zip(*vs))


def domain_table_3d_19() -> set:
    """The 19 spanning-vector sets often quoted for generic obtuse lattices."""
    a, b, c = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    d, e, f, g = _vsum(a, b), _vsum(a, c), _vsum(b, c), _vsum(a, b, c)
    sets = [
        (a, b, c), (a, b, e), (a, b, f), (a, b, g),
        (a, d, c), (a, d, e), (a, d, g), (a, f, c),
        (a, g, c), (a, g, e), (d, b, c), (d, b, f),
        (d, b, g), (e, b, c), (e, g, c), (e, f, c),
        (g, b, c), (g, b, f), (g, f, c),
    ]
    return {tuple(sorted(canonical_sign(v) for v in s)) for s in sets}


def domain_keys_3d_generic() -> set:
    """The 16 sets that actually satisfy the covering condition.

    The three dropped members of the 19-entry table have the shape
    (x, x+y, x+z); each places the relevant vector y+z at fractional
    coordinates (-2, 1, 1) of the cell, two layers out, and brute-force
    witness pairs show the 3^3 block then returns wrong distances.
    """
    a, b, c = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    d, e, f = _vsum(a, b), _vsum(a, c), _vsum(b, c)
    dropped = [(a, d, e), (b, d, f), (c, e, f)]
    keys = {tuple(sorted(canonical_sign(v) for v in s)) for s in dropped}
    return domain_table_3d_19() - keys
