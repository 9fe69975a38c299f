import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import minimage as mi
from minimage.core import canonical_sign, int_det, unimodular_inverse

from conftest import basis_pool


def test_identity_basis():
    b = mi.validate_basis(np.eye(2))
    assert b.dim == 2
    assert b.det == pytest.approx(1.0)


def test_collinear_columns_rejected():
    with pytest.raises(mi.SingularBasis):
        mi.validate_basis(np.array([[1.0, 2.0], [0.0, 0.0]]))


def test_scaled_identity_det():
    b = mi.validate_basis(2.0 * np.eye(3))
    assert b.det == pytest.approx(8.0)


def test_negative_determinant_is_kept():
    m = np.array([[0.0, 1.0], [1.0, 0.0]])
    b = mi.validate_basis(m)
    assert b.det == pytest.approx(-1.0)
    assert np.array_equal(b.matrix, m)


@pytest.mark.parametrize("shape", [(1, 1), (4, 4), (2, 3)])
def test_unsupported_dimensions(shape):
    with pytest.raises(mi.UnsupportedDimension):
        mi.validate_basis(np.ones(shape))


def test_non_finite_rejected():
    with pytest.raises(mi.SingularBasis):
        mi.validate_basis(np.array([[1.0, np.nan], [0.0, 1.0]]))


def test_basis_matrix_is_immutable():
    b = mi.validate_basis(np.eye(2))
    with pytest.raises(ValueError):
        b.matrix[0, 0] = 5.0


# --- cell parameter ingestion ---------------------------------------------


def test_cubic_cell_is_identity():
    b = mi.cell_params_to_basis(1, 1, 1, 90, 90, 90)
    assert np.allclose(b.matrix, np.eye(3), atol=1e-12)


def test_hexagonal_cell_vectors():
    b = mi.cell_params_to_basis(1, 1, 1, 90, 90, 120)
    v1, v2, v3 = b.columns
    assert np.allclose(v1, [1, 0, 0], atol=1e-12)
    assert np.allclose(v2, [-0.5, math.sqrt(3) / 2, 0], atol=1e-12)
    assert np.allclose(v3, [0, 0, 1], atol=1e-12)
    a, bb, c, al, be, ga = mi.basis_to_cell_params(b)
    assert (al, be, ga) == pytest.approx((90, 90, 120), abs=1e-12)


def test_cell_params_round_trip():
    params = (2, 3, 4, 80, 95, 100)
    b = mi.cell_params_to_basis(*params)
    assert b.det > 0
    back = mi.basis_to_cell_params(b)
    assert back == pytest.approx(params, rel=1e-9)


@pytest.mark.parametrize("params", [
    (1, 1, 1, 170, 170, 170),   # no positive volume
    (0, 1, 1, 90, 90, 90),
    (1, 1, 1, 90, 180, 90),
    (1, 1, 1, -10, 90, 90),
])
def test_invalid_cell_parameters(params):
    with pytest.raises(mi.InvalidCellParameters):
        mi.cell_params_to_basis(*params)


# --- coordinate transforms --------------------------------------------------


def test_frac_to_cart_identity():
    b = mi.validate_basis(np.eye(2))
    assert np.allclose(mi.frac_to_cart(b, [0.25, 0.75]), [0.25, 0.75])


def test_frac_to_cart_column_sum():
    b = mi.validate_basis(np.array([[1.0, 1.0], [0.0, 1.0]]))  # columns (1,0),(1,1)
    assert np.allclose(mi.frac_to_cart(b, [1.0, 1.0]), [2.0, 1.0])


def test_transforms_accept_batches():
    b = mi.cell_params_to_basis(2, 3, 4, 80, 95, 100)
    pts = np.array([[0.1, 0.2, 0.3], [0.9, 0.8, 0.7]])
    out = mi.cart_to_frac(b, mi.frac_to_cart(b, pts))
    assert np.allclose(out, pts, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    idx=st.integers(min_value=0, max_value=7),
    coords=st.lists(st.floats(-5, 5, allow_nan=False), min_size=3, max_size=3),
)
def test_round_trip_property(idx, coords):
    b = basis_pool()[idx]
    p = np.array(coords[: b.dim])
    back = mi.cart_to_frac(b, mi.frac_to_cart(b, p))
    assert np.allclose(back, p, rtol=1e-12, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=2, max_size=3))
def test_wrap_frac_lands_in_unit_box(coords):
    w = mi.wrap_frac(np.array(coords))
    assert np.all(w >= 0.0) and np.all(w < 1.0)
    assert np.allclose(np.round(np.array(coords) - w), np.array(coords) - w, atol=1e-6)


def test_wrap_frac_edges():
    assert mi.wrap_frac(np.array([1.0, -1e-20, 2.75]))[0] == 0.0
    w = mi.wrap_frac(np.array([-1e-20]))
    assert 0.0 <= w[0] < 1.0
    assert mi.wrap_frac(np.array([2.75]))[0] == pytest.approx(0.75)


# --- gram matrix and integer helpers ----------------------------------------


def test_gram_matrices_positive_definite():
    for b in basis_pool():
        g = mi.gram_matrix(b).entries
        assert np.array_equal(g, g.T)
        assert np.all(np.linalg.eigvalsh(g) > 0)


def test_lattice_vector_cart():
    b = mi.validate_basis(np.array([[1.0, -5.0], [0.0, 1.0]]))
    v = mi.LatticeVector((np.int64(2), np.int64(1)))
    assert all(isinstance(c, int) for c in v.coeffs)
    assert np.allclose(v.cart(b), [2 - 5, 1])


def test_int_det_matches_float_det():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(2, 4))
        m = rng.integers(-7, 8, size=(n, n))
        assert int_det(m) == pytest.approx(np.linalg.det(m))


def test_unimodular_inverse_exact():
    rng = np.random.default_rng(4)
    from conftest import random_unimodular

    for _ in range(50):
        n = int(rng.integers(2, 4))
        u = random_unimodular(rng, n)
        uinv = unimodular_inverse(u)
        assert np.array_equal(u @ uinv, np.eye(n, dtype=np.int64))
    with pytest.raises(ValueError):
        unimodular_inverse(np.array([[2, 0], [0, 1]]))


@pytest.mark.parametrize("vec,expected", [
    ((0, -2, 1), (0, 2, -1)),
    ((3, -1), (3, -1)),
    ((0, 0), (0, 0)),
    ((-1, 0, 5), (1, 0, -5)),
])
def test_canonical_sign(vec, expected):
    assert canonical_sign(vec) == expected
