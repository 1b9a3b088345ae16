import numpy as np
import pytest

from oracles import det_laplace, elementary_symmetric_brute, real_eig_count_scan, vandermonde_brute
from typical_rank.errors import DimensionError, SingularError
from typical_rank.linalg import (
    det_scale,
    determinant,
    elementary_symmetric_matrix,
    inverse,
    kernel_vector,
    last_row_cofactors,
    perp_vector,
    real_eigenpairs,
)


# -- determinant ---------------------------------------------------------------


@pytest.mark.parametrize(
    "M, expected",
    [(np.eye(3), 1.0), ([[1, 2], [3, 4]], -2.0), ([[1, 2], [2, 4]], 0.0)],
)
def test_determinant_examples(M, expected):
    assert determinant(M) == pytest.approx(expected, abs=1e-14)


def test_determinant_non_square():
    with pytest.raises(DimensionError):
        determinant(np.ones((2, 3)))


def test_determinant_vs_laplace():
    rng = np.random.default_rng(0)
    for n in range(1, 7):
        A = rng.normal(size=(n, n))
        assert determinant(A) == pytest.approx(det_laplace(A), rel=1e-10)


def test_determinant_rejects_nan():
    with pytest.raises(ValueError):
        determinant([[1.0, np.nan], [0.0, 1.0]])


# -- inverse ---------------------------------------------------------------------


def test_inverse_examples():
    np.testing.assert_array_equal(inverse(np.eye(4)), np.eye(4))
    np.testing.assert_allclose(inverse(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))


def test_inverse_singular_carries_rcond():
    with pytest.raises(SingularError) as info:
        inverse([[1.0, 1.0], [1.0, 1.0]])
    assert info.value.rcond < 1e-15


def test_inverse_identity_residual():
    rng = np.random.default_rng(1)
    for n in range(1, 9):
        A = rng.normal(size=(n, n))
        np.testing.assert_allclose(A @ inverse(A), np.eye(n), atol=1e-10 * np.linalg.cond(A))


# -- perp vector -------------------------------------------------------------------


@pytest.mark.parametrize(
    "W, expected",
    [
        ([[1, 0, 0], [0, 1, 0]], [0, 0, 1]),
        ([[1, 2, 3], [4, 5, 6]], [-3, 6, -3]),
        ([[1, 2, 3], [1, 2, 3]], [0, 0, 0]),
    ],
)
def test_perp_vector_examples(W, expected):
    np.testing.assert_allclose(perp_vector(W), expected, atol=1e-12)


def test_perp_vector_shape_error():
    with pytest.raises(DimensionError):
        perp_vector(np.ones((3, 3)))


def test_perp_vector_orthogonal_random():
    rng = np.random.default_rng(2)
    for _ in range(200):
        n = int(rng.integers(2, 9))
        W = rng.normal(size=(n - 1, n))
        w = perp_vector(W)
        assert np.linalg.norm(W @ w) <= 1e-9 * np.linalg.norm(W) * np.linalg.norm(w)
        assert np.linalg.norm(w) > 0


def test_perp_vector_vanishes_on_rank_deficiency():
    rng = np.random.default_rng(3)
    for _ in range(200):
        n = int(rng.integers(3, 9))
        W = rng.normal(size=(n - 1, n))
        W[-1] = rng.normal(size=n - 2) @ W[:-1]
        w = perp_vector(W)
        assert np.linalg.norm(w) <= 1e-10 * np.linalg.norm(W) ** (n - 1)


# -- last-row cofactors ----------------------------------------------------------------


def test_last_row_cofactor_examples():
    np.testing.assert_allclose(last_row_cofactors(np.eye(2)), [0, 1])
    M = np.array([[1.0, 2.0], [3.0, 4.0]])
    psi = last_row_cofactors(M)
    np.testing.assert_allclose(psi, [-2, 1])
    np.testing.assert_allclose(M @ psi, [0, -2])
    S = np.ones((2, 2))
    psi = last_row_cofactors(S)
    np.testing.assert_allclose(psi, [-1, 1])
    np.testing.assert_allclose(S @ psi, [0, 0])


def test_adjugate_identity_random():
    rng = np.random.default_rng(4)
    for _ in range(200):
        n = int(rng.integers(2, 8))
        M = rng.normal(size=(n, n))
        psi = last_row_cofactors(M)
        e = np.zeros(n)
        e[-1] = det_laplace(M)
        scale = np.linalg.norm(M) ** (n - 1) * max(1.0, np.linalg.norm(M))
        assert np.linalg.norm(M @ psi - e) <= 1e-8 * scale


def test_cofactors_parallel_to_kernel():
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(200):
        n = int(rng.integers(2, 8))
        M = rng.normal(size=(n, n))
        M[int(rng.integers(n))] = 0.0
        k = int(rng.integers(n))
        others = [i for i in range(n) if i != k]
        M[k] = rng.normal(size=n - 1) @ M[others] if n > 1 else 0.0
        psi = last_row_cofactors(M)
        v, res = kernel_vector(M)
        if np.linalg.norm(psi) < 1e-12:
            continue
        cos = abs(psi @ v) / np.linalg.norm(psi)
        assert cos >= 1 - 1e-6
        checked += 1
    assert checked > 50


# -- kernel vector -----------------------------------------------------------------------


def test_kernel_vector_examples():
    v, res = kernel_vector(np.zeros((3, 3)))
    assert res == 0.0 and np.linalg.norm(v) == pytest.approx(1.0)
    assert np.array_equal(v, kernel_vector(np.zeros((3, 3)))[0])
    v, res = kernel_vector(np.ones((2, 2)))
    np.testing.assert_allclose(np.abs(v), [2**-0.5, 2**-0.5])
    assert v[0] * v[1] < 0 and res < 1e-15
    _, res = kernel_vector(np.eye(2))
    assert res == pytest.approx(1.0)


# -- real eigenpairs ---------------------------------------------------------------------


def test_real_eigenpairs_rotation_empty():
    assert real_eigenpairs([[0.0, -1.0], [1.0, 0.0]]) == []


def test_real_eigenpairs_diagonal():
    pairs = real_eigenpairs(np.diag([2.0, 3.0]))
    assert [lam for lam, _ in pairs] == pytest.approx([2.0, 3.0], abs=1e-12)
    np.testing.assert_allclose(np.abs(pairs[0][1]), [1, 0], atol=1e-10)
    np.testing.assert_allclose(np.abs(pairs[1][1]), [0, 1], atol=1e-10)


def test_real_eigenpairs_swap():
    pairs = real_eigenpairs([[0.0, 1.0], [1.0, 0.0]])
    lams = [lam for lam, _ in pairs]
    assert lams == pytest.approx([-1.0, 1.0], abs=1e-12)
    v_minus, v_plus = pairs[0][1], pairs[1][1]
    assert abs(v_plus @ np.array([1, 1]) / np.sqrt(2)) == pytest.approx(1.0, abs=1e-10)
    assert abs(v_minus @ np.array([1, -1]) / np.sqrt(2)) == pytest.approx(1.0, abs=1e-10)


def test_real_eigenpairs_random_vs_scan():
    rng = np.random.default_rng(6)
    tol = 1e-8
    for _ in range(200):
        n = int(rng.integers(1, 8))
        M = rng.normal(size=(n, n))
        pairs = real_eigenpairs(M, tol)
        nrm = np.linalg.norm(M)
        for lam, v in pairs:
            assert np.linalg.norm(M @ v - lam * v) <= tol * nrm
            assert abs(det_laplace(M - lam * np.eye(n))) <= tol * det_scale(M, lam)
        assert len(pairs) == real_eig_count_scan(M)


def test_real_eigenpairs_size_cap():
    with pytest.raises(DimensionError):
        real_eigenpairs(np.eye(33))


# -- elementary symmetric matrix ---------------------------------------------------------


def test_elementary_symmetric_examples():
    S = elementary_symmetric_matrix([3.0, 1.0])
    np.testing.assert_allclose(S, [[1, 1], [1, 3]])
    assert determinant(S) == pytest.approx(2.0)
    assert determinant(elementary_symmetric_matrix([0.7, 0.7])) == pytest.approx(0.0, abs=1e-15)


def test_elementary_symmetric_entries_brute():
    rng = np.random.default_rng(7)
    a = rng.normal(size=5)
    S = elementary_symmetric_matrix(a)
    for k in range(5):
        rest = np.delete(a, k)
        for i in range(5):
            assert S[i, k] == pytest.approx(elementary_symmetric_brute(rest, i), abs=1e-12)


def test_elementary_symmetric_det_is_vandermonde():
    rng = np.random.default_rng(8)
    for _ in range(200):
        n = int(rng.integers(1, 7))
        a = rng.normal(size=n) * 2
        d = determinant(elementary_symmetric_matrix(a))
        bound = np.prod([max(1.0, abs(a[i] - a[j])) for i in range(n) for j in range(i + 1, n)])
        assert abs(d - vandermonde_brute(a)) <= 1e-8 * bound


def _bordered(alpha, a, b, z):
    k = len(alpha)
    M = np.zeros((k + 1, k + 1))
    M[:k, :k] = np.diag(alpha) + z * np.eye(k)
    M[:k, k] = a
    M[k, :k] = b
    return M


def test_bordered_determinant_identity():
    # det [[diag(alpha)+zE, a], [b^T, 0]] = -(z^{k-1}, ..., 1) S_k (a*b)
    rng = np.random.default_rng(9)
    for _ in range(200):
        k = int(rng.integers(1, 7))
        alpha, a, b = rng.normal(size=(3, k))
        z = rng.normal()
        lhs = det_laplace(_bordered(alpha, a, b, z))
        zpow = z ** np.arange(k - 1, -1, -1)
        rhs = -zpow @ elementary_symmetric_matrix(alpha) @ (a * b)
        assert lhs == pytest.approx(rhs, rel=1e-8, abs=1e-10)


def test_bordered_determinant_forces_b_zero():
    # b -> (f(z_1), ..., f(z_k)) is linear; it is injective for distinct alpha, nonzero a
    rng = np.random.default_rng(10)
    for _ in range(200):
        k = int(rng.integers(1, 6))
        alpha = rng.normal(size=k)
        a = rng.normal(size=k)
        zs = rng.normal(size=k)
        K = np.array([[det_laplace(_bordered(alpha, a, e, z)) for e in np.eye(k)] for z in zs])
        assert np.linalg.matrix_rank(K) == k
        b = rng.normal(size=k)
        assert np.linalg.norm(K @ b) > 0
