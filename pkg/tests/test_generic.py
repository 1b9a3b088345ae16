import numpy as np
import pytest

from oracles import det_laplace, quaternion_det
from typical_rank.errors import DimensionError, NoDecompositionAtP, NotGenericError, RankDeficientError
from typical_rank.generic import (
    ContractionY,
    HypersurfacePoint,
    Outcome,
    Verdict,
    assemble_b,
    classify,
    contract,
    decompose_generic,
    decompose_x_of_y,
    direction,
    eval_m,
    sample_points,
)
from typical_rank.linalg import last_row_cofactors
from typical_rank.special import boundary_example, boundary_example_det, quaternion_pair
from typical_rank.tensor import (
    Decomposition,
    Tensor3,
    build_x_of_y,
    gl_action,
    random_gaussian,
    reconstruct,
    relative_residual,
    slice_stack,
)


def gaussian_y(seed, n=3, ell=2):
    return ContractionY(tuple(np.random.default_rng(seed).normal(size=(ell, n, n))))


def point_invariants_hold(Y, pt, tol=1e-8):
    M = eval_m(pt.a, Y)
    nrm = np.linalg.norm(M)
    ok_vec = np.linalg.norm(M @ pt.vector) <= tol * nrm
    ok_det = abs(det_laplace(M)) <= tol * max(1.0, nrm) ** Y.n
    return ok_vec and ok_det and np.linalg.norm(pt.vector) == pytest.approx(1.0)


# -- contraction and pencil ---------------------------------------------------------------


def test_contract_round_trip():
    Y = gaussian_y(0)
    Z = contract(build_x_of_y(Y.mats))
    for a, b in zip(Z.mats, Y.mats):
        np.testing.assert_allclose(a, b, atol=1e-14)
    np.testing.assert_array_equal(Z.flattening, np.eye(6))


def test_contract_of_equivalent_tensor():
    # X = (H-block slices; Z) contracts to Z H^-1 whatever H is
    rng = np.random.default_rng(1)
    H = rng.normal(size=(6, 6))
    Xm = rng.normal(size=(3, 6))
    X = Tensor3.from_slices([H[:3], H[3:], Xm])
    Y = contract(X)
    np.testing.assert_allclose(np.hstack(Y.mats) @ H, Xm, atol=1e-10)


def test_contract_equal_slices_not_generic():
    rng = np.random.default_rng(2)
    A = rng.normal(size=(3, 6))
    with pytest.raises(NotGenericError):
        contract(Tensor3.from_slices([A, A, rng.normal(size=(3, 6))]))


def test_contract_wrong_dims():
    with pytest.raises(DimensionError):
        contract(random_gaussian((3, 5, 3), seed=0))


def test_eval_m_examples():
    Y = gaussian_y(3)
    np.testing.assert_array_equal(eval_m([0, 0, 1], Y), -np.eye(3))
    np.testing.assert_array_equal(eval_m([1, 0, 0], Y), Y.mats[0])
    with pytest.raises(DimensionError):
        eval_m([1, 0], Y)


def test_quaternion_determinant_identity():
    Q = quaternion_pair()
    rng = np.random.default_rng(4)
    for a in rng.normal(size=(100, 3)):
        assert det_laplace(eval_m(a, Q)) == pytest.approx(quaternion_det(*a), rel=1e-12)


def test_direction_is_unit_and_reproducible():
    d = direction(5, 17, 3)
    assert np.linalg.norm(d) == pytest.approx(1.0)
    np.testing.assert_array_equal(d, direction(5, 17, 3))
    assert not np.array_equal(d, direction(5, 18, 3))


# -- hypersurface points --------------------------------------------------------------------


def test_sample_points_odd_n():
    Y = gaussian_y(5)
    for idx in range(50):
        assert len(sample_points(Y, 1, seed=1, start=idx)) >= 1


def test_sample_points_rotation_pair_empty():
    R = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert sample_points([R, R], 100, seed=0) == []


def test_sample_points_zero_y():
    pts = sample_points([np.zeros((2, 2))] * 2, 20, seed=0)
    assert len(pts) == 20
    assert all(pt.eigenvalue == 0.0 for pt in pts)


def test_sample_points_order_and_prefix():
    Y = gaussian_y(6)
    pts = sample_points(Y, 30, seed=2)
    joined = sample_points(Y, 10, seed=2) + sample_points(Y, 20, seed=2, start=10)
    assert [(p.eigenvalue, tuple(p.direction)) for p in joined] == [
        (p.eigenvalue, tuple(p.direction)) for p in pts
    ]
    for a, b in zip(pts, pts[1:]):
        if np.array_equal(a.direction, b.direction):
            assert a.eigenvalue < b.eigenvalue


def test_points_satisfy_invariants():
    for seed in range(20):
        Y = gaussian_y(seed, n=int(3 + seed % 3))
        for pt in sample_points(Y, 10, seed=seed):
            assert point_invariants_hold(Y, pt)


def test_cofactors_parallel_at_points():
    checked = 0
    for seed in range(20):
        Y = gaussian_y(100 + seed, n=4)
        for pt in sample_points(Y, 5, seed=seed):
            psi = last_row_cofactors(eval_m(pt.a, Y))
            npsi = np.linalg.norm(psi)
            if npsi < 1e-10:
                continue
            assert abs(psi @ pt.vector) / npsi >= 1 - 1e-6
            checked += 1
    assert checked > 20


# -- classification -----------------------------------------------------------------------------


def test_classify_quaternion_no_real_point():
    c = classify(quaternion_pair(), 1000, seed=0)
    assert c.verdict is Verdict.NO_REAL_POINT
    assert c.directions_tried == 1000 and c.probabilistic
    assert "probabilistic" in c.describe()


def test_classify_gaussian_odd_n_negative_witness():
    for seed in range(20):
        Y = gaussian_y(seed)
        c = classify(Y, 50, seed=seed)
        assert c.verdict is Verdict.NEGATIVE_WITNESS
        assert not c.probabilistic
        assert det_laplace(eval_m(c.witness, Y)) < 0


def test_classify_zero_even_n_boundary():
    c = classify([np.zeros((2, 2))] * 2, 30, seed=0)
    assert c.verdict is Verdict.NO_NEGATIVE_WITNESS
    assert c.points > 0


def test_classify_boundary_example_has_no_negative_value():
    c = classify(boundary_example(), 200, seed=0)
    assert c.verdict is not Verdict.NEGATIVE_WITNESS


def test_boundary_example_determinant_identity():
    A = boundary_example()
    rng = np.random.default_rng(7)
    for a in rng.normal(size=(100, 3)):
        ref = boundary_example_det(*a)
        assert abs(det_laplace(eval_m(a, A)) - ref) <= 1e-9 * abs(ref)


# -- B assembly -------------------------------------------------------------------------------------


def _pt(d, v):
    return HypersurfacePoint(np.asarray(d, float), 0.0, np.asarray(v, float), 0.0, 0.0)


def test_assemble_b_duplicates_rank_deficient():
    pts = [_pt([1.0, 0.0], [1.0, 0.0])] * 4
    with pytest.raises(RankDeficientError) as info:
        assemble_b(pts, 4)
    assert info.value.rank == 1


def test_assemble_b_too_few_points():
    with pytest.raises(RankDeficientError):
        assemble_b([_pt([1.0, 0.0], [1.0, 0.0])], 4)


def test_assemble_b_hand_built():
    r = 2**-0.5
    e1, e2 = [1.0, 0.0], [0.0, 1.0]
    pts = [_pt([1, 0], e1), _pt([0, 1], e2), _pt([r, r], e1), _pt([r, -r], e2)]
    B, chosen = assemble_b(pts, 4)
    expected = np.array(
        [[1, 0, r, 0], [0, 0, 0, r], [0, 0, r, 0], [0, 1, 0, -r]],
    )
    np.testing.assert_allclose(B, expected, atol=1e-15)
    assert det_laplace(B) == pytest.approx(-0.5)
    assert chosen == pts


# -- decompositions -----------------------------------------------------------------------------------


def test_decompose_x_of_y_gaussian():
    for seed in range(30):
        Y = gaussian_y(seed)
        D = decompose_x_of_y(Y, seed=seed)
        T = build_x_of_y(Y.mats)
        assert D.rank == 6
        assert relative_residual(T, D) <= 1e-8
        np.testing.assert_allclose(slice_stack(reconstruct(D), 2), np.eye(6), atol=1e-8)
        for t in D.terms:
            M = eval_m(t.w, Y)
            assert np.linalg.norm(M @ t.u) <= 1e-8 * np.linalg.norm(M)


def test_decompose_x_of_y_quaternion_fails():
    with pytest.raises(NoDecompositionAtP) as info:
        decompose_x_of_y(quaternion_pair(), budget=200)
    assert info.value.classification.verdict is Verdict.NO_REAL_POINT


def test_monotone_budget():
    # p = 8: a budget of 8p or more shares every harvesting round with larger ones
    for seed in range(10):
        Y = gaussian_y(200 + seed, n=4)
        succeeded = False
        for budget in (16, 32, 64, 256):
            try:
                decompose_x_of_y(Y, budget=budget, seed=seed)
                succeeded = True
            except NoDecompositionAtP:
                assert not succeeded
        assert succeeded
        base = decompose_x_of_y(Y, budget=64, seed=seed)
        big = decompose_x_of_y(Y, budget=512, seed=seed)
        for a, b in zip(base.terms, big.terms):
            np.testing.assert_array_equal(a.v, b.v)


@pytest.mark.parametrize("mn", [(3, 3), (3, 4), (4, 4), (3, 5)])
def test_decompose_generic_gaussian(mn):
    m, n = mn
    for seed in range(5):
        T = random_gaussian((n, (m - 1) * n, m), seed=seed)
        res = decompose_generic(T, seed=seed)
        if (m, n) in ((3, 3), (3, 5)):
            assert res.outcome is Outcome.RANK_P
        if res.outcome is Outcome.RANK_P:
            assert res.decomposition.rank == (m - 1) * n
            assert res.residual <= 1e-8
            assert relative_residual(T, res.decomposition) == pytest.approx(res.residual)


def test_decompose_generic_planted():
    rng = np.random.default_rng(8)
    for _ in range(10):
        D = Decomposition.from_factors(rng.normal(size=(3, 6)), rng.normal(size=(6, 6)), rng.normal(size=(3, 6)))
        T = reconstruct(D)
        res = decompose_generic(T)
        assert res.outcome is Outcome.RANK_P
        assert res.residual <= 1e-8


def test_decompose_generic_not_generic():
    A = np.random.default_rng(9).normal(size=(3, 6))
    T = Tensor3.from_slices([A, A, A])
    assert decompose_generic(T).outcome is Outcome.NOT_GENERIC


def test_decompose_generic_dimension_error():
    with pytest.raises(DimensionError):
        decompose_generic(random_gaussian((3, 7, 3), seed=0))


def test_decompose_generic_quaternion():
    T = build_x_of_y(quaternion_pair())
    res = decompose_generic(T)
    assert res.outcome is Outcome.RANK_EXCEEDS_P
    assert res.classification.verdict is Verdict.NO_REAL_POINT


def test_gl_equivalence_preserves_outcome():
    rng = np.random.default_rng(10)
    for seed in range(20):
        T = random_gaussian((3, 6, 3), seed=seed)
        P, Q, R = rng.normal(size=(3, 3)), rng.normal(size=(6, 6)), rng.normal(size=(3, 3))
        a = decompose_generic(T, seed=seed)
        b = decompose_generic(gl_action(P, Q, R, T), seed=seed)
        assert a.outcome is b.outcome is Outcome.RANK_P


def test_quaternion_neighbourhood_exceeds_p():
    rng = np.random.default_rng(11)
    base = build_x_of_y(quaternion_pair())
    P, Q, R = rng.normal(size=(4, 4)), rng.normal(size=(8, 8)), rng.normal(size=(3, 3))
    moved = gl_action(P, Q, R, base)
    assert decompose_generic(moved).outcome is Outcome.RANK_EXCEEDS_P
    for k in range(3):
        noise = rng.normal(size=base.shape)
        T = Tensor3(base.array + 0.05 * noise / np.linalg.norm(noise) * base.norm())
        assert decompose_generic(T, seed=k).outcome is Outcome.RANK_EXCEEDS_P
