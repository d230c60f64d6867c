import numpy as np
import pytest

from saddlebench.backend import backend, set_backend
from saddlebench.linalg import CsrMatrix, spmv, spmv_transpose, weighted_gram

rng = np.random.default_rng(42)


def random_csr(n_rows, n_cols, density=0.3, seed=None):
    r = np.random.default_rng(seed)
    a = r.standard_normal((n_rows, n_cols))
    a[r.random((n_rows, n_cols)) > density] = 0.0
    return a, CsrMatrix.from_dense(a)


def test_identity_spmv():
    m = CsrMatrix.identity(4)
    x = np.array([1.0, 2.0, 3.0, 4.0])
    assert np.array_equal(spmv(m, x), x)


def test_2x2_example():
    m = CsrMatrix.from_dense(np.array([[2.0, 1.0], [0.0, 3.0]]))
    y = spmv(m, np.array([1.0, 1.0]))
    assert np.allclose(y, [3.0, 3.0])


def test_duplicate_entries_are_summed():
    m = CsrMatrix.from_coo([0, 0, 1], [1, 1, 0], [2.0, 3.0, 4.0], (2, 2))
    assert m.nnz == 2
    dense = m.to_dense()
    assert dense[0, 1] == 5.0 and dense[1, 0] == 4.0
    m.validate()


def test_columns_sorted_within_rows():
    m = CsrMatrix.from_coo([0, 0, 0], [5, 1, 3], [1.0, 2.0, 3.0], (1, 6))
    assert list(m.indices) == [1, 3, 5]
    m.validate()


def test_out_of_bounds_rejected():
    with pytest.raises(ValueError):
        CsrMatrix.from_coo([0], [7], [1.0], (2, 2))
    with pytest.raises(ValueError):
        CsrMatrix.from_coo([-1], [0], [1.0], (2, 2))


def test_spmv_against_dense_oracle():
    for seed in range(5):
        a, m = random_csr(17, 23, seed=seed)
        x = np.random.default_rng(seed + 100).standard_normal(23)
        assert np.allclose(spmv(m, x), a @ x, atol=1e-13)


def test_spmv_transpose_against_dense_oracle():
    for seed in range(5):
        a, m = random_csr(17, 23, seed=seed)
        x = np.random.default_rng(seed + 200).standard_normal(17)
        assert np.allclose(spmv_transpose(m, x), a.T @ x, atol=1e-13)


def test_transpose_adjoint_identity():
    # <Mx, y> == <x, M^T y> for random vectors
    a, m = random_csr(12, 9, seed=7)
    for seed in range(8):
        r = np.random.default_rng(seed)
        x = r.standard_normal(9)
        y = r.standard_normal(12)
        lhs = spmv(m, x) @ y
        rhs = x @ spmv_transpose(m, y)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_empty_rows_handled():
    m = CsrMatrix.from_coo([2], [1], [5.0], (4, 3))
    y = spmv(m, np.array([1.0, 2.0, 3.0]))
    assert np.allclose(y, [0.0, 0.0, 10.0, 0.0])
    yt = spmv_transpose(m, np.array([1.0, 1.0, 2.0, 1.0]))
    assert np.allclose(yt, [0.0, 10.0, 0.0])


def test_submatrix_matches_dense_slice():
    a, m = random_csr(14, 11, seed=3)
    sub = m.submatrix(2, 9, 4, 11)
    assert np.allclose(sub.to_dense(), a[2:9, 4:11])


def test_diagonal_and_scaled():
    a, m = random_csr(9, 9, seed=5)
    assert np.allclose(m.diagonal(), np.diag(a))
    assert np.allclose(m.scaled(2.5).to_dense(), 2.5 * a)


def test_numpy_backend_matches_numba():
    if backend() != "numba":
        pytest.skip("numba backend unavailable")
    a, m = random_csr(31, 27, seed=11)
    x = rng.standard_normal(27)
    y = rng.standard_normal(31)
    with_numba = (spmv(m, x), spmv_transpose(m, y))
    prev = set_backend("numpy")
    try:
        with_numpy = (spmv(m, x), spmv_transpose(m, y))
    finally:
        set_backend(prev)
    assert np.allclose(with_numba[0], with_numpy[0], atol=1e-14)
    assert np.allclose(with_numba[1], with_numpy[1], atol=1e-14)


def test_shape_mismatch_raises():
    _, m = random_csr(4, 6, seed=1)
    with pytest.raises(ValueError):
        spmv(m, np.zeros(5))
    with pytest.raises(ValueError):
        spmv_transpose(m, np.zeros(6))


def test_add_matches_dense_sum():
    a, ma = random_csr(8, 5, seed=21)
    b, mb = random_csr(8, 5, density=0.5, seed=22)
    assert np.allclose((ma + mb).to_dense(), a + b)
    _, wrong = random_csr(5, 8, seed=23)
    with pytest.raises(ValueError):
        ma + wrong


def test_weighted_gram_against_dense():
    a, m = random_csr(7, 10, density=0.4, seed=31)
    w = np.random.default_rng(32).uniform(0.5, 2.0, 10)
    assert np.allclose(weighted_gram(m, w).to_dense(), a @ np.diag(w) @ a.T)
    assert np.allclose(weighted_gram(m).to_dense(), a @ a.T)


def test_weighted_gram_chunked_equals_unchunked():
    a, m = random_csr(12, 9, density=0.6, seed=33)
    w = np.random.default_rng(34).uniform(0.2, 3.0, 9)
    full = weighted_gram(m, w).to_dense()
    tiny_chunks = weighted_gram(m, w, chunk_entries=5).to_dense()
    assert np.allclose(full, tiny_chunks, atol=1e-14)
    assert np.allclose(full, a @ np.diag(w) @ a.T)


def test_weighted_gram_empty_and_bad_weights():
    empty = CsrMatrix.from_coo([], [], [], (4, 6))
    gram = weighted_gram(empty)
    assert gram.shape == (4, 4)
    assert gram.nnz == 0
    _, m = random_csr(3, 5, seed=35)
    with pytest.raises(ValueError):
        weighted_gram(m, np.ones(4))
