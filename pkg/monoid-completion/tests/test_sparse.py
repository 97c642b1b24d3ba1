import pytest
import scipy.sparse

from monoidcompletion.exceptions import InputError
from monoidcompletion.sparse import SparseIntMatrix


def test_from_dense_drops_zeros():
    a = SparseIntMatrix.from_dense([[0, 2], [3, 0]])
    assert a.shape == (2, 2)
    assert a.nnz == 2
    assert a[0, 1] == 2 and a[0, 0] == 0
    assert a.to_dense() == [[0, 2], [3, 0]]


def test_from_coo_sums_duplicates():
    coo = scipy.sparse.coo_matrix(([1, -1, 4], ([0, 0, 1], [1, 1, 0])), shape=(2, 3))
    a = SparseIntMatrix.from_coo(coo)
    assert a.shape == (2, 3)
    assert a.entries == {(1, 0): 4}


def test_product_and_transpose():
    a = SparseIntMatrix.from_dense([[1, 2, 0], [0, 1, -1]])
    b = SparseIntMatrix.from_dense([[1, 0], [0, 1], [1, 1]])
    assert (a @ b).to_dense() == [[1, 2], [-1, 0]]
    assert a.T.to_dense() == [[1, 0], [2, 1], [0, -1]]
    assert a @ SparseIntMatrix.identity(3) == a
    with pytest.raises(InputError):
        a @ a


def test_big_entries_do_not_overflow():
    a = SparseIntMatrix.from_dense([[2**62, 0], [0, 2**62]])
    assert (a @ a)[0, 0] == 2**124


def test_select_and_permute():
    a = SparseIntMatrix.from_dense([[1, 2], [3, 4]])
    assert a.select(rows=[1], cols=[1, 0]).to_dense() == [[4, 3]]
    assert a.permute([1, 0], [0, 1]).to_dense() == [[3, 4], [1, 2]]


def test_hstack():
    left = SparseIntMatrix.from_dense([[1], [0]])
    right = SparseIntMatrix.from_dense([[0, 5], [6, 0]])
    assert SparseIntMatrix.hstack([left, right], rows=2).to_dense() == [[1, 0, 5], [0, 6, 0]]


def test_invalid_entries():
    with pytest.raises(InputError):
        SparseIntMatrix(2, 2, {(2, 0): 1})
    with pytest.raises(InputError):
        SparseIntMatrix.from_dense([[1, 2], [3]])


def test_equality_and_zero():
    assert SparseIntMatrix(2, 3) == SparseIntMatrix.from_dense([[0, 0, 0], [0, 0, 0]])
    assert SparseIntMatrix(2, 3).is_zero()
    assert SparseIntMatrix(2, 3) != SparseIntMatrix(3, 2)
    assert -SparseIntMatrix.identity(2) == SparseIntMatrix.from_dense([[-1, 0], [0, -1]])
