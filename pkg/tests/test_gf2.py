import numpy as np
import pytest

from symdouble import gf2


def test_row_reduce_examples():
    red = gf2.row_reduce(np.eye(2, dtype=np.uint8))
    assert red.rank == 2 and red.pivots == (0, 1)
    red = gf2.row_reduce(np.zeros((3, 4), np.uint8))
    assert red.rank == 0 and red.pivots == ()
    assert gf2.rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2


def test_kernel_examples():
    assert gf2.kernel(np.eye(3, dtype=np.uint8)).shape == (0, 3)
    assert gf2.kernel(np.zeros((2, 3), np.uint8)).shape[0] == 3
    k = gf2.kernel([[1, 1, 0], [0, 1, 1]])
    assert k.tolist() == [[1, 1, 1]]


def test_solve_examples():
    b = np.array([1, 0, 1], np.uint8)
    assert gf2.solve(np.eye(3, dtype=np.uint8), b).tolist() == b.tolist()
    assert gf2.solve(np.zeros((2, 2), np.uint8), [1, 0]) is None
    assert gf2.solve([[1, 1], [1, 1]], [1, 0]) is None


@pytest.mark.parametrize("seed", range(20))
def test_random_properties(seed):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, 2, size=(rng.integers(1, 8), rng.integers(1, 9))).astype(np.uint8)
    assert gf2.rank(m) == gf2.rank(m.T)
    k = gf2.kernel(m)
    assert not gf2.matmul(m, k.T).any()
    assert gf2.rank(k) + gf2.rank(m) == m.shape[1] if k.size else gf2.rank(m) == m.shape[1]
    red = gf2.row_reduce(m)
    again = gf2.row_reduce(red.rref)
    assert np.array_equal(again.rref, red.rref)
    x = rng.integers(0, 2, m.shape[1]).astype(np.uint8)
    sol = gf2.solve(m, gf2.matmul(m, x))
    assert np.array_equal(gf2.matmul(m, sol), gf2.matmul(m, x))


def test_inverse_and_text():
    m = np.array([[1, 1], [0, 1]], np.uint8)
    assert np.array_equal(gf2.matmul(m, gf2.inverse(m)), np.eye(2, dtype=np.uint8))
    with pytest.raises(ValueError):
        gf2.inverse([[1, 1], [1, 1]])
    assert np.array_equal(gf2.from_text(gf2.to_text(m)), m)
