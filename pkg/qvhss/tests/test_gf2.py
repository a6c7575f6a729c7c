"""Binary linear algebra."""

import numpy as np
import pytest

from qvhss.codes import gf2
from qvhss.exceptions import LengthMismatchError


def test_rref_rank_and_pivots():
    m = [[1, 1, 0, 1], [0, 1, 1, 0], [1, 0, 1, 1]]
    reduced, pivots, rank = gf2.rref(m)
    assert rank == 2
    assert pivots == [0, 1]
    assert not reduced[2].any()
    assert gf2.rank(m) == 2
    assert gf2.row_basis(m).shape == (2, 4)


def test_null_space_is_orthogonal(hamming):
    h = hamming.parity_check
    basis = gf2.null_space(h)
    assert basis.shape == (4, 7)
    assert not gf2.mat_mul(h, basis.T).any()


def test_null_space_of_identity_is_empty():
    assert gf2.null_space(gf2.identity(3)).shape == (0, 3)


def test_mat_vec_and_dot():
    m = [[1, 0, 1], [1, 1, 1]]
    assert gf2.mat_vec(m, [1, 1, 0]).tolist() == [1, 0]
    assert gf2.dot([1, 1, 1], [1, 0, 1]) == 0
    assert gf2.dot([1, 1, 1], [1, 0, 0]) == 1


def test_length_mismatch():
    with pytest.raises(LengthMismatchError):
        gf2.mat_vec([[1, 0, 1]], [1, 1])
    with pytest.raises(LengthMismatchError):
        gf2.dot([1, 0], [1, 0, 1])
    with pytest.raises(ValueError):
        gf2.mat_mul([[1, 0]], [[1, 0]])


def test_row_combination():
    m = np.array([[1, 0, 1, 0], [0, 1, 1, 0], [0, 0, 0, 1]], dtype=np.uint8)
    target = m[0] ^ m[2]
    coeffs = gf2.row_combination(m, target)
    assert coeffs is not None
    assert (gf2.mat_vec(m.T, coeffs) == target).all()
    assert gf2.row_combination(m, [1, 0, 0, 0]) is None
    assert gf2.in_row_space(m, [0, 0, 0, 0])
    assert not gf2.in_row_space(m, [0, 0, 1, 0])


def test_span_enumerates_row_space():
    words = gf2.span([[1, 1, 0], [0, 1, 1]])
    assert words.shape == (4, 3)
    assert {gf2.bits_to_str(w) for w in words} == {"000", "110", "011", "101"}


def test_pack_rows_bit_order():
    m = np.array([[1, 0, 1, 1, 0, 0, 0, 0, 1], [0] * 8 + [1]], dtype=np.uint8)
    data = gf2.pack_rows(m)
    # Big-endian within each byte, rows padded with zero bits.
    assert data == bytes([0b10110000, 0b10000000, 0b00000000, 0b10000000])
    assert (gf2.unpack_rows(data, 2, 9) == m).all()


def test_matrix_text_format():
    text = "2 3\n101\n011\n"
    m = gf2.read_matrix(text)
    assert m.tolist() == [[1, 0, 1], [0, 1, 1]]
    assert gf2.format_matrix(m) == text
    with pytest.raises(ValueError, match="Malformed"):
        gf2.read_matrix("two 3\n101\n")
    with pytest.raises(ValueError, match="bit string"):
        gf2.read_matrix("1 3\n121\n")
    with pytest.raises(ValueError, match="Expected 2"):
        gf2.read_matrix("2 3\n101\n")


def test_load_matrix(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("1 4\n1111\n")
    assert gf2.load_matrix(path).tolist() == [[1, 1, 1, 1]]


def _random_matrix(rows, cols, seed, rank_at_most=None):
    rng = np.random.default_rng(seed)
    if rank_at_most is None:
        return rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
    left = rng.integers(0, 2, size=(rows, rank_at_most), dtype=np.uint8)
    right = rng.integers(0, 2, size=(rank_at_most, cols), dtype=np.uint8)
    return gf2.mat_mul(left, right)


MATRICES = [
    (1, 1, 0, None),
    (3, 5, 1, None),
    (5, 3, 2, None),
    (8, 8, 3, None),
    (12, 16, 4, None),
    (16, 9, 5, None),
    (16, 16, 6, None),
    (16, 16, 7, 4),
    (10, 16, 8, 2),
    (16, 12, 9, 0),
]


@pytest.fixture(params=MATRICES, ids=lambda p: f"{p[0]}x{p[1]}-s{p[2]}-r{p[3]}")
def matrix(request):
    return _random_matrix(*request.param)


def test_rref_keeps_the_rank(matrix):
    reduced, pivots, r = gf2.rref(matrix)
    assert gf2.rank(reduced) == r == gf2.rank(matrix) == len(pivots)
    assert not reduced[r:].any()
    # Each pivot column is a unit column.
    for row, p in enumerate(pivots):
        assert reduced[:, p].tolist() == [int(i == row) for i in range(matrix.shape[0])]


def test_rref_keeps_the_row_space(matrix):
    reduced = gf2.rref(matrix)[0]
    r = gf2.rank(matrix)
    assert gf2.rank(np.vstack([matrix, reduced])) == r
    assert all(gf2.in_row_space(reduced, row) for row in matrix)
    assert all(gf2.in_row_space(matrix, row) for row in reduced)


def test_rank_nullity(matrix):
    basis = gf2.null_space(matrix)
    assert gf2.rank(matrix) + basis.shape[0] == matrix.shape[1]
    assert gf2.rank(basis) == basis.shape[0]
    assert not gf2.mat_mul(matrix, basis.T).any()


def test_row_space_is_closed_under_xor(matrix):
    rng = np.random.default_rng(matrix.shape[0] * 31 + matrix.shape[1])
    rows = matrix.shape[0]
    for _ in range(5):
        u = gf2.mat_vec(matrix.T, rng.integers(0, 2, rows))
        v = gf2.mat_vec(matrix.T, rng.integers(0, 2, rows))
        assert gf2.in_row_space(matrix, u)
        assert gf2.in_row_space(matrix, v)
        assert gf2.in_row_space(matrix, u ^ v)
        basis = gf2.null_space(matrix)
        if basis.shape[0]:
            # A unit vector off the orthogonal complement leaves the row space.
            outside = np.zeros(matrix.shape[1], dtype=np.uint8)
            outside[np.flatnonzero(basis[0])[0]] = 1
            assert not gf2.in_row_space(matrix, outside)
            assert not gf2.in_row_space(matrix, outside ^ u)
