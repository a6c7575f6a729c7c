# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Dense linear algebra over GF(2).

Vectors and matrices are :class:`numpy.ndarray` objects of dtype ``uint8``
holding one bit per entry.  Every function returns fresh arrays and never
modifies its inputs.

Text format
-----------
Matrices are exchanged as text: a header line ``"rows cols"`` followed by one
line of ``0``/``1`` characters per row::

    3 7
    1010101
    0110011
    0001111

"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..exceptions import LengthMismatchError

BitVector = np.ndarray
BitMatrix = np.ndarray


def as_bits(data, ndim=None) -> np.ndarray:
    """Coerce ``data`` into a ``uint8`` array of zeros and ones."""
    arr = np.asarray(data)
    if arr.dtype == bool:
        arr = arr.astype(np.uint8)
    arr = (arr.astype(np.int64) & 1).astype(np.uint8)
    if ndim == 2 and arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    return arr


def zeros(rows: int, cols: int) -> BitMatrix:
    return np.zeros((rows, cols), dtype=np.uint8)


def identity(n: int) -> BitMatrix:
    return np.eye(n, dtype=np.uint8)


def rref(m) -> tuple[BitMatrix, list[int], int]:
    """Reduced row echelon form over GF(2).

    Returns
    -------
    reduced : BitMatrix
        Same shape as ``m``; zero rows collect at the bottom.
    pivots : list of int
        Pivot column of each nonzero row, in row order.
    rank : int

    """
    a = as_bits(m, ndim=2).copy()
    n_rows, n_cols = a.shape
    pivots = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        rows = np.flatnonzero(a[r:, c])
        if rows.size == 0:
            continue
        p = r + int(rows[0])
        if p != r:
            a[[r, p], :] = a[[p, r], :]
        ones = np.flatnonzero(a[:, c])
        ones = ones[ones != r]
        if ones.size:
            a[ones, :] ^= a[r, :]
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank(m) -> int:
    return rref(m)[2]


def row_basis(m) -> BitMatrix:
    """Linearly independent rows spanning the row space of ``m`` (in RREF)."""
    reduced, _, r = rref(m)
    return reduced[:r]


def null_space(m) -> BitMatrix:
    """Basis of ``{x : m x = 0}`` as the rows of the returned matrix."""
    a = as_bits(m, ndim=2)
    n_cols = a.shape[1]
    reduced, pivots, r = rref(a)
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = np.zeros((len(free), n_cols), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, p in enumerate(pivots):
            basis[k, p] = reduced[row, f]
    return basis


def _check_len(m, v):
    if v.shape[-1] != m.shape[1]:
        raise LengthMismatchError(m.shape[1], v.shape[-1])


def mat_vec(m, v) -> BitVector:
    """Compute ``m v`` over GF(2): entry ``i`` is the parity of ``row_i & v``."""
    m = as_bits(m, ndim=2)
    v = as_bits(v).reshape(-1)
    _check_len(m, v)
    return ((m.astype(np.int64) @ v.astype(np.int64)) & 1).astype(np.uint8)


def mat_mul(a, b) -> BitMatrix:
    a = as_bits(a, ndim=2)
    b = as_bits(b, ndim=2)
    if a.shape[1] != b.shape[0]:
        raise LengthMismatchError(a.shape[1], b.shape[0])
    return ((a.astype(np.int64) @ b.astype(np.int64)) & 1).astype(np.uint8)


def dot(u, v) -> int:
    u = as_bits(u).reshape(-1)
    v = as_bits(v).reshape(-1)
    if u.size != v.size:
        raise LengthMismatchError(u.size, v.size)
    return int(np.bitwise_and(u, v).sum() & 1)


def row_combination(m, v) -> BitVector | None:
    """Coefficients ``c`` with ``c m = v``, or ``None`` if ``v`` is not in the row space."""
    m = as_bits(m, ndim=2)
    v = as_bits(v).reshape(-1)
    _check_len(m, v)
    n_rows, n_cols = m.shape
    # Solve m^T c = v on the augmented system, tracking row operations.
    aug = np.concatenate([m.T, v[:, None]], axis=1)
    reduced, pivots, r = rref(aug)
    if n_rows in pivots:
        return None
    coeffs = np.zeros(n_rows, dtype=np.uint8)
    for row, p in enumerate(pivots):
        coeffs[p] = reduced[row, n_rows]
    return coeffs


def in_row_space(m, v) -> bool:
    """True iff ``v`` is a GF(2) combination of rows of ``m``."""
    m = as_bits(m, ndim=2)
    v = as_bits(v).reshape(-1)
    _check_len(m, v)
    if not v.any():
        return True
    return row_combination(m, v) is not None


def span(m) -> np.ndarray:
    """All ``2**rank`` vectors of the row space, one per row.

    Only meant for the small codes handled by exhaustive enumeration.
    """
    basis = row_basis(m)
    k = basis.shape[0]
    if k == 0:
        return np.zeros((1, as_bits(m, ndim=2).shape[1]), dtype=np.uint8)
    messages = ((np.arange(2**k)[:, None] >> np.arange(k)[None, ::-1]) & 1).astype(np.int64)
    return ((messages @ basis.astype(np.int64)) & 1).astype(np.uint8)


def weight(v) -> int:
    return int(as_bits(v).sum())


def pack_rows(m) -> bytes:
    """Serialize row-major with big-endian bit order, each row padded with zero bits."""
    m = as_bits(m, ndim=2)
    return np.packbits(m, axis=1, bitorder="big").tobytes()


def unpack_rows(data: bytes, rows: int, cols: int) -> BitMatrix:
    row_bytes = (cols + 7) // 8
    packed = np.frombuffer(data, dtype=np.uint8).reshape(rows, row_bytes)
    return np.unpackbits(packed, axis=1, count=cols, bitorder="big").astype(np.uint8)


def read_matrix(text: str) -> BitMatrix:
    """Parse the ``"rows cols"`` text format."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("Empty matrix text.")
    try:
        n_rows, n_cols = (int(tok) for tok in lines[0].split())
    except ValueError as e:
        raise ValueError(f"Malformed matrix header: <{lines[0]}>.") from e
    body = lines[1 : 1 + n_rows]
    if len(body) != n_rows:
        raise ValueError(f"Expected {n_rows} matrix rows, found {len(body)}.")
    out = np.zeros((n_rows, n_cols), dtype=np.uint8)
    for i, line in enumerate(body):
        if len(line) != n_cols or set(line) - {"0", "1"}:
            raise ValueError(f"Row {i} is not a {n_cols}-character bit string: <{line}>.")
        out[i] = [int(ch) for ch in line]
    return out


def format_matrix(m) -> str:
    m = as_bits(m, ndim=2)
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    lines += ["".join(str(int(b)) for b in row) for row in m]
    return "\n".join(lines) + "\n"


def load_matrix(path) -> BitMatrix:
    return read_matrix(Path(path).read_text())


def bits_to_str(v) -> str:
    return "".join(str(int(b)) for b in as_bits(v).reshape(-1))
