# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Binary linear codes and their decoders.

A :class:`LinearCode` keeps a systematic (RREF) generator, a parity check and
a minimum distance found by exhaustive enumeration.  Decoding is by syndrome
table lookup restricted to errors of weight at most ``(d - 1) // 2``, so a
decoder either returns the unique nearby codeword together with the error
positions or reports a failure.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path

import numpy as np

from ..exceptions import DistanceUnavailableError, ErasureAmbiguityError, LengthMismatchError
from . import gf2

LOGGER = logging.getLogger("qvhss.codes")

MAX_ENUMERATION_DIM = 20
"""Largest dimension for which the minimum distance is computed by enumeration."""

DECODED = "decoded"
FAILURE = "failure"


@dataclass(frozen=True)
class DecodeOutcome:
    """Result of a decoder call."""

    status: str
    codeword: np.ndarray | None = None
    error_positions: frozenset = field(default_factory=frozenset)
    message: np.ndarray | None = None

    @property
    def ok(self) -> bool:
        return self.status == DECODED

    @classmethod
    def failure(cls):
        return cls(FAILURE)


class LinearCode:
    """An ``[n, k, d]`` binary linear code.

    Parameters
    ----------
    generator : array-like
        Rows spanning the code.  They are reduced to a systematic basis.
    parity_check : array-like, optional
        A specific parity-check matrix to keep instead of the derived one.
    distance : int, optional
        Declared minimum distance; required when ``k`` exceeds
        :data:`MAX_ENUMERATION_DIM`.
    name : str, optional

    """

    def __init__(self, generator, parity_check=None, distance=None, name=None):
        g = gf2.as_bits(generator, ndim=2)
        basis = gf2.row_basis(g)
        self.n = int(g.shape[1])
        self.k = int(basis.shape[0])
        self.rank_deficient = self.k < g.shape[0]
        self.generator = basis
        self.pivots = gf2.rref(basis)[1]
        self.name = name or f"[{self.n},{self.k}]"

        if parity_check is None:
            parity_check = gf2.null_space(basis)
        else:
            parity_check = gf2.as_bits(parity_check, ndim=2)
            if parity_check.shape[1] != self.n:
                raise LengthMismatchError(self.n, parity_check.shape[1])
            if gf2.rank(parity_check) != self.n - self.k or gf2.mat_mul(
                parity_check, basis.T
            ).any():
                raise ValueError(f"Parity check does not match the generator of {self.name}.")
        self.parity_check = parity_check

        if distance is None:
            distance = self._enumerate_distance()
        self.d = distance
        for arr in (self.generator, self.parity_check):
            arr.setflags(write=False)

    def _enumerate_distance(self):
        if self.k == 0:
            return None
        if self.k > MAX_ENUMERATION_DIM:
            raise DistanceUnavailableError(
                f"Code {self.name} has dimension {self.k} > {MAX_ENUMERATION_DIM}; "
                "declare its distance explicitly."
            )
        words = gf2.span(self.generator)
        return int(words[1:].sum(axis=1).min())

    def __repr__(self):
        return f"LinearCode({self.name}, n={self.n}, k={self.k}, d={self.d})"

    @property
    def t(self) -> int:
        """Number of errors the bounded-distance decoder corrects."""
        return 0 if self.d is None else (self.d - 1) // 2

    def codewords(self) -> np.ndarray:
        return gf2.span(self.generator)

    def encode(self, message) -> np.ndarray:
        message = gf2.as_bits(message).reshape(-1)
        if message.size != self.k:
            raise LengthMismatchError(self.k, message.size)
        return ((message.astype(np.int64) @ self.generator.astype(np.int64)) & 1).astype(
            np.uint8
        )

    def contains(self, word) -> bool:
        return not self.syndrome(word).any()

    def syndrome(self, word) -> np.ndarray:
        return gf2.mat_vec(self.parity_check, word)

    @cached_property
    def syndrome_table(self) -> dict[bytes, np.ndarray]:
        """Map syndrome bytes to the unique error of weight at most ``t``."""
        table = {}
        for w in range(self.t + 1):
            for positions in combinations(range(self.n), w):
                err = np.zeros(self.n, dtype=np.uint8)
                err[list(positions)] = 1
                table.setdefault(self.syndrome(err).tobytes(), err)
        LOGGER.debug("Built syndrome table of %s with %d entries.", self.name, len(table))
        return table


def from_generator(g, distance=None, name=None) -> LinearCode:
    """Build a code from a generator matrix, flagging rank deficiency."""
    g = gf2.as_bits(g, ndim=2)
    if not g.any():
        raise ValueError("Generator matrix must be nonzero.")
    code = LinearCode(g, distance=distance, name=name)
    if code.rank_deficient:
        warnings.warn(
            f"Generator of {code.name} has {g.shape[0]} rows but rank {code.k}; "
            "dependent rows were dropped.",
            stacklevel=2,
        )
    return code


def dual(c: LinearCode) -> LinearCode:
    """The dual code, generated by the parity check of ``c``."""
    return LinearCode(c.parity_check, parity_check=c.generator, name=f"dual({c.name})")


def is_subcode(a: LinearCode, b: LinearCode) -> bool:
    """True iff every codeword of ``a`` is a codeword of ``b``."""
    if a.n != b.n:
        raise LengthMismatchError(b.n, a.n)
    return not gf2.mat_mul(b.parity_check, a.generator.T).any()


def _check_received(c, received):
    received = gf2.as_bits(received).reshape(-1)
    if received.size != c.n:
        raise LengthMismatchError(c.n, received.size)
    return received


def _message_of(c, codeword):
    return codeword[c.pivots].copy()


def syndrome_decode(c: LinearCode, syndrome) -> np.ndarray | None:
    """Error pattern of weight at most ``t`` with the given syndrome, if any."""
    syndrome = gf2.as_bits(syndrome).reshape(-1)
    err = c.syndrome_table.get(syndrome.tobytes())
    return None if err is None else err.copy()


def bounded_distance_decode(c: LinearCode, received) -> DecodeOutcome:
    """Decode up to ``(d - 1) // 2`` errors; otherwise report failure."""
    received = _check_received(c, received)
    err = syndrome_decode(c, c.syndrome(received))
    if err is None:
        return DecodeOutcome.failure()
    codeword = received ^ err
    return DecodeOutcome(
        DECODED,
        codeword=codeword,
        error_positions=frozenset(int(i) for i in np.flatnonzero(err)),
        message=_message_of(c, codeword),
    )


def erasure_decode(c: LinearCode, received, erased) -> DecodeOutcome:
    """Recover the codeword agreeing with ``received`` outside ``erased``."""
    received = _check_received(c, received)
    erased = {int(i) for i in erased}
    if c.d is None or len(erased) >= c.d:
        raise ErasureAmbiguityError(
            f"{len(erased)} erasures do not determine a codeword of {c.name} (d={c.d})."
        )
    known = [i for i in range(c.n) if i not in erased]
    coeffs = gf2.row_combination(c.generator[:, known], received[known])
    if coeffs is None:
        return DecodeOutcome.failure()
    codeword = c.encode(coeffs)
    return DecodeOutcome(DECODED, codeword=codeword, message=coeffs)


def nearest_codewords(c: LinearCode, received) -> list[np.ndarray]:
    """All codewords at minimum Hamming distance from ``received``."""
    received = _check_received(c, received)
    words = c.codewords()
    dist = (words ^ received).sum(axis=1)
    return [w for w in words[dist == dist.min()]]


def hamming_7_4() -> LinearCode:
    """The ``[7,4,3]`` Hamming code; column ``j`` of the parity check is ``j + 1`` in binary."""
    h = ((np.arange(1, 8)[None, :] >> np.arange(2, -1, -1)[:, None]) & 1).astype(np.uint8)
    return LinearCode(gf2.null_space(h), parity_check=h, name="hamming[7,4]")


def repetition(n: int) -> LinearCode:
    return LinearCode(np.ones((1, n), dtype=np.uint8), name=f"repetition[{n},1]")


def parity(n: int) -> LinearCode:
    return dual(repetition(n))


def load_code(path) -> LinearCode:
    """Load a generator matrix fixture and rebuild the code from it."""
    path = Path(path)
    return from_generator(gf2.load_matrix(path), name=path.stem)
