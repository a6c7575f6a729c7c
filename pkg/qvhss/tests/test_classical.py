"""Binary linear codes and their decoders."""

from itertools import combinations

import numpy as np
import pytest

from qvhss.codes import gf2
from qvhss.codes.classical import (
    bounded_distance_decode,
    dual,
    erasure_decode,
    from_generator,
    is_subcode,
    load_code,
    nearest_codewords,
    parity,
    repetition,
    syndrome_decode,
)
from qvhss.exceptions import DistanceUnavailableError, ErasureAmbiguityError


def test_hamming_parameters(hamming):
    assert (hamming.n, hamming.k, hamming.d) == (7, 4, 3)
    assert hamming.t == 1
    assert len(hamming.codewords()) == 16
    assert is_subcode(dual(hamming), hamming)


def test_hamming_syndrome_names_the_position(hamming):
    for i in range(7):
        err = np.zeros(7, dtype=np.uint8)
        err[i] = 1
        syndrome = hamming.syndrome(err)
        assert int(gf2.bits_to_str(syndrome), 2) == i + 1
        assert (syndrome_decode(hamming, syndrome) == err).all()


def test_bounded_distance_decode_single_error(hamming):
    codeword = hamming.encode([1, 0, 1, 1])
    received = codeword.copy()
    received[4] ^= 1
    outcome = bounded_distance_decode(hamming, received)
    assert outcome.ok
    assert (outcome.codeword == codeword).all()
    assert outcome.error_positions == frozenset({4})
    assert outcome.message.tolist() == [1, 0, 1, 1]


def test_bounded_distance_decode_failure():
    rep = repetition(4)
    # Two errors on a d = 4 code: the syndrome has no coset leader of weight <= 1.
    outcome = bounded_distance_decode(rep, [1, 1, 0, 0])
    assert not outcome.ok
    assert outcome.codeword is None
    assert len(nearest_codewords(rep, [1, 1, 0, 0])) == 2


def test_erasure_decode(hamming):
    codeword = hamming.encode([0, 1, 1, 0])
    received = codeword.copy()
    received[[1, 5]] = 0
    outcome = erasure_decode(hamming, received, {1, 5})
    assert outcome.ok
    assert (outcome.codeword == codeword).all()
    with pytest.raises(ErasureAmbiguityError):
        erasure_decode(hamming, received, {0, 1, 2})


def test_repetition_and_parity():
    rep = repetition(5)
    assert (rep.k, rep.d) == (1, 5)
    par = parity(5)
    assert (par.k, par.d) == (4, 2)
    assert is_subcode(rep, dual(par))


def test_rank_deficient_generator_warns():
    with pytest.warns(UserWarning, match="dependent rows"):
        code = from_generator([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert code.k == 2
    assert code.rank_deficient


def test_distance_refused_for_large_dimension():
    with pytest.raises(DistanceUnavailableError):
        from_generator(np.eye(21, dtype=np.uint8))
    assert from_generator(np.eye(21, dtype=np.uint8), distance=1).d == 1


def test_load_code(tmp_path):
    path = tmp_path / "rep3.txt"
    path.write_text("1 3\n111\n")
    code = load_code(path)
    assert code.name == "rep3"
    assert (code.n, code.k, code.d) == (3, 1, 3)


ALL_WORDS = ((np.arange(128)[:, None] >> np.arange(6, -1, -1)[None, :]) & 1).astype(np.uint8)


def test_syndrome_decoding_is_nearest_codeword(hamming):
    for word in ALL_WORDS:
        nearest = nearest_codewords(hamming, word)
        # Perfect code: every word sits within distance 1 of exactly one codeword.
        assert len(nearest) == 1
        err = syndrome_decode(hamming, hamming.syndrome(word))
        assert err is not None
        assert (word ^ err == nearest[0]).all()
        outcome = bounded_distance_decode(hamming, word)
        assert outcome.ok
        assert (outcome.codeword == nearest[0]).all()


@pytest.mark.parametrize("position", [None, *range(7)])
def test_every_codeword_survives_one_error(hamming, position):
    for codeword in hamming.codewords():
        received = codeword.copy()
        if position is not None:
            received[position] ^= 1
        outcome = bounded_distance_decode(hamming, received)
        assert outcome.ok
        assert (outcome.codeword == codeword).all()
        assert outcome.error_positions == frozenset({position} - {None})


@pytest.mark.parametrize("size", [0, 1, 2])
def test_every_codeword_survives_erasures(hamming, size):
    for codeword in hamming.codewords():
        for erased in combinations(range(7), size):
            for fill in (0, 1):
                received = codeword.copy()
                received[list(erased)] = fill
                outcome = erasure_decode(hamming, received, erased)
                assert outcome.ok
                assert (outcome.codeword == codeword).all()


def test_two_errors_are_miscorrected(hamming):
    received = np.zeros(7, dtype=np.uint8)
    received[[0, 4]] = 1
    outcome = bounded_distance_decode(hamming, received)
    # Syndrome 001 ^ 101 = 100 names position 4, so the decoder lands on 1001100.
    assert outcome.ok
    assert outcome.codeword.tolist() == [1, 0, 0, 1, 1, 0, 0]
    assert outcome.error_positions == frozenset({3})
    for i, j in combinations(range(7), 2):
        received = np.zeros(7, dtype=np.uint8)
        received[[i, j]] = 1
        outcome = bounded_distance_decode(hamming, received)
        assert outcome.ok
        assert outcome.codeword.any()
