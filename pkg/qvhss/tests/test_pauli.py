"""Pauli strings in symplectic form."""

import numpy as np
import pytest

from qvhss.quantum.pauli import PauliString


def _random_string(rng, n):
    return PauliString(rng.integers(2, size=n), rng.integers(2, size=n), int(rng.integers(4)))


def test_labels():
    p = PauliString.from_label("-XIZY")
    assert p.to_label() == "-XIZY"
    assert p.weight == 3
    assert p.support() == [0, 2, 3]
    assert p.sign == -1
    assert PauliString.from_label("+iZ").phase == 1
    with pytest.raises(ValueError):
        PauliString.from_label("XA")
    with pytest.raises(ValueError):
        PauliString.from_label("+iZ").sign


def test_single_qubit_products():
    x, z = PauliString.from_label("X"), PauliString.from_label("Z")
    assert (x * z).to_label() == "-iY"
    assert (z * x).to_label() == "+iY"
    assert not x.commutes(z)
    assert (x * x) == PauliString.identity(1)


def test_product_matches_matrices(rng):
    for _ in range(50):
        a, b = _random_string(rng, 3), _random_string(rng, 3)
        assert np.allclose((a * b).to_matrix(), a.to_matrix() @ b.to_matrix())


def test_commutation_matches_matrices(rng):
    for _ in range(50):
        a, b = _random_string(rng, 3), _random_string(rng, 3)
        ab, ba = a.to_matrix() @ b.to_matrix(), b.to_matrix() @ a.to_matrix()
        assert a.commutes(b) == np.allclose(ab, ba)


def test_x_and_z_type(steane):
    x_bar = PauliString.x_type(steane.logical_x_support)
    z_bar = PauliString.z_type(steane.logical_z_support)
    assert not x_bar.commutes(z_bar)
    for stab in steane.stabilizer_generators:
        assert stab.commutes(x_bar)
        assert stab.commutes(z_bar)


def test_restrict_and_embed():
    p = PauliString.from_label("XYZ")
    assert p.restrict([2, 0]).to_label() == "+ZX"
    assert p.restrict([1]).embed([3], 5).to_label() == "+IIIYI"
    assert p.equiv(-p)
    assert p != -p
    assert len({p, PauliString.from_label("XYZ")}) == 1
