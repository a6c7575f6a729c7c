# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Pauli strings in symplectic form.

A :class:`PauliString` on ``n`` qubits stores two bit vectors ``x`` and ``z``
and a phase exponent ``phase`` in Z4, and stands for the operator
``i**phase * P_0 ⊗ ... ⊗ P_{n-1}`` with ``P_j`` given by ``(x_j, z_j)``::

    (0, 0) -> I    (1, 0) -> X    (1, 1) -> Y    (0, 1) -> Z

so Hermitian strings have ``phase`` in ``{0, 2}``.  Labels are written with
qubit 0 on the left, e.g. ``"-XIZY"``.
"""

from __future__ import annotations

import numpy as np

from ..codes import gf2

_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PREFIX_PHASE = {"": 0, "+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}


def g_phase(x1, z1, x2, z2) -> np.ndarray:
    """Exponent of ``i`` picked up by each single-qubit product ``P1 * P2``."""
    x1 = np.asarray(x1, dtype=np.int64)
    z1 = np.asarray(z1, dtype=np.int64)
    x2 = np.asarray(x2, dtype=np.int64)
    z2 = np.asarray(z2, dtype=np.int64)
    return np.where(
        (x1 == 1) & (z1 == 1),
        z2 - x2,
        np.where(x1 == 1, z2 * (2 * x2 - 1), np.where(z1 == 1, x2 * (1 - 2 * z2), 0)),
    )


def product_phase(x1, z1, p1, x2, z2, p2) -> int:
    """Phase exponent of the product of two phased strings."""
    return int((p1 + p2 + g_phase(x1, z1, x2, z2).sum()) % 4)


class PauliString:
    """A phased tensor product of single-qubit Paulis."""

    __slots__ = ("x", "z", "phase")

    def __init__(self, x, z, phase=0):
        self.x = gf2.as_bits(x).reshape(-1).copy()
        self.z = gf2.as_bits(z).reshape(-1).copy()
        if self.x.size != self.z.size:
            raise ValueError("x and z parts must have the same length.")
        self.phase = int(phase) % 4

    @classmethod
    def identity(cls, n):
        return cls(np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8))

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        body = label.lstrip("+-i")
        prefix = label[: len(label) - len(body)]
        if prefix not in _PREFIX_PHASE:
            raise ValueError(f"Invalid Pauli phase prefix: <{prefix}>.")
        x = np.array([ch in "XY" for ch in body], dtype=np.uint8)
        z = np.array([ch in "ZY" for ch in body], dtype=np.uint8)
        if set(body) - set("IXYZ"):
            raise ValueError(f"Invalid Pauli label: <{label}>.")
        return cls(x, z, _PREFIX_PHASE[prefix])

    @classmethod
    def x_type(cls, support, phase=0):
        support = gf2.as_bits(support).reshape(-1)
        return cls(support, np.zeros_like(support), phase)

    @classmethod
    def z_type(cls, support, phase=0):
        support = gf2.as_bits(support).reshape(-1)
        return cls(np.zeros_like(support), support, phase)

    @property
    def num_qubits(self) -> int:
        return self.x.size

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    @property
    def sign(self) -> int:
        """``+1`` or ``-1`` for Hermitian strings."""
        if self.phase % 2:
            raise ValueError(f"{self} is not Hermitian.")
        return 1 - self.phase

    def support(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.x | self.z)]

    def to_label(self) -> str:
        chars = np.array(["I", "Z", "X", "Y"])[2 * self.x + self.z]
        return _PHASE_PREFIX[self.phase] + "".join(chars)

    def __str__(self):
        return self.to_label()

    def __repr__(self):
        return f"PauliString('{self.to_label()}')"

    def __eq__(self, other):
        if not isinstance(other, PauliString):
            return NotImplemented
        return (
            self.phase == other.phase
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
        )

    def __hash__(self):
        return hash((self.x.tobytes(), self.z.tobytes(), self.phase))

    def equiv(self, other: PauliString) -> bool:
        """Equality up to phase."""
        return np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z)

    def commutes(self, other: PauliString) -> bool:
        if self.num_qubits != other.num_qubits:
            raise ValueError("Pauli strings act on different numbers of qubits.")
        return not (gf2.dot(self.x, other.z) ^ gf2.dot(self.z, other.x))

    def __mul__(self, other: PauliString) -> PauliString:
        if self.num_qubits != other.num_qubits:
            raise ValueError("Pauli strings act on different numbers of qubits.")
        phase = product_phase(self.x, self.z, self.phase, other.x, other.z, other.phase)
        return PauliString(self.x ^ other.x, self.z ^ other.z, phase)

    def __neg__(self):
        return PauliString(self.x, self.z, self.phase + 2)

    def restrict(self, qubits) -> PauliString:
        """The string on a subset of qubits, in the given order (phase kept)."""
        qubits = list(qubits)
        return PauliString(self.x[qubits], self.z[qubits], self.phase)

    def embed(self, qubits, n) -> PauliString:
        """Place this string on positions ``qubits`` of an ``n``-qubit register."""
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        x[list(qubits)] = self.x
        z[list(qubits)] = self.z
        return PauliString(x, z, self.phase)

    def to_matrix(self) -> np.ndarray:
        """Dense matrix with qubit 0 as the most significant tensor factor."""
        single = {
            (0, 0): np.eye(2, dtype=complex),
            (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
            (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
            (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
        }
        out = np.array([[1j**self.phase]], dtype=complex)
        for xb, zb in zip(self.x, self.z):
            out = np.kron(out, single[(int(xb), int(zb))])
        return out
