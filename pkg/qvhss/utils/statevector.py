# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Brute-force state-vector simulator used as a reference for the tableau.

Qubit ``0`` is the most significant bit of the basis index.  Only meant for a
handful of qubits.
"""

from __future__ import annotations

import numpy as np

from ..quantum.pauli import PauliString

MAX_QUBITS = 12

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)
_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class StateVector:
    def __init__(self, num_qubits: int, state=None):
        if num_qubits > MAX_QUBITS:
            raise ValueError(f"State-vector oracle supports at most {MAX_QUBITS} qubits.")
        self.num_qubits = num_qubits
        if state is None:
            state = np.zeros(2**num_qubits, dtype=complex)
            state[0] = 1.0
        self.state = np.asarray(state, dtype=complex).reshape(2**num_qubits)

    @classmethod
    def from_product(cls, first, num_qubits):
        """``first`` (a 2-vector) on qubit 0, ``|0⟩`` on the rest."""
        rest = np.zeros(2 ** (num_qubits - 1), dtype=complex)
        rest[0] = 1.0
        return cls(num_qubits, np.kron(np.asarray(first, dtype=complex), rest))

    def _apply_1q(self, matrix, q):
        psi = self.state.reshape([2] * self.num_qubits)
        psi = np.moveaxis(np.tensordot(matrix, psi, axes=([1], [q])), 0, q)
        self.state = psi.reshape(-1)

    def apply_h(self, q):
        self._apply_1q(_H, q)

    def apply_s(self, q):
        self._apply_1q(_S, q)

    def apply_pauli(self, name, q):
        self._apply_1q(_PAULI[name.lower()], q)

    def apply_cnot(self, control, target):
        psi = self.state.reshape([2] * self.num_qubits).copy()
        idx = [slice(None)] * self.num_qubits
        idx[control] = 1
        sub = psi[tuple(idx)]
        t_axis = target - (1 if target > control else 0)
        psi[tuple(idx)] = np.flip(sub, axis=t_axis).copy()
        self.state = psi.reshape(-1)

    def apply_gate(self, name, qubits):
        if name == "cnot":
            self.apply_cnot(*qubits)
        elif name == "h":
            self.apply_h(*qubits)
        elif name == "s":
            self.apply_s(*qubits)
        else:
            self.apply_pauli(name, *qubits)

    def _z_mask(self, q):
        return ((np.arange(2**self.num_qubits) >> (self.num_qubits - 1 - q)) & 1).astype(bool)

    def probability(self, q, outcome) -> float:
        mask = self._z_mask(q) == bool(outcome)
        return float(np.sum(np.abs(self.state[mask]) ** 2))

    def measure_z(self, q, rng=None, forced=None):
        """Measure qubit ``q``; return ``(outcome, probability)``."""
        p1 = self.probability(q, 1)
        if forced is None:
            outcome = int(rng.random() < p1)
        else:
            outcome = int(forced)
        prob = p1 if outcome else 1.0 - p1
        if prob < 1e-15:
            raise ValueError(f"Outcome {outcome} has probability 0.")
        keep = self._z_mask(q) == bool(outcome)
        self.state = np.where(keep, self.state, 0) / np.sqrt(prob)
        return outcome, prob

    def expectation(self, pauli: PauliString) -> float:
        return float(np.vdot(self.state, pauli.to_matrix() @ self.state).real)

    def overlap(self, other) -> float:
        """``|⟨self|other⟩|^2``."""
        vec = other.state if isinstance(other, StateVector) else np.asarray(other)
        return float(abs(np.vdot(self.state, vec)) ** 2)

    def z_distribution(self) -> np.ndarray:
        return np.abs(self.state) ** 2


def _project(vec, paulis):
    for p in paulis:
        vec = (vec + p.to_matrix() @ vec) / 2
    return vec


def tableau_to_statevector(tab) -> StateVector:
    """Expand a :class:`~qvhss.quantum.tableau.LogicalTableau` into a state vector.

    Qubit ``j`` of the result is column ``j`` of the tableau.  The global phase
    is arbitrary.
    """
    n = tab.num_qubits
    if n > MAX_QUBITS:
        raise ValueError(f"State-vector oracle supports at most {MAX_QUBITS} qubits.")
    group = list(tab.stabilizers)
    if tab.live:
        group.append(tab.logical_z)
    dim = 2**n
    zero_l = None
    for k in range(dim):
        basis = np.zeros(dim, dtype=complex)
        basis[k] = 1.0
        vec = _project(basis, group)
        norm = np.linalg.norm(vec)
        if norm > 1e-9:
            zero_l = vec / norm
            break
    if not tab.live:
        return StateVector(n, zero_l)
    one_l = tab.logical_x.to_matrix() @ zero_l
    amps = tab.amplitudes
    return StateVector(n, amps.alpha * zero_l + amps.beta * one_l)
