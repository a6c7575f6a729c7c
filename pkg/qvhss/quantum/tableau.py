# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Stabilizer tableau with one symbolic logical qubit.

The state of all live qubits is ``α|0_L⟩ + β|1_L⟩`` where ``|0_L⟩`` is the
``+1`` eigenstate of the stabilizers and of the logical operator ``L_z`` and
``|1_L⟩ = L_x |0_L⟩``.  Stabilizers, destabilizers and the logical pair form a
symplectic basis laid out as in the CHP simulator: row ``i`` is destabilizer
``i``, row ``N + i`` is stabilizer ``i``.  While the logical qubit is live, slot
``logical`` holds ``L_x`` in its destabilizer row and ``L_z`` in its stabilizer
row, and :attr:`amplitudes` holds ``(α, β)``.

Clifford gates conjugate every row and leave the amplitudes alone.  A
measurement that commutes with the stabilizers but not with the logical pair
collapses the amplitudes; the logical qubit then becomes an ordinary
stabilizer slot.

Qubits are addressed by stable integer ids handed out by :meth:`allocate`;
retiring a qubit removes its column and one slot.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..exceptions import TableauError, UncorrectableError
from .pauli import PauliString, g_phase, product_phase

LOGGER = logging.getLogger("qvhss.quantum")

DETERMINISTIC = "deterministic"
RANDOM = "random"
LOGICAL_COLLAPSE = "logical_collapse"

_SIGMA = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_Z = PauliString.from_label("Z")


@dataclass(frozen=True)
class AmplitudePair:
    """A normalized single-qubit pure state ``alpha|0⟩ + beta|1⟩``."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"Amplitudes are not normalized: |alpha|^2 + |beta|^2 = {norm}.")

    @classmethod
    def from_vector(cls, vec, normalize=True):
        vec = np.asarray(vec, dtype=complex).reshape(2)
        if normalize:
            vec = vec / np.linalg.norm(vec)
        return cls(complex(vec[0]), complex(vec[1]))

    @classmethod
    def preset(cls, name: str) -> AmplitudePair:
        """Named secrets: ``zero``, ``one``, ``plus`` and ``generic``."""
        presets = {
            "zero": (1, 0),
            "one": (0, 1),
            "plus": (np.sqrt(0.5), np.sqrt(0.5)),
            "generic": (np.sqrt(0.3), np.sqrt(0.7) * 1j),
        }
        if name not in presets:
            raise ValueError(f"Unknown secret preset: <{name}>.")
        return cls(*(complex(v) for v in presets[name]))

    @classmethod
    def parse(cls, value: str) -> AmplitudePair:
        """A preset name or ``"alpha,beta"`` with Python complex literals."""
        value = value.strip()
        if "," not in value:
            return cls.preset(value)
        alpha, beta = (complex(tok.strip().replace(" ", "")) for tok in value.split(","))
        return cls(alpha, beta)

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)

    def fidelity(self, other: AmplitudePair) -> float:
        """``|⟨self|other⟩|^2``."""
        return float(abs(np.vdot(self.as_array(), other.as_array())) ** 2)

    def apply(self, matrix) -> AmplitudePair:
        return AmplitudePair.from_vector(np.asarray(matrix) @ self.as_array(), normalize=False)

    def encrypt(self, a: int, b: int) -> AmplitudePair:
        """Quantum one-time pad ``X^a Z^b``."""
        out = self
        if b:
            out = out.apply(_SIGMA["z"])
        if a:
            out = out.apply(_SIGMA["x"])
        return out

    def decrypt(self, a: int, b: int) -> AmplitudePair:
        """Inverse pad ``Z^b X^a``."""
        out = self
        if a:
            out = out.apply(_SIGMA["x"])
        if b:
            out = out.apply(_SIGMA["z"])
        return out

    def density(self) -> np.ndarray:
        vec = self.as_array()
        return np.outer(vec, vec.conj())

    def __str__(self):
        return f"({self.alpha:.6g}, {self.beta:.6g})"


@dataclass(frozen=True)
class MeasurementRecord:
    qubit: int | None
    outcome: int
    determinism: str
    probability: float


class LogicalTableau:
    """Exact stabilizer state of all live qubits plus one symbolic logical qubit."""

    def __init__(self, debug=False):
        self.xs = np.zeros((0, 0), dtype=np.uint8)
        self.zs = np.zeros((0, 0), dtype=np.uint8)
        self.r = np.zeros(0, dtype=np.uint8)
        self.labels = []
        self._col = {}
        self._next_id = 0
        self.logical = None
        self.amplitudes = None
        self.debug = debug

    # -- bookkeeping -------------------------------------------------------

    @property
    def num_qubits(self) -> int:
        return len(self.labels)

    @property
    def live(self) -> bool:
        """Whether the symbolic logical qubit is live."""
        return self.logical is not None

    @property
    def qubits(self) -> list[int]:
        return list(self.labels)

    def reorder(self, qubits):
        """Move the columns of ``qubits`` to the front, in the given order."""
        order = [self._column(q) for q in qubits]
        order += [c for c in range(self.num_qubits) if c not in order]
        self.xs = self.xs[:, order]
        self.zs = self.zs[:, order]
        self.labels = [self.labels[c] for c in order]
        self._reindex()

    def _column(self, qubit) -> int:
        try:
            return self._col[qubit]
        except KeyError:
            raise TableauError(f"Qubit {qubit} is not live in this tableau.") from None

    def _reindex(self):
        self._col = {q: c for c, q in enumerate(self.labels)}

    def copy(self) -> LogicalTableau:
        other = LogicalTableau(debug=self.debug)
        other.xs = self.xs.copy()
        other.zs = self.zs.copy()
        other.r = self.r.copy()
        other.labels = list(self.labels)
        other._reindex()
        other._next_id = self._next_id
        other.logical = self.logical
        other.amplitudes = self.amplitudes
        return other

    def allocate(self, k=1) -> list[int]:
        """Add ``k`` qubits in ``|0⟩`` and return their ids."""
        n = self.num_qubits
        m = n + k
        xs = np.zeros((2 * m, m), dtype=np.uint8)
        zs = np.zeros((2 * m, m), dtype=np.uint8)
        r = np.zeros(2 * m, dtype=np.uint8)
        xs[:n, :n] = self.xs[:n]
        zs[:n, :n] = self.zs[:n]
        r[:n] = self.r[:n]
        xs[m : m + n, :n] = self.xs[n:]
        zs[m : m + n, :n] = self.zs[n:]
        r[m : m + n] = self.r[n:]
        for j in range(n, m):
            xs[j, j] = 1
            zs[m + j, j] = 1
        self.xs, self.zs, self.r = xs, zs, r
        ids = list(range(self._next_id, self._next_id + k))
        self._next_id += k
        self.labels += ids
        self._reindex()
        return ids

    def new_logical(self, amplitudes: AmplitudePair) -> int:
        """Allocate one qubit carrying ``amplitudes`` as the symbolic logical qubit."""
        if self.live:
            raise TableauError("A logical qubit is already live.")
        (qubit,) = self.allocate(1)
        self.logical = self.num_qubits - 1
        self.amplitudes = amplitudes
        return qubit

    # -- Clifford gates ----------------------------------------------------

    def _columns(self, qubits) -> np.ndarray:
        return np.fromiter((self._column(q) for q in qubits), dtype=np.int64)

    def apply_h(self, qubit):
        self.apply_hs([qubit])

    def apply_hs(self, qubits):
        """Hadamard on every qubit of ``qubits`` at once."""
        a = self._columns(qubits)
        if np.unique(a).size != a.size:
            raise TableauError("Hadamard qubits must be distinct.")
        xa, za = self.xs[:, a], self.zs[:, a]
        self.r ^= np.bitwise_xor.reduce(xa & za, axis=1)
        self.xs[:, a], self.zs[:, a] = za, xa
        self._after_op("h")

    def apply_s(self, qubit):
        a = self._column(qubit)
        self.r ^= self.xs[:, a] & self.zs[:, a]
        self.zs[:, a] ^= self.xs[:, a]
        self._after_op("s")

    def apply_cnot(self, control, target):
        self.apply_cnots([control], [target])

    def apply_cnots(self, controls, targets):
        """CNOT from ``controls[k]`` onto ``targets[k]`` for every ``k`` at once.

        The gates commute only when no qubit appears twice, which is checked.
        """
        a = self._columns(controls)
        b = self._columns(targets)
        if a.size != b.size:
            raise TableauError("CNOT needs as many targets as controls.")
        if np.unique(np.concatenate([a, b])).size != 2 * a.size:
            raise TableauError("CNOT control and target must differ.")
        xa, za = self.xs[:, a], self.zs[:, a]
        xb, zb = self.xs[:, b], self.zs[:, b]
        self.r ^= np.bitwise_xor.reduce(xa & zb & (xb ^ za ^ 1), axis=1)
        self.xs[:, b] = xb ^ xa
        self.zs[:, a] = za ^ zb
        self._after_op("cnot")

    def apply_pauli(self, pauli, qubits=None):
        """Apply a Pauli operator; every row anticommuting with it flips sign."""
        if isinstance(pauli, str):
            pauli = PauliString.from_label(pauli)
        qubits = self.labels if qubits is None else list(qubits)
        if len(qubits) != pauli.num_qubits:
            raise TableauError("Pauli string and qubit list lengths differ.")
        cols = self._columns(qubits)
        self.r ^= np.bitwise_xor.reduce(
            (self.xs[:, cols] & pauli.z) ^ (self.zs[:, cols] & pauli.x), axis=1
        )
        self._after_op("pauli")

    def apply_gate(self, name, qubits):
        if name == "h":
            self.apply_h(*qubits)
        elif name == "s":
            self.apply_s(*qubits)
        elif name == "cnot":
            self.apply_cnot(*qubits)
        elif name in ("x", "y", "z"):
            self.apply_pauli(name.upper(), qubits)
        else:
            raise TableauError(f"Unsupported gate: <{name}>.")

    # -- row algebra -------------------------------------------------------

    def _rowsum(self, targets, src):
        """Multiply rows ``targets`` by row ``src``; operands must commute."""
        targets = np.asarray(targets, dtype=np.int64)
        if targets.size == 0:
            return
        g = g_phase(
            self.xs[src][None, :], self.zs[src][None, :], self.xs[targets], self.zs[targets]
        ).sum(axis=1)
        phase = (2 * self.r[targets].astype(np.int64) + 2 * int(self.r[src]) + g) % 4
        if self.debug and np.any(phase % 2):
            raise TableauError("Row product of anticommuting operators.")
        self.r[targets] = (phase // 2).astype(np.uint8)
        self.xs[targets] ^= self.xs[src]
        self.zs[targets] ^= self.zs[src]

    def _row(self, index):
        """Row ``index`` as ``(x, z, phase)`` with the phase in Z4."""
        return self.xs[index].copy(), self.zs[index].copy(), 2 * int(self.r[index])

    @staticmethod
    def _mul(left, right):
        x1, z1, p1 = left
        x2, z2, p2 = right
        return x1 ^ x2, z1 ^ z2, product_phase(x1, z1, p1, x2, z2, p2)

    def _product(self, rows):
        """Ordered product of ``rows`` as ``(x, z, phase)``."""
        rows = np.asarray(rows, dtype=np.int64)
        n = self.num_qubits
        if rows.size == 0:
            return np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8), 0
        xs, zs = self.xs[rows], self.zs[rows]
        # Prefix products; row k multiplies the product of rows 0..k-1 from the right.
        px = np.bitwise_xor.accumulate(xs, axis=0)
        pz = np.bitwise_xor.accumulate(zs, axis=0)
        g = int(g_phase(px[:-1], pz[:-1], xs[1:], zs[1:]).sum())
        phase = (2 * int(self.r[rows].sum()) + g) % 4
        return px[-1].copy(), pz[-1].copy(), phase

    def _anticommuting(self, px, pz):
        """Rows anticommuting with ``(px, pz)``, from the Pauli's support only."""
        cols = np.flatnonzero(px | pz)
        parity = np.bitwise_xor.reduce(
            (self.xs[:, cols] & pz[cols]) ^ (self.zs[:, cols] & px[cols]), axis=1
        )
        return parity.astype(bool)

    def _ordinary(self, flags) -> np.ndarray:
        """Indices set in ``flags`` other than the logical slot."""
        slots = np.flatnonzero(flags)
        return slots[slots != self.logical] if self.live else slots

    def _logical_operator(self, a, b):
        """``L_x``, ``L_z`` or ``L_y = i L_x L_z`` as ``(x, z, phase)``, with its name."""
        n = self.num_qubits
        lx = self._row(self.logical)
        lz = self._row(n + self.logical)
        if a and b:
            x, z, phase = self._mul(lx, lz)
            return (x, z, (phase + 1) % 4), "y"
        return (lx, "x") if a else (lz, "z")

    def _decompose(self, px, pz, phase):
        """Split a Pauli commuting with every ordinary stabilizer.

        Returns ``(slots, logical, sign)``: the operator equals
        ``sign * prod(stab[slots]) * T`` where ``T`` is the logical operator named
        by ``logical`` (``None`` when the operator lies in the stabilizer group).
        """
        n = self.num_qubits
        anti = self._anticommuting(px, pz)
        slots = self._ordinary(anti[:n])
        acc = self._product(n + slots)
        logical = None
        if self.live:
            a = bool(anti[n + self.logical])
            b = bool(anti[self.logical])
            if a or b:
                op, logical = self._logical_operator(a, b)
                acc = self._mul(acc, op)
        if not (np.array_equal(acc[0], px) and np.array_equal(acc[1], pz)):
            raise TableauError("Operator decomposition failed; tableau is corrupted.")
        e = (phase - acc[2]) % 4
        if e % 2:
            raise TableauError("Measured operator is not Hermitian.")
        return slots, logical, 1 - e

    # -- measurement -------------------------------------------------------

    def _columns_of(self, pauli: PauliString, qubits):
        n = self.num_qubits
        px = np.zeros(n, dtype=np.uint8)
        pz = np.zeros(n, dtype=np.uint8)
        cols = [self._column(q) for q in qubits]
        px[cols] = pauli.x
        pz[cols] = pauli.z
        return px, pz

    def measure_pauli(self, pauli, qubits, rng=None, forced=None) -> MeasurementRecord:
        """Measure a Hermitian Pauli operator on ``qubits``.

        Outcome ``m`` means eigenvalue ``(-1)**m``.  ``forced`` fixes the
        outcome (for exhaustive branching); forcing an impossible outcome
        raises :class:`~qvhss.exceptions.TableauError`.
        """
        if isinstance(pauli, str):
            pauli = PauliString.from_label(pauli)
        qubits = list(qubits)
        record_qubit = qubits[0] if len(qubits) == 1 else None
        if pauli.phase % 2:
            raise TableauError(f"Cannot measure non-Hermitian {pauli}.")
        px, pz = self._columns_of(pauli, qubits)
        n = self.num_qubits
        anti = self._anticommuting(px, pz)
        pivots = self._ordinary(anti[n:])

        if pivots.size:
            p = int(pivots[0])
            outcome = int(rng.integers(2)) if forced is None else int(forced)
            others = np.flatnonzero(anti)
            others = others[(others != p) & (others != n + p)]
            self._rowsum(others, n + p)
            self.xs[p], self.zs[p], self.r[p] = self.xs[n + p], self.zs[n + p], self.r[n + p]
            self.xs[n + p], self.zs[n + p] = px, pz
            self.r[n + p] = ((pauli.phase + 2 * outcome) % 4) // 2
            self._after_op("measure")
            return MeasurementRecord(record_qubit, outcome, RANDOM, 0.5)

        _, logical, sign = self._decompose(px, pz, pauli.phase)
        if logical is None:
            outcome = 0 if sign == 1 else 1
            if forced is not None and int(forced) != outcome:
                raise TableauError(f"Forced outcome {forced} has probability 0.")
            return MeasurementRecord(record_qubit, outcome, DETERMINISTIC, 1.0)
        return self._collapse(logical, sign, record_qubit, rng, forced)

    def _collapse(self, logical, sign, record_qubit, rng, forced):
        n = self.num_qubits
        op, _ = self._logical_operator(logical in ("x", "y"), logical in ("y", "z"))
        amps = self.amplitudes.as_array()
        matrix = sign * _SIGMA[logical]
        branches = []
        for m in (0, 1):
            proj = (np.eye(2) + (-1) ** m * matrix) / 2
            vec = proj @ amps
            branches.append((float(np.vdot(vec, vec).real), vec))
        if forced is None:
            outcome = int(rng.random() >= branches[0][0])
        else:
            outcome = int(forced)
        prob, vec = branches[outcome]
        if prob < 1e-15:
            raise TableauError(f"Outcome {outcome} of logical collapse has probability 0.")

        slot = self.logical
        destab = self._row(n + slot) if logical in ("x", "y") else self._row(slot)
        self.xs[slot], self.zs[slot], self.r[slot] = destab[0], destab[1], destab[2] // 2
        self.xs[n + slot], self.zs[n + slot] = op[0], op[1]
        # The post-measurement state is the (-1)**outcome * sign eigenstate of T.
        self.r[n + slot] = ((op[2] + 2 * outcome + (1 - sign)) % 4) // 2
        self.logical = None
        self.amplitudes = None
        LOGGER.debug("Logical qubit collapsed by %s-type measurement (p=%.6f).", logical, prob)
        self._after_op("measure")
        return MeasurementRecord(record_qubit, outcome, LOGICAL_COLLAPSE, prob)

    def measure_z(self, qubit, rng=None, forced=None) -> MeasurementRecord:
        return self.measure_pauli(_Z, [qubit], rng=rng, forced=forced)

    def outcome_probability(self, pauli, qubits, outcome) -> float:
        """Probability of ``outcome`` without disturbing the state."""
        trial = self.copy()
        try:
            return trial.measure_pauli(pauli, qubits, forced=outcome).probability
        except TableauError:
            return 0.0

    # -- compaction --------------------------------------------------------

    def retire(self, qubit):
        """Remove a qubit whose ``Z`` eigenvalue is fixed by the stabilizers."""
        col = self._column(qubit)
        n = self.num_qubits
        px = np.zeros(n, dtype=np.uint8)
        pz = np.zeros(n, dtype=np.uint8)
        pz[col] = 1
        anti = self._anticommuting(px, pz)
        if self._ordinary(anti[n:]).size:
            raise TableauError(f"Qubit {qubit} is not in a Z eigenstate; measure it first.")
        slots, logical, _ = self._decompose(px, pz, 0)
        if logical is not None:
            raise TableauError(f"Qubit {qubit} still carries logical information.")
        p = int(slots[0])
        if slots.size > 1:
            x, z, phase = self._product(n + slots)
            self.xs[n + p], self.zs[n + p], self.r[n + p] = x, z, phase // 2
            self._rowsum(slots[1:], p)

        rows = np.flatnonzero(self.zs[:, col])
        rows = rows[(rows != p) & (rows != n + p)]
        if np.any(self.xs[rows, col]):
            raise TableauError("Column elimination failed during retire.")
        self.zs[rows, col] = 0
        self.r[rows] ^= self.r[n + p]

        dropped = [p, n + p]
        self.xs = np.delete(np.delete(self.xs, dropped, axis=0), col, axis=1)
        self.zs = np.delete(np.delete(self.zs, dropped, axis=0), col, axis=1)
        self.r = np.delete(self.r, dropped)
        del self.labels[col]
        self._reindex()
        if self.logical is not None and p < self.logical:
            self.logical -= 1
        self._after_op("retire")

    def measure_and_retire(self, qubit, rng=None, forced=None) -> MeasurementRecord:
        record = self.measure_z(qubit, rng=rng, forced=forced)
        self.retire(qubit)
        return record

    def measure_and_retire_many(self, qubits, rng=None) -> list[int]:
        """Z outcomes of ``qubits``, measured and retired in order."""
        return [self.measure_and_retire(q, rng=rng).outcome for q in qubits]

    # -- logical readout ---------------------------------------------------

    def logical_action(self, pauli, qubits) -> np.ndarray:
        """2x2 action on the logical qubit of a Pauli commuting with the stabilizers."""
        if not self.live:
            raise TableauError("No logical qubit is live.")
        px, pz = self._columns_of(pauli, qubits)
        n = self.num_qubits
        anti = self._anticommuting(px, pz)
        if self._ordinary(anti[n:]).size:
            raise TableauError(f"{pauli} anticommutes with a stabilizer.")
        _, logical, sign = self._decompose(px, pz, pauli.phase)
        if logical is None:
            return sign * np.eye(2, dtype=complex)
        return sign * _SIGMA[logical]

    def read_logical(self, x_op, z_op, qubits) -> AmplitudePair:
        """Amplitudes of the state in the logical basis defined by ``(x_op, z_op)``.

        ``|0'⟩`` is the ``+1`` eigenstate of ``z_op`` and ``|1'⟩ = x_op |0'⟩``.
        The result is defined up to a global phase.
        """
        m_x = self.logical_action(x_op, qubits)
        m_z = self.logical_action(z_op, qubits)
        if np.allclose(m_x @ m_z, m_z @ m_x):
            raise TableauError("Readout operators do not form a logical pair.")
        evals, evecs = np.linalg.eigh(m_z)
        v0 = evecs[:, int(np.argmax(evals))]
        v1 = m_x @ v0
        psi = self.amplitudes.as_array()
        return AmplitudePair.from_vector([np.vdot(v0, psi), np.vdot(v1, psi)])

    def expectation(self, pauli, qubits) -> float:
        """Exact expectation value of a Hermitian Pauli on ``qubits``."""
        if isinstance(pauli, str):
            pauli = PauliString.from_label(pauli)
        px, pz = self._columns_of(pauli, qubits)
        n = self.num_qubits
        anti = self._anticommuting(px, pz)
        if self._ordinary(anti[n:]).size:
            return 0.0
        _, logical, sign = self._decompose(px, pz, pauli.phase)
        if logical is None:
            return float(sign)
        psi = self.amplitudes.as_array()
        return float(np.vdot(psi, sign * _SIGMA[logical] @ psi).real)

    def logical_density(self, x_op, z_op, qubits) -> np.ndarray:
        """Density operator of the qubit defined by the logical pair ``(x_op, z_op)``.

        Works whether or not the symbolic logical qubit is still live.
        """
        y_op = x_op * z_op
        y_op = PauliString(y_op.x, y_op.z, y_op.phase + 1)
        bloch = [self.expectation(op, qubits) for op in (x_op, y_op, z_op)]
        rho = np.eye(2, dtype=complex)
        for coef, name in zip(bloch, "xyz"):
            rho = rho + coef * _SIGMA[name]
        return rho / 2

    # -- inspection --------------------------------------------------------

    def _pauli(self, row) -> PauliString:
        return PauliString(self.xs[row], self.zs[row], 2 * int(self.r[row]))

    @property
    def stabilizers(self) -> list[PauliString]:
        n = self.num_qubits
        return [self._pauli(n + i) for i in range(n) if i != self.logical]

    @property
    def destabilizers(self) -> list[PauliString]:
        return [self._pauli(i) for i in range(self.num_qubits) if i != self.logical]

    @property
    def logical_x(self) -> PauliString | None:
        return None if not self.live else self._pauli(self.logical)

    @property
    def logical_z(self) -> PauliString | None:
        return None if not self.live else self._pauli(self.num_qubits + self.logical)

    def dump(self) -> str:
        """Signed Pauli strings: stabilizers, destabilizers, then logicals."""
        lines = [p.to_label() for p in self.stabilizers]
        lines += [p.to_label() for p in self.destabilizers]
        if self.live:
            lines += [self.logical_x.to_label(), self.logical_z.to_label()]
        return "\n".join(lines) + "\n"

    def check_invariants(self):
        """Verify the symplectic pairing of all rows."""
        n = self.num_qubits
        omega = (
            self.xs.astype(np.int64) @ self.zs.T.astype(np.int64)
            + self.zs.astype(np.int64) @ self.xs.T.astype(np.int64)
        ) & 1
        expected = np.zeros((2 * n, 2 * n), dtype=np.int64)
        expected[np.arange(n), n + np.arange(n)] = 1
        expected[n + np.arange(n), np.arange(n)] = 1
        if not np.array_equal(omega, expected):
            raise TableauError("Symplectic invariants violated.")

    def _after_op(self, name):
        if self.debug:
            try:
                self.check_invariants()
            except TableauError as e:
                raise TableauError(f"After {name}: {e}") from e

    # -- block encoding ----------------------------------------------------

    def encode(self, css, mode="secret", input_qubit=None) -> list[int]:
        """Encode into a fresh block of ``css.n`` qubits and return the block ids.

        With ``mode="secret"`` the state of ``input_qubit`` becomes the logical
        state of the block; otherwise the block is prepared in ``|0̄⟩``
        (``"zero"``) or ``|+̄⟩`` (``"plus"``).
        """
        a = css.encoder_input()
        if mode == "secret":
            if input_qubit is None:
                raise TableauError("Secret-mode encoding needs an input qubit.")
            fresh = self.allocate(css.n - 1)
            block = fresh[:a] + [input_qubit] + fresh[a:]
        else:
            block = self.allocate(css.n)
        for gate in css.encoder_circuit(mode):
            self.apply_gate(gate.name, [block[q] for q in gate.qubits])
        return block


def prepare_encoded_secret(css, amplitudes: AmplitudePair, debug=False) -> LogicalTableau:
    """A tableau holding ``amplitudes`` encoded in one block of ``css``.

    The block positions are the tableau's qubits in order.
    """
    tab = LogicalTableau(debug=debug)
    carrier = tab.new_logical(amplitudes)
    tab.reorder(tab.encode(css, mode="secret", input_qubit=carrier))
    return tab


def prepare_logical_zero(css, debug=False) -> LogicalTableau:
    tab = LogicalTableau(debug=debug)
    tab.encode(css, mode="zero")
    return tab


def prepare_logical_plus(css, debug=False) -> LogicalTableau:
    tab = LogicalTableau(debug=debug)
    tab.encode(css, mode="plus")
    return tab


def block_syndromes(tab: LogicalTableau, css, block, rng=None):
    """Measure the stabilizer generators of ``block``.

    Returns the X-error syndrome (from Z-type generators, against ``V``) and
    the Z-error syndrome (from X-type generators, against ``W``).
    """
    s_x = [tab.measure_pauli(g, block, rng=rng).outcome for g in css.z_stabilizers]
    s_z = [tab.measure_pauli(g, block, rng=rng).outcome for g in css.x_stabilizers]
    return np.array(s_x, dtype=np.uint8), np.array(s_z, dtype=np.uint8)


def correct_block(tab: LogicalTableau, css, block, rng=None):
    """Syndrome-correct ``block`` in place.

    Returns the corrected X- and Z-error positions, or ``None`` when a
    syndrome has no correctable error pattern.
    """
    from ..codes.classical import syndrome_decode

    s_x, s_z = block_syndromes(tab, css, block, rng=rng)
    x_err = syndrome_decode(css.v, s_x)
    z_err = syndrome_decode(css.w, s_z)
    if x_err is None or z_err is None:
        return None
    for j in np.flatnonzero(x_err):
        tab.apply_pauli("X", [block[j]])
    for j in np.flatnonzero(z_err):
        tab.apply_pauli("Z", [block[j]])
    return set(np.flatnonzero(x_err).tolist()), set(np.flatnonzero(z_err).tolist())


def extract_logical(tab: LogicalTableau, css, block, rng=None) -> AmplitudePair:
    """Correct ``block`` and read the logical amplitudes it carries.

    Decoding is realized algebraically: after syndrome correction the state is
    read in the basis of the code's logical operators on the block, which is
    what the decoding Clifford would leave on its output qubit.
    """
    if correct_block(tab, css, block, rng=rng) is None:
        raise UncorrectableError("Block syndrome is not correctable.")
    return tab.read_logical(css.logical_x, css.logical_z, list(block))
