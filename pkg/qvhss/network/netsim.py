# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Synchronous network harness.

Node ``0`` is the dealer, nodes ``1..n`` are share holders.  Broadcasts are
delivered to everybody in the round they are sent, ordered by sender.
Private messages (classical payloads or qubits) are delivered when the round
advances.  Qubits are tableau ids; the network only tracks who holds them.
A sender gives up a qubit when sending it and the receiver gets it on
delivery.
"""

from __future__ import annotations

import hashlib
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from ..exceptions import NetworkError, SchemeParameterError

LOGGER = logging.getLogger("qvhss.network")

BROADCAST = "broadcast"
PRIVATE = "private"
QUANTUM = "quantum"

PHASES = ("sharing", "z_verification", "x_verification", "reconstruction")


@dataclass(frozen=True)
class NetworkConfig:
    """Who takes part in a run, and who cheats.

    The cheater set is fixed here, before the first round.
    """

    n_q: int
    n_c: int
    t: int
    cheaters: frozenset = frozenset()
    dealer: int = 0
    reconstructor: int = 1
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "cheaters", frozenset(int(c) for c in self.cheaters))
        if self.n_q < 1 or self.n_c < 1:
            raise SchemeParameterError("Node counts must be positive.")
        if len(self.cheaters) > self.t:
            raise SchemeParameterError(
                f"{len(self.cheaters)} cheaters exceed the tolerance t = {self.t}."
            )
        if any(c < 1 or c > self.n for c in self.cheaters):
            raise SchemeParameterError(
                f"Cheaters {sorted(self.cheaters)} are not nodes 1..{self.n}."
            )
        if self.dealer in self.cheaters or self.dealer in self.nodes:
            raise SchemeParameterError("The dealer must be a separate party.")
        if not 1 <= self.reconstructor <= self.n_q:
            raise SchemeParameterError(
                f"Reconstructor {self.reconstructor} is not a quantum node."
            )
        if self.reconstructor in self.cheaters:
            raise SchemeParameterError("The reconstructor must be honest.")

    @property
    def n(self) -> int:
        return max(self.n_q, self.n_c)

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    @property
    def quantum_nodes(self) -> range:
        return range(1, self.n_q + 1)

    @property
    def honest(self) -> list[int]:
        return [j for j in self.nodes if j not in self.cheaters]


@dataclass(frozen=True)
class Message:
    round: int
    channel: str
    sender: int
    receiver: int | None
    kind: str
    payload: object = field(compare=False)

    @property
    def digest(self) -> str:
        return payload_digest(self.payload)

    def log_line(self) -> str:
        receiver = "*" if self.receiver is None else self.receiver
        return " | ".join(
            str(v)
            for v in (self.round, self.channel, self.sender, receiver, self.kind, self.digest)
        )


def payload_digest(payload) -> str:
    if isinstance(payload, (bytes, bytearray)):
        data = bytes(payload)
    else:
        data = repr(payload).encode()
    return hashlib.sha256(data).hexdigest()[:16]


class WorkspaceMeter:
    """Running count and per-phase peaks of qubits held by each node."""

    def __init__(self, nodes):
        self.current = {j: 0 for j in nodes}
        self.peak = {j: 0 for j in nodes}
        self.phase_peaks = defaultdict(lambda: {j: 0 for j in self.current})
        self.phase = None

    def set_phase(self, phase):
        self.phase = phase
        peaks = self.phase_peaks[phase]
        for j, count in self.current.items():
            peaks[j] = max(peaks[j], count)

    def update(self, node, delta):
        count = self.current[node] + delta
        if count < 0:
            raise NetworkError(f"Node {node} would hold {count} qubits.")
        self.current[node] = count
        self.peak[node] = max(self.peak[node], count)
        if self.phase is not None:
            peaks = self.phase_peaks[self.phase]
            peaks[node] = max(peaks[node], count)

    def peaks(self, phase=None) -> dict[int, int]:
        if phase is None:
            return dict(self.peak)
        return dict(self.phase_peaks[phase]) if phase in self.phase_peaks else {}


class Network:
    """One run's channels, public beacon, and qubit ownership.

    Parameters
    ----------
    config : NetworkConfig
    round_log : path-like, optional
        Append one line per message to this file.

    """

    def __init__(self, config: NetworkConfig, round_log=None):
        self.config = config
        self.round = 0
        self.participants = [config.dealer, *config.nodes]
        self._broadcasts = defaultdict(list)
        self._pending = []
        self._inbox = defaultdict(list)
        self._owner = {}
        self._in_transit = set()
        self._labels = set()
        self.meter = WorkspaceMeter(self.participants)
        self.log = []
        self._log_path = Path(round_log) if round_log else None

    def __repr__(self):
        cheaters = sorted(self.config.cheaters)
        return f"Network(n={self.config.n}, round={self.round}, cheaters={cheaters})"

    def _check_node(self, node):
        if node not in self.participants:
            raise NetworkError(f"Unknown node: {node}.")

    def _record(self, message: Message):
        line = message.log_line()
        self.log.append(line)
        if self._log_path is not None:
            with self._log_path.open("a") as fobj:
                fobj.write(line + "\n")

    def is_cheater(self, node) -> bool:
        return node in self.config.cheaters

    # -- rounds ------------------------------------------------------------

    def advance(self) -> int:
        """Close the round: deliver private messages and hand over qubits."""
        for message in self._pending:
            if message.channel == QUANTUM:
                for q in message.payload:
                    self._in_transit.discard(q)
                    self._owner[q] = message.receiver
                self.meter.update(message.receiver, len(message.payload))
            self._inbox[message.receiver].append(message)
        self._pending = []
        self.round += 1
        return self.round

    def set_phase(self, phase):
        self.meter.set_phase(phase)
        LOGGER.debug("Round %d: entering %s.", self.round, phase)

    # -- classical channels ------------------------------------------------

    def broadcast(self, sender, payload, kind="value") -> Message:
        """Deliver ``payload`` to every node; there is no way to equivocate."""
        self._check_node(sender)
        message = Message(self.round, BROADCAST, sender, None, kind, payload)
        self._broadcasts[self.round].append(message)
        self._record(message)
        return message

    def broadcasts(self, round=None, kind=None) -> list[Message]:
        """Broadcasts of ``round`` (default: current), ordered by sender."""
        round = self.round if round is None else round
        messages = sorted(self._broadcasts.get(round, ()), key=lambda m: m.sender)
        return [m for m in messages if kind is None or m.kind == kind]

    def view(self, node) -> list[Message]:
        """Everything ``node`` has seen: all broadcasts plus its delivered inbox."""
        self._check_node(node)
        seen = [m for r in sorted(self._broadcasts) for m in self.broadcasts(r)]
        return seen + list(self._inbox[node])

    def send_private(self, sender, receiver, payload, kind="value") -> Message:
        self._check_node(sender)
        self._check_node(receiver)
        message = Message(self.round, PRIVATE, sender, receiver, kind, payload)
        self._pending.append(message)
        self._record(message)
        return message

    def inbox(self, node, kind=None) -> list[Message]:
        self._check_node(node)
        return [m for m in self._inbox[node] if kind is None or m.kind == kind]

    # -- qubit ownership ---------------------------------------------------

    def assign(self, node, qubits):
        """Register freshly created ``qubits`` as held by ``node``."""
        self._check_node(node)
        qubits = list(qubits)
        for q in qubits:
            if q in self._owner or q in self._in_transit:
                raise NetworkError(f"Qubit {q} is already registered.")
            self._owner[q] = node
        self.meter.update(node, len(qubits))

    def release(self, node, qubits):
        """Forget measured and discarded ``qubits``."""
        qubits = list(qubits)
        self.require_owner(node, qubits)
        for q in qubits:
            del self._owner[q]
        self.meter.update(node, -len(qubits))

    def send_qubits(self, sender, receiver, qubits) -> Message:
        qubits = tuple(qubits)
        self._check_node(receiver)
        self.require_owner(sender, qubits)
        for q in qubits:
            del self._owner[q]
            self._in_transit.add(q)
        self.meter.update(sender, -len(qubits))
        message = Message(self.round, QUANTUM, sender, receiver, "qubits", qubits)
        self._pending.append(message)
        self._record(message)
        return message

    def owner(self, qubit):
        return self._owner.get(qubit)

    def owned(self, node) -> list[int]:
        return sorted(q for q, o in self._owner.items() if o == node)

    def require_owner(self, node, qubits):
        for q in qubits:
            if self._owner.get(q) != node:
                raise NetworkError(f"Node {node} does not hold qubit {q}.")

    @property
    def live_qubits(self) -> int:
        """Qubits held by someone or in flight."""
        return len(self._owner) + len(self._in_transit)

    # -- public randomness -------------------------------------------------

    def _draw(self, label) -> bytes:
        label = str(label)
        if label in self._labels:
            raise NetworkError(f"Public coin label <{label}> was already used.")
        self._labels.add(label)
        return hashlib.sha256(f"{self.config.seed}:{label}".encode()).digest()

    def public_coin(self, label) -> int:
        """A fair public bit, fixed by the run seed and ``label``."""
        bit = self._draw(label)[0] & 1
        LOGGER.log(15, "Round %d: public coin <%s> = %d.", self.round, label, bit)
        return bit

    def public_element(self, label, order) -> int:
        """A public nonzero element of a field with ``order`` elements."""
        digest = self._draw(label)
        return 1 + int.from_bytes(digest[:8], "big") % (order - 1)

    def workspace(self, phase=None, nodes=None) -> dict[int, int]:
        peaks = self.meter.peaks(phase)
        nodes = self.config.nodes if nodes is None else nodes
        return {j: peaks.get(j, 0) for j in nodes}
