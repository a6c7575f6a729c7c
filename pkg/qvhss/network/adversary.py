# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Library of adversary strategies.

Dealer strategies model a malicious dealer; cheater strategies model up to
``t`` malicious share holders, fixed before the run.  Cheaters only ever touch
qubits they hold and messages they send; the network refuses anything else.

============================ =========================================================
kind                         parameters
============================ =========================================================
``honest``                   none
``dealer_inconsistent_tree`` ``positions`` (secret tree), ``frame`` (first X-round
                             sub-tree, default ``1..t``)
``dealer_overweight_errors`` ``branch`` (default 1), ``weight`` (default ``t + 1``),
                             ``positions``, ``pauli``
``dealer_wrong_ancilla``     ``mode`` (default ``zero``): dealing mode of the Z-round
                             ancillas
``cheater_pauli``            ``pauli`` (default ``X``), ``branches``, ``phase``
                             (``pre`` or ``post`` verification)
``cheater_broadcast_lie``    ``rule`` (``flip``, ``zero`` or ``random``), ``targets``
                             (subset of ``measurements``, ``vcss``, ``key``)
``cheater_clifford``         ``gates`` (list of ``[name, branch, ...]``), ``phase``
============================ =========================================================
"""

from __future__ import annotations

import logging
from dataclasses import replace
from pathlib import Path

import yaml

from ..exceptions import SchemeParameterError

LOGGER = logging.getLogger("qvhss.network")

HONEST = "honest"
PRE = "pre"
POST = "post"


class AdversaryStrategy:
    """Base strategy: everybody follows the protocol."""

    kind = HONEST
    dealer = False
    defaults = {}

    def __init__(self, **params):
        unknown = set(params) - set(self.defaults)
        if unknown:
            raise SchemeParameterError(f"Unknown parameters for {self.kind}: {sorted(unknown)}.")
        self.params = {**self.defaults, **params}
        self._validate()

    def _validate(self):
        pass

    def __repr__(self):
        params = ", ".join(f"{k}={v!r}" for k, v in sorted(self.params.items()))
        return f"{type(self).__name__}({params})"

    def __eq__(self, other):
        return isinstance(other, AdversaryStrategy) and self.to_dict() == other.to_dict()

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}

    @property
    def name(self) -> str:
        return self.kind

    # -- dealing hooks -----------------------------------------------------

    def ancilla_mode(self, state, label, mode) -> str:
        return mode

    def deal_root(self, state, label, block):
        """Called with the dealer's level-1 block, before it is sent out."""

    def deal_branches(self, state, tree):
        """Called once every node has encoded its level-1 share."""

    # -- cheater hooks -----------------------------------------------------

    def before_verification(self, state):
        pass

    def after_verification(self, state):
        pass

    def report(self, state, node, label, bits):
        return bits

    def vcss_lie(self, state, node, round, value):
        return value

    def key_share(self, state, node, share):
        return share


class _DealerPauliMixin:
    def _weight(self, state):
        weight = self.params["weight"]
        return state.cfg.t + 1 if weight is None else int(weight)

    def _checked(self, positions, n):
        positions = [int(p) for p in positions]
        if any(p < 1 or p > n for p in positions):
            raise SchemeParameterError(f"Positions {positions} are not in 1..{n}.")
        return positions

    def _positions(self, state, n):
        positions = self.params["positions"]
        if positions is None:
            positions = list(range(1, min(self._weight(state), n) + 1))
        return self._checked(positions, n)


class DealerInconsistentTree(_DealerPauliMixin, AdversaryStrategy):
    """Deal a secret tree whose honest branches disagree on the secret.

    The dealer burns the whole tolerance first: the level-1 shares ``frame``
    (default ``1..t``) of the first X-round sub-tree carry ``X``, so those
    nodes land in ``B`` whatever the coins.  The level-1 shares ``positions``
    (default the first node outside ``frame``) of the secret tree carry ``X``
    as well.  Every Z round whose coin is 1 then exposes at least one node
    more, so the dealer passes only when all ``r`` Z coins are 0.

    A perfect code absorbs ``X`` on ``t + 1`` level-1 shares into a logical
    flip and ``t`` errors; ``frame=[]`` with ``t + 1`` positions deals such a
    consistent tree of another secret, which verification accepts.
    """

    kind = "dealer_inconsistent_tree"
    dealer = True
    defaults = {"positions": None, "frame": None}

    def _frame(self, state, n):
        frame = self.params["frame"]
        return self._checked(range(1, state.cfg.t + 1) if frame is None else frame, n)

    def _targets(self, state, n):
        frame = self._frame(state, n)
        positions = self.params["positions"]
        if positions is None:
            positions = [p for p in range(1, n + 1) if p not in frame][:1]
        positions = self._checked(positions, n)
        if not positions or set(positions) & set(frame):
            raise SchemeParameterError(
                f"Secret positions {positions} must be nonempty and avoid frame {frame}."
            )
        return positions, frame

    def deal_root(self, state, label, block):
        positions, frame = self._targets(state, len(block))
        if label == (0, 0):
            hit = positions
        elif label == (1, 1):
            hit = frame
        else:
            return
        for p in hit:
            state.tab.apply_pauli("X", [block[p - 1]])
        LOGGER.debug("Dealer corrupted level-1 shares %s of tree %s.", hit, label)


class DealerOverweightErrors(_DealerPauliMixin, AdversaryStrategy):
    """Deal one secret branch carrying more than ``t`` errors.

    The errors sit on the level-2 shares of ``branch``, so at most that one
    encoder is accused; on a perfect code they amount to a flipped level-1
    share plus ``t`` errors.
    """

    kind = "dealer_overweight_errors"
    dealer = True
    defaults = {"branch": 1, "weight": None, "positions": None, "pauli": "X"}

    def deal_branches(self, state, tree):
        if tree.label != (0, 0):
            return
        branch = int(self.params["branch"])
        positions = self._positions(state, tree.n)
        for j in positions:
            state.tab.apply_pauli(self.params["pauli"], [tree.qubit(branch, j)])
        LOGGER.debug("Dealer put errors at %s of branch %d.", positions, branch)


class DealerWrongAncilla(AdversaryStrategy):
    """Deal the Z-round ancillas in the wrong logical state."""

    kind = "dealer_wrong_ancilla"
    dealer = True
    defaults = {"mode": "zero"}

    def _validate(self):
        if self.params["mode"] not in ("zero", "plus"):
            raise SchemeParameterError(f"Unknown ancilla mode: <{self.params['mode']}>.")

    def ancilla_mode(self, state, label, mode):
        if label[0] == 0 and label[1] > 0:
            return self.params["mode"]
        return mode


class _CheaterMixin:
    def _phase_ok(self, phase):
        if self.params["phase"] not in (PRE, POST):
            raise SchemeParameterError(f"Unknown cheating phase: <{self.params['phase']}>.")
        return self.params["phase"] == phase

    def _branches(self, state):
        branches = self.params.get("branches")
        n = state.css.n
        return list(range(1, n + 1)) if branches is None else [int(i) for i in branches]

    def _act(self, state):
        raise NotImplementedError

    def before_verification(self, state):
        if self._phase_ok(PRE):
            self._act(state)

    def after_verification(self, state):
        if self._phase_ok(POST):
            self._act(state)


class CheaterPauli(_CheaterMixin, AdversaryStrategy):
    """Each cheater applies a Pauli to its own share of chosen branches."""

    kind = "cheater_pauli"
    defaults = {"pauli": "X", "branches": None, "phase": PRE}

    def _validate(self):
        if self.params["pauli"] not in ("X", "Y", "Z"):
            raise SchemeParameterError(f"Unknown Pauli: <{self.params['pauli']}>.")
        self._phase_ok(PRE)

    def _act(self, state):
        for j in sorted(state.cfg.cheaters):
            if j > state.css.n:
                continue
            qubits = [state.secret_tree.qubit(i, j) for i in self._branches(state)]
            state.net.require_owner(j, qubits)
            for q in qubits:
                state.tab.apply_pauli(self.params["pauli"], [q])


class CheaterClifford(_CheaterMixin, AdversaryStrategy):
    """Each cheater runs a Clifford circuit on its own shares.

    Gate operands are branch indices: ``["cnot", 1, 2]`` acts on the
    cheater's qubits of branches 1 and 2.
    """

    kind = "cheater_clifford"
    defaults = {"gates": (("h", 1),), "phase": PRE}

    def _validate(self):
        for gate in self.params["gates"]:
            if gate[0] not in ("h", "s", "cnot", "x", "y", "z"):
                raise SchemeParameterError(f"Unsupported gate: <{gate[0]}>.")
        self._phase_ok(PRE)

    def _act(self, state):
        for j in sorted(state.cfg.cheaters):
            if j > state.css.n:
                continue
            for name, *branches in self.params["gates"]:
                qubits = [state.secret_tree.qubit(int(i), j) for i in branches]
                state.net.require_owner(j, qubits)
                state.tab.apply_gate(name, qubits)


class CheaterBroadcastLie(AdversaryStrategy):
    """Cheaters announce wrong values (they cannot equivocate)."""

    kind = "cheater_broadcast_lie"
    defaults = {"rule": "flip", "targets": ("measurements", "vcss", "key")}

    def _validate(self):
        if self.params["rule"] not in ("flip", "zero", "random"):
            raise SchemeParameterError(f"Unknown lying rule: <{self.params['rule']}>.")

    def _lie_bit(self, state, bit):
        rule = self.params["rule"]
        if rule == "flip":
            return bit ^ 1
        if rule == "zero":
            return 0
        return int(state.rngs["adversary"].integers(2))

    def _applies(self, state, node, target):
        return node in state.cfg.cheaters and target in self.params["targets"]

    def report(self, state, node, label, bits):
        if not self._applies(state, node, "measurements"):
            return bits
        return [self._lie_bit(state, b) for b in bits]

    def vcss_lie(self, state, node, round, value):
        if not self._applies(state, node, "vcss"):
            return value
        return tuple(v ^ 1 for v in value)

    def key_share(self, state, node, share):
        if not self._applies(state, node, "key"):
            return share
        return replace(share, share_a=share.share_a ^ 1, share_b=share.share_b ^ 1)


STRATEGIES = {
    cls.kind: cls
    for cls in (
        AdversaryStrategy,
        DealerInconsistentTree,
        DealerOverweightErrors,
        DealerWrongAncilla,
        CheaterPauli,
        CheaterBroadcastLie,
        CheaterClifford,
    )
}


def make_strategy(kind=HONEST, params=None) -> AdversaryStrategy:
    if isinstance(kind, AdversaryStrategy):
        return kind
    try:
        cls = STRATEGIES[kind]
    except KeyError:
        raise SchemeParameterError(
            f"Unknown strategy <{kind}>; choose from {', '.join(sorted(STRATEGIES))}."
        ) from None
    return cls(**(params or {}))


def load_strategy(path) -> AdversaryStrategy:
    """Read ``{kind: ..., params: {...}}`` from a YAML file."""
    spec = yaml.safe_load(Path(path).read_text()) or {}
    if not isinstance(spec, dict):
        raise SchemeParameterError(f"Strategy file {path} must hold a mapping.")
    return make_strategy(spec.get("kind", HONEST), spec.get("params") or {})
