# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Verification phase.

The key sharing is checked first.  Then ``r`` Z rounds test the secret tree
against ``|+̄⟩`` ancilla trees, and ``r`` X rounds test it, in the Fourier
basis, against ``|0̄⟩`` ancilla trees that are themselves checked by ``r``
sub-trees each.  Every ancilla tree is dealt, used and measured before the
next one exists.  All announced words are decoded once the rounds are over.
"""

from __future__ import annotations

import logging

import numpy as np

from ..codes.classical import bounded_distance_decode
from .trees import share_tree

LOGGER = logging.getLogger("qvhss.protocol")

PASS = "pass"
ABORT = "abort"

MEASUREMENT = "measurement"


def _verify_key(state) -> bool:
    cfg, net, scheme = state.cfg, state.net, state.scheme
    shares = [state.key_shares[j] for j in range(1, cfg.n_c + 1)]

    def beacon(label):
        return net.public_element(label, scheme.field.order)

    def broadcast(sender, payload):
        net.broadcast(sender, payload, kind="vcss")

    def lie(node, round, value):
        return state.strategy.vcss_lie(state, node, round, value)

    state.vcss_verdict = scheme.verify(shares, beacon, broadcast, lie, label="vcss")
    net.advance()
    if state.vcss_verdict.accused:
        LOGGER.log(15, "Key check accused nodes %s.", sorted(state.vcss_verdict.accused))
    return state.vcss_verdict.accepted


def _transversal_cnot(state, control, target):
    controls, targets = [], []
    for (i, j), c in sorted(control.leaves.items()):
        q = target.qubit(i, j)
        state.net.require_owner(j, [c, q])
        controls.append(c)
        targets.append(q)
    state.tab.apply_cnots(controls, targets)


def _transversal_h(state, tree):
    qubits = []
    for (i, j), q in sorted(tree.leaves.items()):
        state.net.require_owner(j, [q])
        qubits.append(q)
    state.tab.apply_hs(qubits)


def _measure_tree(state, tree) -> np.ndarray:
    """Every holder measures its leaves of ``tree`` and broadcasts the bits.

    Returns the announced words, row ``i`` being branch ``i``.
    """
    tab, net = state.tab, state.net
    n = tree.n
    rng = state.rngs["nodes"]
    for j in range(1, n + 1):
        qubits = tree.held_by(j)
        bits = tab.measure_and_retire_many(qubits, rng=rng)
        net.release(j, qubits)
        bits = state.strategy.report(state, j, tree.label, bits)
        net.broadcast(j, (tree.label, tuple(int(b) for b in bits)), kind=MEASUREMENT)

    words = np.zeros((n, n), dtype=np.uint8)
    for message in net.broadcasts(kind=MEASUREMENT):
        label, bits = message.payload
        if label == tree.label:
            words[:, message.sender - 1] = bits
    net.advance()
    return words


def _z_round(state, m):
    anc = share_tree(state, (0, m), state.strategy.ancilla_mode(state, (0, m), "plus"))
    if state.coin(f"z:{m}"):
        _transversal_cnot(state, state.secret_tree, anc)
    state.z_words[(0, m)] = _measure_tree(state, anc)


def _x_round(state, ell):
    r = state.r
    strategy = state.strategy
    main = share_tree(state, (ell, 0), strategy.ancilla_mode(state, (ell, 0), "zero"))
    for m in range(1, r + 1):
        sub = share_tree(state, (ell, m), strategy.ancilla_mode(state, (ell, m), "zero"))
        if state.coin(f"x:{ell}:{m}"):
            _transversal_cnot(state, main, sub)
        state.z_words[(ell, m)] = _measure_tree(state, sub)

    if not state.fourier:
        _transversal_h(state, state.secret_tree)
        state.fourier = True
    _transversal_h(state, main)
    if state.coin(f"x:{ell}:0"):
        _transversal_cnot(state, state.secret_tree, main)
    state.x_words[(ell, 0)] = _measure_tree(state, main)


def _decode_word(state, label, words, code, value_of) -> bool:
    """Decode one announced tree; returns ``False`` when the root cannot be decoded."""
    sets = state.sets
    n = words.shape[0]
    values = np.zeros(n, dtype=np.uint8)
    for i in range(1, n + 1):
        leaf = bounded_distance_decode(code, words[i - 1])
        if leaf.ok:
            sets.add_positions(i, (p + 1 for p in leaf.error_positions))
            values[i - 1] = value_of(leaf.codeword)
        else:
            LOGGER.debug("Tree %s: branch %d does not decode.", label, i)
            sets.accuse(i)
            values[i - 1] = value_of(words[i - 1])
    root = bounded_distance_decode(code, values)
    if not root.ok:
        LOGGER.log(15, "Tree %s: root word %s does not decode.", label, values.tolist())
        return False
    if root.error_positions:
        LOGGER.debug("Tree %s: root errors at %s.", label, sorted(root.error_positions))
    sets.accuse(*(p + 1 for p in root.error_positions))
    return True


def decode_rounds(state) -> str:
    """Turn every announced word into cheater-set updates, then apply the abort rule."""
    css, t = state.css, state.cfg.t
    for label, words in sorted(state.z_words.items()):
        if not _decode_word(state, label, words, css.v, css.logical_value_v):
            state.abort(f"root of tree {label} does not decode")
            return ABORT
    for label, words in sorted(state.x_words.items()):
        if not _decode_word(state, label, words, css.w, css.logical_value_w):
            state.abort(f"root of tree {label} does not decode")
            return ABORT
    state.sets.promote(t)
    if len(state.sets.B) > t:
        state.abort(f"|B| = {len(state.sets.B)} exceeds t = {t}")
        return ABORT
    return PASS


def run_verification(state) -> str:
    """Run every verification round on ``state``; returns ``"pass"`` or ``"abort"``."""
    net = state.net
    if not _verify_key(state):
        state.abort("key sharing rejected")
        return ABORT

    state.strategy.before_verification(state)
    net.set_phase("z_verification")
    for m in range(1, state.r + 1):
        _z_round(state, m)
    net.set_phase("x_verification")
    for ell in range(1, state.r + 1):
        _x_round(state, ell)

    verdict = decode_rounds(state)
    if verdict == PASS and state.fourier:
        _transversal_h(state, state.secret_tree)
        state.fourier = False
    LOGGER.log(
        15,
        "Verification %s: B = %s, coins %s.",
        verdict,
        sorted(state.sets.B),
        "".join(str(state.coins[k]) for k in state.coins),
    )
    return verdict
