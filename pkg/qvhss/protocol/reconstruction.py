# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Reconstruction phase.

Every node hands its secret-tree qubits and its key share to the
reconstructor ``R``.  ``R`` corrects each branch not in ``B``, keeps a random
set of ``n_q - 2t`` good branches and reads the logical qubit they carry with
level-1 logical operators supported on those branches only.  Erasure recovery
and decoding are realized this way: the operators pick the representative
that a recovery circuit would map onto its output qubit.
"""

from __future__ import annotations

import logging

import numpy as np

from ..codes import gf2
from ..exceptions import VCSSError
from ..quantum.pauli import PauliString
from ..quantum.tableau import correct_block
from ..vcss.sharing import deserialize_share, serialize_share

LOGGER = logging.getLogger("qvhss.protocol")

KEY_RETURN = "key_return"

_PAD = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def restricted_representative(base, generator, erased):
    """``base + c·generator`` vanishing on the 0-indexed ``erased`` positions.

    Returns ``None`` when no such vector exists.
    """
    base = gf2.as_bits(base).reshape(-1)
    erased = sorted(int(p) for p in erased)
    if not erased:
        return base.copy()
    generator = gf2.as_bits(generator, ndim=2)
    coeffs = gf2.row_combination(generator[:, erased], base[erased])
    if coeffs is None:
        return None
    return base ^ gf2.mat_vec(generator.T, coeffs)


def tree_logicals(css, tree, chosen):
    """Logical X and Z of ``tree`` supported on the branches ``chosen``.

    Returns ``(x_op, z_op, qubits)``, or ``None`` when the unchosen branches
    cannot be treated as erasures.
    """
    n = css.n
    erased = [i - 1 for i in range(1, n + 1) if i not in chosen]
    u_s = restricted_representative(css.logical_x_support, css.w_perp.generator, erased)
    z_s = restricted_representative(css.logical_z_support, css.v_perp.generator, erased)
    if u_s is None or z_s is None:
        return None
    qubits, x, z = [], [], []
    for i in chosen:
        qubits += tree.branch(i)
        x.append(css.logical_x_support if u_s[i - 1] else np.zeros(n, dtype=np.uint8))
        z.append(css.logical_z_support if z_s[i - 1] else np.zeros(n, dtype=np.uint8))
    x_op = PauliString.x_type(np.concatenate(x))
    z_op = PauliString.z_type(np.concatenate(z))
    return x_op, z_op, qubits


def _collect(state):
    cfg, net = state.cfg, state.net
    reconstructor = cfg.reconstructor
    for j in cfg.quantum_nodes:
        if j != reconstructor:
            net.send_qubits(j, reconstructor, state.secret_tree.held_by(j))
    for j in range(1, cfg.n_c + 1):
        if j == reconstructor:
            continue
        share = state.strategy.key_share(state, j, state.key_shares[j])
        net.send_private(j, reconstructor, serialize_share(share), kind=KEY_RETURN)
    net.advance()
    collected = [state.key_shares[reconstructor]]
    collected += [deserialize_share(m.payload) for m in net.inbox(reconstructor, KEY_RETURN)]
    return collected


def _correct_branches(state):
    css, t, sets = state.css, state.cfg.t, state.sets
    rng = state.rngs["reconstructor"]
    for i in range(1, css.n + 1):
        if i in sets.B:
            continue
        corrected = correct_block(state.tab, css, state.secret_tree.branch(i), rng=rng)
        if corrected is None:
            LOGGER.debug("Branch %d has an uncorrectable syndrome.", i)
            sets.accuse(i)
            continue
        x_err, z_err = corrected
        extended = sets.B_i[i] | {p + 1 for p in x_err | z_err}
        if len(extended) > t:
            LOGGER.debug("Branch %d: extended error set %s exceeds t.", i, sorted(extended))
            sets.accuse(i)


def _pad_operator(key):
    a, b = key
    op = np.eye(2, dtype=complex)
    if a:
        op = _PAD["x"] @ op
    if b:
        op = _PAD["z"] @ op
    return op


def recovered_fidelity(state, x_op, z_op, qubits) -> float:
    """Fidelity of the decrypted logical qubit with the dealer's secret."""
    tab, key = state.tab, state.reconstructed_key
    if tab.live:
        amplitudes = tab.read_logical(x_op, z_op, qubits)
        state.recovered = amplitudes.decrypt(*key)
        return state.secret.fidelity(state.recovered)
    rho = tab.logical_density(x_op, z_op, qubits)
    pad = _pad_operator(key)
    rho = pad @ rho @ pad.conj().T
    psi = state.secret.as_array()
    state.recovered = rho
    return float(np.clip(np.vdot(psi, rho @ psi).real, 0.0, 1.0))


def run_reconstruction(state):
    """Reconstruct the secret at ``cfg.reconstructor`` and return the run's transcript."""
    cfg, css, net = state.cfg, state.css, state.net
    net.set_phase("reconstruction")
    state.strategy.after_verification(state)
    collected = _collect(state)

    try:
        state.reconstructed_key = state.scheme.reconstruct(collected)
    except VCSSError as e:
        LOGGER.warning("Key reconstruction failed: %s", e)
        state.unrecoverable = True
        return state.transcript()

    _correct_branches(state)
    accused = len(state.sets.B)
    if accused > 2 * cfg.t:
        LOGGER.warning("|B| = %d exceeds 2t = %d; secret unrecoverable.", accused, 2 * cfg.t)
        state.unrecoverable = True
        return state.transcript()

    good = [i for i in range(1, css.n + 1) if i not in state.sets.B]
    size = css.n - 2 * cfg.t
    picks = state.rngs["reconstructor"].choice(len(good), size=size, replace=False)
    state.chosen = tuple(sorted(good[k] for k in picks))
    logicals = tree_logicals(css, state.secret_tree, state.chosen)
    if logicals is None:
        LOGGER.warning("Branches %s do not determine the secret.", list(state.chosen))
        state.unrecoverable = True
        return state.transcript()

    x_op, z_op, qubits = logicals
    net.require_owner(cfg.reconstructor, qubits)
    state.fidelity = recovered_fidelity(state, x_op, z_op, qubits)
    LOGGER.log(
        15,
        "Reconstructed from branches %s with key %s: fidelity %.6f.",
        list(state.chosen),
        state.reconstructed_key,
        state.fidelity,
    )
    return state.transcript()
