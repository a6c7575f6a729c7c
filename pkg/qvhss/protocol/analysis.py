# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Exact and sampled checks behind the secrecy and soundness arguments."""

from __future__ import annotations

import logging
from collections import defaultdict
from itertools import product

import numpy as np

from ..exceptions import TableauError
from ..quantum.tableau import AmplitudePair, LogicalTableau
from ..utils.statevector import MAX_QUBITS, tableau_to_statevector
from .sharing import run_sharing
from .state import ProtocolConfig

LOGGER = logging.getLogger("qvhss.protocol")

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def pad_average(secret: AmplitudePair) -> np.ndarray:
    """Density operator of the padded secret averaged over the four keys."""
    rho = secret.density()
    total = np.zeros((2, 2), dtype=complex)
    for a, b in product((0, 1), repeat=2):
        op = np.linalg.matrix_power(_X, a) @ np.linalg.matrix_power(_Z, b)
        total += op @ rho @ op.conj().T
    return total / 4


# -- measure-before versus measure-after -------------------------------------


def _enumerate(tab, qubits, prob=1.0, prefix=()):
    """Yield ``(bits, probability)`` for every possible Z outcome on ``qubits``."""
    if not qubits:
        yield prefix, prob
        return
    for outcome in (0, 1):
        branch = tab.copy()
        try:
            record = branch.measure_z(qubits[0], forced=outcome)
        except TableauError:
            continue
        yield from _enumerate(branch, qubits[1:], prob * record.probability, prefix + (outcome,))


def _two_blocks(css, secret):
    tab = LogicalTableau()
    carrier = tab.new_logical(secret)
    control = tab.encode(css, "secret", input_qubit=carrier)
    target = tab.encode(css, "plus")
    return tab, control, target


def _as_key(bits):
    return "".join(str(int(b)) for b in bits)


def q2c_distributions(css, secret: AmplitudePair, b: int, oracle=None) -> dict:
    """Distribution of the tested block's Z word, computed three ways.

    ``quantum``: transversal CNOT^b from the secret block, then measure.
    ``classical``: measure both blocks first, then XOR the words when ``b``.
    ``oracle``: the quantum order on a state vector (only for ``2n`` qubits
    within the oracle's reach; default whenever that holds).
    """
    tab, control, target = _two_blocks(css, secret)
    if b:
        for c, q in zip(control, target):
            tab.apply_cnot(c, q)
    quantum = defaultdict(float)
    for bits, prob in _enumerate(tab, list(target)):
        quantum[_as_key(bits)] += prob

    tab, control, target = _two_blocks(css, secret)
    classical = defaultdict(float)
    n = css.n
    for bits, prob in _enumerate(tab, list(control) + list(target)):
        word = np.array(bits[n:], dtype=np.uint8)
        if b:
            word ^= np.array(bits[:n], dtype=np.uint8)
        classical[_as_key(word)] += prob

    result = {"quantum": dict(quantum), "classical": dict(classical)}
    oracle = 2 * n <= MAX_QUBITS if oracle is None else oracle
    if oracle:
        tab, control, target = _two_blocks(css, secret)
        if b:
            for c, q in zip(control, target):
                tab.apply_cnot(c, q)
        state = tableau_to_statevector(tab)
        probs = state.z_distribution()
        cols = [tab.labels.index(q) for q in target]
        total = tab.num_qubits
        marginal = defaultdict(float)
        for index in np.flatnonzero(probs > 1e-15):
            bits = [(index >> (total - 1 - c)) & 1 for c in cols]
            marginal[_as_key(bits)] += float(probs[index])
        result["oracle"] = dict(marginal)
    return result


def total_variation(p: dict, q: dict) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


# -- coalition views ---------------------------------------------------------


def coalition(css) -> list[int]:
    """Nodes whose shares carry a full logical Z of the secret tree."""
    return [int(j) + 1 for j in np.flatnonzero(css.logical_z_support)]


def coalition_view(css, secret, seed, pad=True, nodes=None) -> np.ndarray:
    """Z outcomes of a coalition measuring its secret-tree shares right after sharing.

    Nodes in ``nodes`` (default :func:`coalition`) measure every share they
    hold.  Row ``i - 1`` holds branch ``i``, column ``k`` node ``nodes[k]``.
    """
    nodes = coalition(css) if nodes is None else list(nodes)
    cfg = ProtocolConfig(n_q=css.n, n_c=css.n, t=0, seed=seed, code_name=css.name)
    state = run_sharing(cfg, css, secret, seed, r=1, pad=pad)
    tree = state.secret_tree
    rng = state.rngs["adversary"]
    view = np.zeros((css.n, len(nodes)), dtype=np.uint8)
    for k, j in enumerate(nodes):
        for i in range(1, css.n + 1):
            view[i - 1, k] = state.tab.measure_z(tree.qubit(i, j), rng=rng).outcome
    return view


def branch_word(css, view, nodes=None) -> np.ndarray:
    """Per branch, the parity of the view over the logical-Z support.

    When the coalition covers that support, entry ``i`` is the Z value of
    level-1 share ``i``, so the word is a codeword of ``V``.
    """
    nodes = coalition(css) if nodes is None else list(nodes)
    support = set(coalition(css))
    cols = [k for k, j in enumerate(nodes) if j in support]
    return np.bitwise_xor.reduce(view[:, cols], axis=1)


def coalition_witness(css, secret, seed, pad=True, nodes=None) -> int:
    """Parity of :func:`branch_word` over the logical-Z support.

    This is the Z value of the dealt logical qubit whenever the coalition
    covers that support.
    """
    nodes = coalition(css) if nodes is None else list(nodes)
    word = branch_word(css, coalition_view(css, secret, seed, pad=pad, nodes=nodes), nodes)
    return int(np.bitwise_xor.reduce(word[css.logical_z_support.astype(bool)]))


STATISTICS = ("witness", "branches", "view")


def view_histogram(css, secret, trials, seed=0, pad=True, statistic="view") -> dict:
    """Empirical distribution of a coalition statistic over ``trials`` sharings.

    ``view`` keys the full outcome table (nodes major), ``branches`` the
    :func:`branch_word` and ``witness`` its logical-Z parity.  A Z-measured
    sharing is uniform over the words of ``V`` with a given Z value, so the
    view bits beyond the branch word are uniform whatever the secret and the
    branch word is uniform given its parity: both smaller statistics lose
    nothing about the secret, and they need far fewer samples.
    """
    if statistic not in STATISTICS:
        raise ValueError(f"Unknown view statistic: <{statistic}>.")
    mask = css.logical_z_support.astype(bool)
    counts = defaultdict(int)
    for s in np.random.SeedSequence(seed).generate_state(trials):
        view = coalition_view(css, secret, int(s), pad=pad)
        if statistic == "view":
            bits = view.T.reshape(-1)
        else:
            bits = branch_word(css, view)
            if statistic == "witness":
                bits = [np.bitwise_xor.reduce(bits[mask])]
        counts[_as_key(bits)] += 1
    return {k: v / trials for k, v in counts.items()}


def view_distance(
    css, trials, seed=0, pad=True, secrets=("zero", "plus"), statistic="witness"
) -> float:
    """Estimated total variation distance of a coalition statistic under two secrets."""
    hists = [
        view_histogram(
            css,
            AmplitudePair.preset(name),
            trials,
            seed=[seed, k],
            pad=pad,
            statistic=statistic,
        )
        for k, name in enumerate(secrets)
    ]
    tv = total_variation(*hists)
    LOGGER.log(15, "Coalition %s distance %.4f (pad=%s).", statistic, tv, pad)
    return tv
