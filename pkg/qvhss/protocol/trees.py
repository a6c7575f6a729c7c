# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Two-level encoding trees.

The dealer encodes a state into ``n`` level-1 shares and sends share ``i`` to
node ``i``; node ``i`` encodes it again into ``n`` level-2 shares and sends
share ``(i, j)`` to node ``j``.  A tree is labelled ``(ell, m)``: ``(0, 0)``
is the secret, ``(0, m)`` the Z-round ancillas, ``(ell, 0)`` and ``(ell, m)``
the X-round ancillas.
"""

from __future__ import annotations

from dataclasses import dataclass

SECRET = (0, 0)


@dataclass(frozen=True, order=True)
class TreeCoord:
    i: int
    j: int
    ell: int = 0
    m: int = 0

    def __post_init__(self):
        if self.i < 1 or self.j < 1 or self.ell < 0 or self.m < 0:
            raise ValueError(f"Invalid tree coordinate {self}.")

    @property
    def label(self) -> tuple[int, int]:
        return (self.ell, self.m)


class ShareTree:
    """Leaf qubit ids of one tree, indexed by ``(i, j)`` from 1."""

    def __init__(self, label, n):
        self.label = tuple(label)
        self.n = n
        self.leaves = {}

    def __repr__(self):
        return f"ShareTree(label={self.label}, n={self.n})"

    def qubit(self, i, j) -> int:
        return self.leaves[(i, j)]

    def branch(self, i) -> list[int]:
        """Level-2 shares encoded by node ``i``, ordered by holder."""
        return [self.leaves[(i, j)] for j in range(1, self.n + 1)]

    def held_by(self, j) -> list[int]:
        """Qubits node ``j`` holds, ordered by branch."""
        return [self.leaves[(i, j)] for i in range(1, self.n + 1)]

    def coords(self) -> list[TreeCoord]:
        ell, m = self.label
        return [TreeCoord(i, j, ell, m) for i, j in sorted(self.leaves)]

    def qubits(self) -> list[int]:
        return [self.leaves[key] for key in sorted(self.leaves)]


def share_tree(state, label, mode, carrier=None) -> ShareTree:
    """Deal one tree through the network; returns once every leaf is delivered.

    ``mode`` is ``"secret"`` (encode ``carrier``, held by the dealer),
    ``"zero"`` or ``"plus"``.
    """
    tab, net, css = state.tab, state.net, state.css
    dealer = state.cfg.dealer
    n = css.n
    if mode == "secret":
        net.require_owner(dealer, [carrier])
        block = tab.encode(css, "secret", input_qubit=carrier)
        net.assign(dealer, [q for q in block if q != carrier])
    else:
        block = tab.encode(css, mode)
        net.assign(dealer, block)
    state.strategy.deal_root(state, tuple(label), block)
    for i in range(1, n + 1):
        net.send_qubits(dealer, i, [block[i - 1]])
    net.advance()

    tree = ShareTree(label, n)
    for i in range(1, n + 1):
        share = block[i - 1]
        net.require_owner(i, [share])
        sub = tab.encode(css, "secret", input_qubit=share)
        net.assign(i, [q for q in sub if q != share])
        for j in range(1, n + 1):
            tree.leaves[(i, j)] = sub[j - 1]
    state.strategy.deal_branches(state, tree)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if j != i:
                net.send_qubits(i, j, [tree.qubit(i, j)])
    net.advance()
    return tree
