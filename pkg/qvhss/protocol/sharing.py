# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Sharing phase: pad the secret, share the key, deal the secret tree."""

from __future__ import annotations

import logging

from ..codes.scheme import vhss_params
from ..exceptions import SchemeParameterError
from ..network.adversary import make_strategy
from ..network.netsim import Network
from ..quantum.tableau import AmplitudePair, LogicalTableau
from ..vcss.sharing import ShamirICScheme, default_tolerance, deserialize_share, serialize_share
from .state import CheaterSets, ProtocolState, spawn_streams
from .trees import SECRET, share_tree

LOGGER = logging.getLogger("qvhss.protocol")

KEY_SHARE = "key_share"


def key_scheme(cfg, css, rounds) -> ShamirICScheme:
    """Classical scheme whose sharing degree gives the run its secrecy threshold."""
    params = vhss_params(css, cfg.n_c, cfg.vcss_kind, t=cfg.t)
    degree = min(params.p, cfg.n_c - 1)
    tolerance = min(cfg.t, default_tolerance(cfg.n_c, degree))
    return ShamirICScheme(cfg.n_c, degree, tolerance=tolerance, rounds=rounds)


def check_parameters(cfg, css):
    if cfg.n_q != css.n:
        raise SchemeParameterError(f"n_q = {cfg.n_q} differs from the code length {css.n}.")
    if cfg.t > css.t:
        raise SchemeParameterError(
            f"t = {cfg.t} exceeds (d - 1) // 2 = {css.t} for {css.name} (d = {css.d})."
        )


def run_sharing(cfg, css, secret, rng, strategy=None, r=8, pad=True) -> ProtocolState:
    """Encrypt ``secret`` with a fresh pad, share the key and deal the secret tree.

    Parameters
    ----------
    cfg : ProtocolConfig
    css : CssCode
    secret : AmplitudePair
    rng : numpy.random.Generator or int
        Source of the run's private random streams.
    strategy : AdversaryStrategy or str, optional
    r : int
        Verification rounds, used for both the quantum and the key checks.
    pad : bool
        With ``False`` the key is fixed to ``(0, 0)``, so the plaintext is
        dealt; only meant for the secrecy estimators.

    """
    check_parameters(cfg, css)
    if r < 1:
        raise SchemeParameterError("At least one verification round is required.")
    if not isinstance(secret, AmplitudePair):
        secret = AmplitudePair.parse(str(secret))

    state = ProtocolState(
        cfg=cfg,
        css=css,
        r=r,
        strategy=make_strategy(strategy or "honest"),
        tab=LogicalTableau(debug=cfg.debug),
        net=Network(cfg, round_log=cfg.round_log),
        rngs=spawn_streams(rng),
        secret=secret,
    )
    state.sets = CheaterSets(css.n)
    net = state.net
    net.set_phase("sharing")

    dealer_rng = state.rngs["dealer"]
    state.key = (int(dealer_rng.integers(2)), int(dealer_rng.integers(2))) if pad else (0, 0)
    state.encrypted = secret.encrypt(*state.key)
    LOGGER.debug("Pad key drawn; encrypted secret %s.", state.encrypted)

    state.scheme = key_scheme(cfg, css, r)
    for share in state.scheme.share(state.key, dealer_rng):
        net.send_private(cfg.dealer, share.node, serialize_share(share), kind=KEY_SHARE)

    carrier = state.tab.new_logical(state.encrypted)
    net.assign(cfg.dealer, [carrier])
    state.secret_tree = share_tree(state, SECRET, "secret", carrier=carrier)

    for j in range(1, cfg.n_c + 1):
        (message,) = net.inbox(j, kind=KEY_SHARE)
        state.key_shares[j] = deserialize_share(message.payload)
    LOGGER.log(
        15,
        "Sharing done after %d rounds; peak workspace %s.",
        net.round,
        net.workspace("sharing", cfg.quantum_nodes),
    )
    return state
