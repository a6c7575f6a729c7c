# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Mutable state of one protocol run."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from ..codes.scheme import RABIN_LIKE, VCSS_KINDS
from ..exceptions import SchemeParameterError
from ..network.netsim import NetworkConfig

LOGGER = logging.getLogger("qvhss.protocol")

STREAMS = ("dealer", "nodes", "reconstructor", "adversary")
"""Independent random streams of one run."""

TRANSCRIPT_FIELDS = (
    "trial",
    "seed",
    "code",
    "n",
    "n_q",
    "n_c",
    "t",
    "r",
    "strategy",
    "aborted",
    "B",
    "fidelity",
    "peak_workspace",
    "eps_c_bound",
)
"""Pinned column order of a transcript row; extra columns follow."""

EXTRA_FIELDS = ("abort_reason", "unrecoverable", "phase_peaks", "vcss_accused")

PROTOCOL_PHASES = ("sharing", "z_verification", "x_verification")


@dataclass(frozen=True)
class ProtocolConfig(NetworkConfig):
    """Network layout plus the protocol knobs of one run."""

    vcss_kind: str = RABIN_LIKE
    code_name: str = "steane7"
    trial: int = 0
    round_log: str | None = None
    debug: bool = False
    delta: float = 0.1
    delta_p: float = 0.1
    delta_pp: float = 0.1

    def __post_init__(self):
        super().__post_init__()
        if self.vcss_kind not in VCSS_KINDS:
            raise SchemeParameterError(f"Unknown VCSS kind: <{self.vcss_kind}>.")


def spawn_streams(rng) -> dict:
    """Named child generators of ``rng`` (a generator or an integer seed)."""
    if isinstance(rng, np.random.Generator):
        rng = int(rng.integers(2**63))
    children = np.random.SeedSequence(rng).spawn(len(STREAMS))
    return {name: np.random.default_rng(child) for name, child in zip(STREAMS, children)}


class CheaterSets:
    """Public bookkeeping of apparent cheaters.

    ``B_i[i]`` collects error positions seen in words encoded by node ``i``;
    ``B`` collects globally accused nodes.  Both only ever grow.
    """

    def __init__(self, n):
        self.n = n
        self.B_i = {i: set() for i in range(1, n + 1)}
        self.B = set()

    def __repr__(self):
        nonempty = {i: sorted(s) for i, s in self.B_i.items() if s}
        return f"CheaterSets(B={sorted(self.B)}, B_i={nonempty})"

    def add_positions(self, i, positions):
        self.B_i[i].update(int(p) for p in positions)

    def accuse(self, *nodes):
        self.B.update(int(i) for i in nodes)

    def promote(self, t):
        """Move every encoder with more than ``t`` error positions into ``B``."""
        for i, positions in self.B_i.items():
            if len(positions) > t:
                self.B.add(i)

    def snapshot(self):
        return sorted(self.B), {i: sorted(s) for i, s in self.B_i.items()}


@dataclass
class Transcript:
    """Outcome of one run."""

    trial: int
    seed: int
    code: str
    n: int
    n_q: int
    n_c: int
    t: int
    r: int
    strategy: str
    aborted: bool
    B: list
    fidelity: float | None
    peak_workspace: dict
    eps_c_bound: float
    abort_reason: str | None = None
    unrecoverable: bool = False
    phase_peaks: dict = field(default_factory=dict)
    vcss_accused: list = field(default_factory=list)

    def __post_init__(self):
        if self.aborted and self.fidelity is not None:
            raise ValueError("An aborted run has no fidelity.")

    def to_row(self) -> dict:
        row = {name: getattr(self, name) for name in TRANSCRIPT_FIELDS + EXTRA_FIELDS}
        row["peak_workspace"] = {str(k): v for k, v in sorted(self.peak_workspace.items())}
        row["phase_peaks"] = {
            phase: {str(k): v for k, v in sorted(peaks.items())}
            for phase, peaks in self.phase_peaks.items()
        }
        return row

    def to_json(self) -> str:
        return json.dumps(self.to_row(), sort_keys=False, default=json_default)


def json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable.")


@dataclass
class ProtocolState:
    """Everything a run carries from sharing to reconstruction."""

    cfg: object
    css: object
    r: int
    strategy: object
    tab: object
    net: object
    rngs: dict
    secret: object
    scheme: object = None
    key: tuple | None = None
    encrypted: object = None
    key_shares: dict = field(default_factory=dict)
    secret_tree: object = None
    sets: CheaterSets = None
    z_words: dict = field(default_factory=dict)
    x_words: dict = field(default_factory=dict)
    coins: dict = field(default_factory=dict)
    vcss_verdict: object = None
    fourier: bool = False
    aborted: bool = False
    abort_reason: str | None = None
    unrecoverable: bool = False
    reconstructed_key: tuple | None = None
    recovered: object = None
    fidelity: float | None = None
    chosen: tuple = ()

    def abort(self, reason):
        self.aborted = True
        self.abort_reason = reason
        LOGGER.log(15, "Dealer rejected: %s.", reason)

    def coin(self, label) -> int:
        bit = self.net.public_coin(label)
        self.coins[label] = bit
        return bit

    def transcript(self) -> Transcript:
        cfg = self.cfg
        phase_peaks = {
            phase: self.net.workspace(phase, cfg.quantum_nodes)
            for phase in PROTOCOL_PHASES + ("reconstruction",)
            if phase in self.net.meter.phase_peaks
        }
        # The protocol workspace excludes the reconstructor's final collection.
        peak = {
            j: max((phase_peaks.get(phase, {}).get(j, 0) for phase in PROTOCOL_PHASES), default=0)
            for j in cfg.quantum_nodes
        }
        return Transcript(
            trial=cfg.trial,
            seed=cfg.seed,
            code=cfg.code_name,
            n=cfg.n,
            n_q=cfg.n_q,
            n_c=cfg.n_c,
            t=cfg.t,
            r=self.r,
            strategy=self.strategy.name,
            aborted=self.aborted,
            B=sorted(self.sets.B),
            fidelity=None if self.aborted else self.fidelity,
            peak_workspace=peak,
            eps_c_bound=(2 + self.r) * 2.0 ** (-self.r),
            abort_reason=self.abort_reason,
            unrecoverable=self.unrecoverable,
            phase_peaks=phase_peaks,
            vcss_accused=sorted(self.vcss_verdict.accused) if self.vcss_verdict else [],
        )
