# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""End-to-end runs and Monte Carlo trial loops."""

from __future__ import annotations

import logging
from dataclasses import replace

import numpy as np

from .reconstruction import run_reconstruction
from .sharing import run_sharing
from .verification import PASS, run_verification

LOGGER = logging.getLogger("qvhss.protocol")


def run_full(cfg, css, secret, strategy=None, r=8, rng=None):
    """Sharing, verification and, when the dealer passes, reconstruction.

    ``rng`` defaults to ``cfg.seed``, so a configuration alone pins a run.
    """
    rng = cfg.seed if rng is None else rng
    state = run_sharing(cfg, css, secret, rng, strategy=strategy, r=r)
    if run_verification(state) != PASS:
        return state.transcript()
    return run_reconstruction(state)


def trial_seed(master: int, trial: int) -> int:
    """Seed of trial ``trial``, derived from ``(master, trial)`` only."""
    sequence = np.random.SeedSequence(master, spawn_key=(trial,))
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def _run_trial(args):
    cfg, css, secret, strategy, r, master, trial = args
    seed = trial_seed(master, trial)
    cfg = replace(cfg, seed=seed, trial=trial)
    return run_full(cfg, css, secret, strategy=strategy, r=r, rng=seed)


def run_trials(cfg, css, secret, strategy=None, r=8, trials=1, master=0, nprocs=1):
    """Yield the transcripts of ``trials`` independent runs, in trial order.

    With ``nprocs > 1`` the trials are spread over a process pool; the order
    of the rows does not depend on it.
    """
    jobs = ((cfg, css, secret, strategy, r, master, trial) for trial in range(trials))
    if nprocs is None or nprocs <= 1 or trials <= 1:
        for job in jobs:
            yield _run_trial(job)
        return

    from multiprocessing import Pool

    with Pool(processes=min(nprocs, trials)) as pool:
        yield from pool.imap(_run_trial, jobs, chunksize=max(1, trials // (4 * nprocs)))
