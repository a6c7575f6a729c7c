# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Analytical bounds reported next to the simulated frequencies."""

from __future__ import annotations

from typing import NamedTuple

from ..exceptions import SchemeParameterError


class Bounds(NamedTuple):
    abort_lower: float
    eps_c: float
    fidelity_lower: float


def eps_c(r: int) -> float:
    """Failure probability of the verification, ``(2 + r) 2^-r``."""
    return (2 + r) * 2.0 ** (-r)


def theoretical_bounds(r, delta=0.1, delta_p=0.1, delta_pp=0.1) -> Bounds:
    """Lower bound on the abort probability of a cheating dealer, ``eps_c``, and the
    fidelity lower bound ``1 - eps_c``.

    ``delta``, ``delta_p`` and ``delta_pp`` are the thresholds on how far the
    tested trees may sit from the code space; they are analysis knobs only.

    >>> b = theoretical_bounds(8)
    >>> round(b.eps_c, 4), round(b.abort_lower, 4), round(b.fidelity_lower, 4)
    (0.0391, 0.9609, 0.9609)

    """
    if r < 1:
        raise SchemeParameterError(f"r = {r} must be at least 1.")
    for name, value in (("delta", delta), ("delta_p", delta_p), ("delta_pp", delta_pp)):
        if not 0.0 < value < 1.0:
            raise SchemeParameterError(f"{name} = {value} must lie in (0, 1).")
    per_round = 2.0 ** (-r)
    abort_lower = 1.0 - max(per_round / delta, per_round / delta_p, per_round / delta_pp)
    eps = eps_c(r)
    return Bounds(abort_lower, eps, 1.0 - eps)
