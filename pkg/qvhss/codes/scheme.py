# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Access-structure calculator for verifiable hybrid schemes.

A ``{p, t, n}`` scheme keeps any ``p`` nodes ignorant of the secret while
tolerating ``t`` active cheaters; a ``{p, t, t', n}`` ramp scheme additionally
reconstructs from any ``n - t'`` nodes.  The quantum part bounds ``t`` (and
``t + t'``) by ``(d - 1) // 2``; the classical part fixes ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..exceptions import SchemeParameterError

RABIN_LIKE = "rabin_like"
STINSON_LIKE = "stinson_like"
VCSS_KINDS = (RABIN_LIKE, STINSON_LIKE)


@dataclass(frozen=True)
class CssParameters:
    """Parameter-level record of an ``[[n, 1, d]]`` code family member."""

    n: int
    d: int
    name: str = ""


@dataclass(frozen=True)
class SchemeParams:
    p: int
    t: int
    n: int
    n_q: int
    n_c: int
    kind: str = "vhss"
    t_prime: int = 0

    def triple(self) -> str:
        if self.kind == "ramp_vhss":
            return f"{{{self.p},{self.t},{self.t_prime},{self.n}}}"
        return f"{{{self.p},{self.t},{self.n}}}"


TABLE1_FAMILIES = (
    ("2(t+1)^2", lambda t: 2 * (t + 1) ** 2),
    ("3t^2+3t+1", lambda t: 3 * t**2 + 3 * t + 1),
    ("6t^2+1", lambda t: 6 * t**2 + 1),
    ("8t^2+4t+1", lambda t: 8 * t**2 + 4 * t + 1),
)


def _budget(css) -> int:
    return (css.d - 1) // 2


def vhss_params(css, n_c: int, vcss_kind: str = RABIN_LIKE, t=None) -> SchemeParams:
    """Scheme parameters for ``css`` combined with an ``n_c``-node classical scheme.

    ``rabin_like`` gives maximum secrecy ``p = (n - 1) // 2``.  ``stinson_like``
    trades tolerance for secrecy: ``p = n - 3t - 1`` with ``t <= (n - 1) // 4``.
    """
    if vcss_kind not in VCSS_KINDS:
        raise SchemeParameterError(f"Unknown VCSS kind: <{vcss_kind}>.")
    if n_c < css.n:
        raise SchemeParameterError(f"n_c = {n_c} is smaller than the code length {css.n}.")
    n = max(n_c, css.n)
    budget = _budget(css)
    if t is None:
        t = budget if vcss_kind == RABIN_LIKE else min(budget, (n - 1) // 4)
    if t < 0 or t > budget:
        raise SchemeParameterError(f"t = {t} exceeds the code tolerance {budget} (d = {css.d}).")

    if vcss_kind == RABIN_LIKE:
        p = (n - 1) // 2
    else:
        if t > (n - 1) // 4:
            raise SchemeParameterError(f"t = {t} exceeds (n - 1) // 4 = {(n - 1) // 4}.")
        p = n - 3 * t - 1
    return SchemeParams(p=p, t=t, n=n, n_q=css.n, n_c=n_c)


def ramp_params(css, t: int, t_prime: int, n_c=None) -> SchemeParams:
    """``{p, t, t', n}`` ramp parameters with ``t + t' <= (d - 1) // 2``."""
    budget = _budget(css)
    if t < 0 or t_prime < 0 or t + t_prime > budget:
        raise SchemeParameterError(
            f"t + t' = {t + t_prime} exceeds (d - 1) // 2 = {budget} (d = {css.d})."
        )
    n_c = css.n if n_c is None else n_c
    n = max(n_c, css.n)
    return SchemeParams(
        p=(n - 1) // 2, t=t, n=n, n_q=css.n, n_c=n_c, kind="ramp_vhss", t_prime=t_prime
    )


def ramp_balanced(css, n_c=None) -> SchemeParams:
    """Ramp parameters with ``t = t'`` as large as the code allows."""
    half = _budget(css) // 2
    return ramp_params(css, half, half, n_c=n_c)


def table1_families(t: int) -> list[tuple[str, int]]:
    if t < 1:
        raise SchemeParameterError("Table families are defined for t >= 1.")
    return [(name, f(t)) for name, f in TABLE1_FAMILIES]


def strong_threshold_feasible(p: int, t: int, t_prime: int, n: int) -> bool:
    """Whether ``n - t' - t > p`` can hold for a strong threshold scheme.

    A strong threshold scheme has ``p = n - t' - 1``, so the condition reduces
    to ``t = 0``.
    """
    if min(p, t, t_prime, n) < 0:
        raise SchemeParameterError("Counts must be non-negative.")
    if p != n - t_prime - 1:
        raise SchemeParameterError(f"Strong threshold requires p = n - t' - 1, got p = {p}.")
    return n - t_prime - t > p


def table1(vhss_ts=(2, 4), ramp_ts=(1, 2)) -> str:
    """Render the table of example schemes.

    The vhss column at tolerance ``t`` uses the family member ``n(t)`` of
    distance ``2t + 1``; the ramp column at ``t = t'`` uses ``n(2t)`` of
    distance ``4t + 1``.
    """
    header = ["n"]
    header += [f"{{p,t,n}} t={t}" for t in vhss_ts]
    header += [f"{{p,t,t',n}} t={t}" for t in ramp_ts]
    lines = [" | ".join(header)]
    for name, family in TABLE1_FAMILIES:
        cells = [name]
        for t in vhss_ts:
            code = CssParameters(n=family(t), d=2 * t + 1, name=name)
            cells.append(vhss_params(code, code.n).triple())
        for t in ramp_ts:
            code = CssParameters(n=family(2 * t), d=4 * t + 1, name=name)
            cells.append(ramp_params(code, t, t).triple())
        lines.append(" | ".join(cells))
    return "\n".join(lines) + "\n"
