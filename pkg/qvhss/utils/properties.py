# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Invariant suites behind ``qvhss props``.

Each suite is a list of checks with fixed seeds; a check returns a
:class:`CheckResult`.  ``trials`` scales the sampled checks and leaves the
exhaustive ones alone.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

LOGGER = logging.getLogger("qvhss.protocol")

SUITES = ("codes", "tableau", "vcss", "protocol", "secrecy")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def __str__(self):
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.suite}.{self.name}: {self.detail}"


# -- codes ---------------------------------------------------------------


def _check_steane(seed, trials):
    from ..codes.css import steane_code

    css = steane_code()
    ok = (css.n, css.d) == (7, 3) and css._enumerate_distance() == 3
    return ok, f"{css!r}"


def _check_table1(seed, trials):
    from ..codes.scheme import table1
    from ..data import load

    golden = load.readable("table1.txt").read_text()
    return table1() == golden, "16 cells against the golden file"


def _check_strong_threshold(seed, trials):
    from ..codes.scheme import strong_threshold_feasible

    feasible = [
        t
        for t in range(1, 11)
        if strong_threshold_feasible(p=4 * t + 1 - t - 1, t=t, t_prime=t, n=4 * t + 1)
    ]
    return not feasible, f"feasible for t in {feasible}" if feasible else "infeasible for t=1..10"


def _check_stinson(seed, trials):
    from ..codes.scheme import STINSON_LIKE, CssParameters, table1_families, vhss_params

    bad = []
    for t in range(1, 5):
        for name, n in table1_families(t):
            params = vhss_params(CssParameters(n=n, d=2 * t + 1, name=name), n, STINSON_LIKE)
            if params.n < params.p + 3 * params.t + 1:
                bad.append((name, t))
    return not bad, f"violations {bad}" if bad else "n >= p + 3t + 1 throughout"


def _check_ramp_budget(seed, trials):
    from ..codes.scheme import CssParameters, ramp_params
    from ..exceptions import SchemeParameterError

    code = CssParameters(n=25, d=5)
    try:
        ramp_params(code, 2, 1)
    except SchemeParameterError:
        return True, "t + t' > (d - 1) // 2 refused"
    return False, "over-budget ramp parameters accepted"


# -- tableau -------------------------------------------------------------

_GATES = ("h", "s", "cnot", "x", "y", "z")


def _full_space(n):
    from ..codes.classical import from_generator

    return from_generator(np.eye(n, dtype=np.uint8), name=f"F2^{n}")


def _random_circuit_matches(rng, max_qubits=6, depth=12):
    from ..quantum.pauli import PauliString
    from ..quantum.tableau import AmplitudePair, LogicalTableau
    from .statevector import StateVector, tableau_to_statevector

    k = int(rng.integers(1, max_qubits + 1))
    tab = LogicalTableau()
    if rng.random() < 0.5:
        secret = AmplitudePair.from_vector(rng.normal(size=2) + 1j * rng.normal(size=2))
        qubits = [tab.new_logical(secret)] + tab.allocate(k - 1)
        oracle = StateVector.from_product(secret.as_array(), k)
    else:
        qubits = tab.allocate(k)
        oracle = StateVector(k)
    z = PauliString.from_label("Z")
    for _ in range(depth):
        name = _GATES[int(rng.integers(len(_GATES)))] if rng.random() < 0.8 else "measure"
        if name == "measure":
            q = int(rng.integers(k))
            p_tab = tab.outcome_probability(z, [qubits[q]], 1)
            p_oracle = oracle.probability(q, 1)
            if abs(p_tab - p_oracle) > 1e-9:
                return False
            outcome = int(rng.random() < p_oracle)
            tab.measure_z(qubits[q], forced=outcome)
            oracle.measure_z(q, forced=outcome)
            continue
        if name == "cnot":
            if k < 2:
                continue
            a, b = rng.choice(k, size=2, replace=False)
            cols = (int(a), int(b))
        else:
            cols = (int(rng.integers(k)),)
        tab.apply_gate(name, [qubits[c] for c in cols])
        oracle.apply_gate(name, cols)
    return abs(tableau_to_statevector(tab).overlap(oracle) - 1.0) < 1e-9


def _check_tableau_oracle(seed, trials):
    rng = np.random.default_rng(seed)
    count = trials or 500
    failures = sum(not _random_circuit_matches(rng) for _ in range(count))
    return failures == 0, f"{count - failures}/{count} circuits agree with the oracle"


def _check_reduction(seed, trials):
    from ..codes.classical import repetition
    from ..codes.css import CssCode
    from ..protocol.analysis import q2c_distributions, total_variation
    from ..quantum.tableau import AmplitudePair

    rep = repetition(3)
    css = CssCode(rep, _full_space(3), name="rep3")
    worst = 0.0
    for name, b in product(("zero", "plus", "generic"), (0, 1)):
        dists = q2c_distributions(css, AmplitudePair.preset(name), b, oracle=True)
        worst = max(
            worst,
            total_variation(dists["quantum"], dists["classical"]),
            total_variation(dists["quantum"], dists["oracle"]),
        )
    return worst < 1e-12, f"largest distance {worst:.3g}"


# -- vcss ----------------------------------------------------------------


def _check_vcss_secrecy(seed, trials):
    """Exhaustive over GF(16): any ``t`` evaluations are uniform whatever the key bit."""
    from ..vcss.field import GF16

    n_c = 7
    for t in (1, 2):
        for points in combinations(range(1, n_c + 1), t):
            views = []
            for bit in (0, 1):
                counts = {}
                for coeffs in product(GF16.elements(), repeat=t):
                    poly = [bit, *coeffs]
                    view = tuple(GF16.eval_poly(poly, x) for x in points)
                    counts[view] = counts.get(view, 0) + 1
                views.append(counts)
            if views[0] != views[1]:
                return False, f"t={t}, points {points} distinguish the key"
    return True, "t-share views identical for t = 1, 2"


def _check_vcss_robust(seed, trials):
    from ..vcss.field import GF16
    from ..vcss.sharing import ShamirICScheme, corrupt_share

    rng = np.random.default_rng(seed)
    scheme = ShamirICScheme(7, 2, tolerance=2, rounds=1, field=GF16)
    patterns = 0
    for key in product((0, 1), repeat=2):
        shares = scheme.share(key, rng)
        for size in range(0, scheme.tolerance + 1):
            for bad in combinations(range(7), size):
                collected = [corrupt_share(s) if k in bad else s for k, s in enumerate(shares)]
                if scheme.reconstruct(collected) != key:
                    return False, f"key {key} lost with corrupted shares {bad}"
                patterns += 1
    return True, f"{patterns} corruption patterns reconstructed"


def _check_vcss_rejection(seed, trials):
    from ..vcss.sharing import ShamirICScheme, rng_beacon

    rng = np.random.default_rng(seed)
    r = 8
    count = trials or 2000
    scheme = ShamirICScheme(7, 3, tolerance=1, rounds=r)
    rejected = 0
    for _ in range(count):
        shares = scheme.deal_inconsistent((1, 0), rng)
        rejected += not scheme.verify(shares, rng_beacon(rng)).accepted
    rate = rejected / count
    floor = 1 - 2.0**-r - 3 * np.sqrt(2.0**-r / count)
    return rate >= floor, f"rejection rate {rate:.4f} (floor {floor:.4f})"


# -- protocol ------------------------------------------------------------


def _runs(strategy, trials, seed, t=1, r=2, cheaters=(), params=None):
    from ..codes.css import steane_code
    from ..network.adversary import make_strategy
    from ..protocol.run import run_trials
    from ..protocol.state import ProtocolConfig
    from ..quantum.tableau import AmplitudePair

    css = steane_code()
    cfg = ProtocolConfig(n_q=7, n_c=7, t=t, cheaters=frozenset(cheaters), seed=seed)
    return list(
        run_trials(
            cfg,
            css,
            AmplitudePair.preset("generic"),
            make_strategy(strategy, params),
            r=r,
            trials=trials,
            master=seed,
        )
    )


def _check_completeness(seed, trials):
    runs = _runs("honest", trials or 20, seed)
    bad = [tr.trial for tr in runs if tr.aborted or abs(tr.fidelity - 1.0) > 1e-9]
    return not bad, f"failed trials {bad}" if bad else f"{len(runs)} honest runs, fidelity 1"


def _check_workspace(seed, trials):
    (tr,) = _runs("honest", 1, seed, r=8)
    peaks = {phase: max(p.values()) for phase, p in tr.phase_peaks.items()}
    ok = (
        peaks.get("sharing") == 7
        and peaks.get("z_verification", 0) <= 14
        and peaks.get("x_verification", 0) <= 21
    )
    return ok, f"phase peaks {peaks}"


def _check_soundness(seed, trials):
    r = 8
    count = trials or 64
    runs = _runs("dealer_inconsistent_tree", count, seed, r=r)
    rate = sum(not tr.aborted for tr in runs) / count
    ceiling = 2.0**-r + 3 * np.sqrt(2.0**-r / count)
    return rate <= ceiling, f"pass rate {rate:.4f} (ceiling {ceiling:.4f})"


def _check_cheater_bound(seed, trials):
    count = trials or 10
    worst = 0
    for strategy, params in (
        ("cheater_pauli", None),
        ("cheater_pauli", {"pauli": "Z"}),
        ("cheater_broadcast_lie", None),
        ("cheater_clifford", {"gates": [["h", 1], ["cnot", 1, 2]]}),
        ("dealer_inconsistent_tree", None),
        ("dealer_overweight_errors", None),
        ("dealer_wrong_ancilla", None),
    ):
        for tr in _runs(strategy, count, seed, cheaters=(2,), params=params):
            if not tr.aborted:
                worst = max(worst, len(tr.B))
    return worst <= 2, f"largest |B| {worst} (2t = 2)"


def _check_post_robustness(seed, trials):
    runs = _runs("cheater_pauli", trials or 10, seed, cheaters=(3,), params={"phase": "post"})
    bad = [tr.trial for tr in runs if tr.aborted or abs(tr.fidelity - 1.0) > 1e-9]
    return not bad, f"failed trials {bad}" if bad else "fidelity 1 after post-verification Paulis"


# -- secrecy -------------------------------------------------------------


def _check_pad(seed, trials):
    from ..protocol.analysis import pad_average
    from ..quantum.tableau import AmplitudePair

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(20):
        secret = AmplitudePair.from_vector(rng.normal(size=2) + 1j * rng.normal(size=2))
        worst = max(worst, float(np.abs(pad_average(secret) - np.eye(2) / 2).max()))
    return worst < 1e-12, f"largest deviation from I/2: {worst:.3g}"


def _check_view_distance(seed, trials):
    from ..codes.css import steane_code
    from ..protocol.analysis import view_distance

    count = trials or 10000
    tv = view_distance(steane_code(), count, seed=seed)
    return tv < 0.03, f"view distance {tv:.4f} over {count} runs per secret"


def _check_branch_view(seed, trials):
    from ..codes.css import steane_code
    from ..protocol.analysis import view_distance

    count = trials or 10000
    tv = view_distance(steane_code(), count, seed=seed, statistic="branches")
    return tv < 0.05, f"branch-word distance {tv:.4f} over {count} runs per secret"


CHECKS = {
    "codes": (
        ("steane", _check_steane),
        ("table1", _check_table1),
        ("strong_threshold", _check_strong_threshold),
        ("stinson_like", _check_stinson),
        ("ramp_budget", _check_ramp_budget),
    ),
    "tableau": (
        ("oracle", _check_tableau_oracle),
        ("measure_order", _check_reduction),
    ),
    "vcss": (
        ("secrecy", _check_vcss_secrecy),
        ("robust", _check_vcss_robust),
        ("rejection", _check_vcss_rejection),
    ),
    "protocol": (
        ("completeness", _check_completeness),
        ("workspace", _check_workspace),
        ("soundness", _check_soundness),
        ("cheater_bound", _check_cheater_bound),
        ("post_robustness", _check_post_robustness),
    ),
    "secrecy": (
        ("pad", _check_pad),
        ("view_distance", _check_view_distance),
        ("branch_view", _check_branch_view),
    ),
}


def run_suite(name, seed=0, trials=None) -> list[CheckResult]:
    """Run suite ``name``; ``trials`` overrides the sample size of the sampled checks."""
    if name not in CHECKS:
        raise KeyError(f"Unknown property suite <{name}>; choose from {', '.join(SUITES)}.")
    results = []
    for check, func in CHECKS[name]:
        passed, detail = func(seed, trials)
        result = CheckResult(name, check, bool(passed), detail)
        LOGGER.log(25 if passed else logging.ERROR, "%s", result)
        results.append(result)
    return results
