# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""CSS codes encoding one logical qubit.

For classical codes ``V`` and ``W`` of length ``n`` with ``dual(V) ⊆ W``, the
code space is spanned by

    |0̄⟩ = Σ_{w ∈ W⊥} |w⟩,      |1̄⟩ = Σ_{w ∈ W⊥} |w + u⟩,   u ∈ V \\ W⊥,

so a computational-basis measurement yields a codeword of ``V`` and, after a
transversal Hadamard, a codeword of ``W``.  Z-type stabilizers come from
``V⊥`` and X-type stabilizers from ``W⊥``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..exceptions import CSSConstructionError, SchemeParameterError
from ..quantum.pauli import PauliString
from . import gf2
from .classical import LinearCode, dual, hamming_7_4, is_subcode

LOGGER = logging.getLogger("qvhss.codes")

MAX_ENUMERATION_LENGTH = 20


@dataclass(frozen=True)
class Gate:
    """A Clifford gate on block-local qubit positions."""

    name: str
    qubits: tuple[int, ...]


class CssCode:
    """An ``[[n, 1, d]]`` CSS code built from ``(V, W)``.

    Attributes
    ----------
    v, w : LinearCode
    v_perp, w_perp : LinearCode
        ``dual(v)`` and ``dual(w)``.
    n, d : int
    logical_x_support : BitVector
        ``u ∈ V \\ W⊥``; logical X is ``X(u)``.
    logical_z_support : BitVector
        ``z̄ ∈ W \\ V⊥`` with ``u · z̄ = 1``; logical Z is ``Z(z̄)``.
    stabilizer_generators : list of PauliString
        X-type generators from ``W⊥`` followed by Z-type generators from ``V⊥``.

    """

    def __init__(self, v: LinearCode, w: LinearCode, distance=None, name=None):
        if v.n != w.n:
            raise CSSConstructionError(f"Code lengths differ: {v.n} != {w.n}.")
        self.v = v
        self.w = w
        self.n = v.n
        self.name = name or f"css({v.name},{w.name})"
        self.v_perp = dual(v)
        self.w_perp = dual(w)
        if not is_subcode(self.v_perp, w):
            raise CSSConstructionError(f"{self.name}: dual(V) is not contained in W.")
        k = v.k - self.w_perp.k
        if k != 1:
            raise CSSConstructionError(f"{self.name}: encodes {k} logical qubits, expected 1.")

        self.logical_x_support, self.logical_z_support = self._choose_logicals()
        if distance is None:
            distance = self._enumerate_distance()
        self.d = int(distance)

        # Parity-check rows, so measured syndromes feed the classical decoders directly.
        self.x_stabilizers = [PauliString.x_type(row) for row in w.parity_check]
        self.z_stabilizers = [PauliString.z_type(row) for row in v.parity_check]
        self.stabilizer_generators = self.x_stabilizers + self.z_stabilizers
        self.logical_x = PauliString.x_type(self.logical_x_support)
        self.logical_z = PauliString.z_type(self.logical_z_support)
        LOGGER.debug("Constructed %r.", self)

    def __repr__(self):
        return f"CssCode({self.name}, [[{self.n},1,{self.d}]])"

    @property
    def t(self) -> int:
        return (self.d - 1) // 2

    def _choose_logicals(self):
        """Pick the lightest logical pair, preferring ``u = z̄`` when available."""
        if self.v.k <= MAX_ENUMERATION_LENGTH and self.w.k <= MAX_ENUMERATION_LENGTH:
            v_words = self.v.codewords()
            v_words = v_words[[not self.w_perp.contains(x) for x in v_words]]
            order = np.lexsort(v_words.T[::-1])
            v_words = v_words[order]
            v_words = v_words[np.argsort(v_words.sum(axis=1), kind="stable")]
            for u in v_words:
                if self.w.contains(u) and gf2.dot(u, u) == 1:
                    return u.copy(), u.copy()
            u = v_words[0].copy()
            w_words = self.w.codewords()
            w_words = w_words[np.argsort(w_words.sum(axis=1), kind="stable")]
            for zbar in w_words:
                if gf2.dot(u, zbar) == 1:
                    return u, zbar.copy()
        u = next(r for r in self.v.generator if not self.w_perp.contains(r)).copy()
        zbar = next(r for r in self.w.generator if gf2.dot(u, r) == 1).copy()
        return u, zbar

    def _enumerate_distance(self):
        if self.n > MAX_ENUMERATION_LENGTH:
            raise CSSConstructionError(
                f"{self.name}: length {self.n} > {MAX_ENUMERATION_LENGTH}; declare its distance."
            )
        best = self.n
        for code, perp in ((self.v, self.w_perp), (self.w, self.v_perp)):
            words = code.codewords()
            outside = words[[not perp.contains(x) for x in words]]
            best = min(best, int(outside.sum(axis=1).min()))
        return best

    def zero_state_support(self) -> np.ndarray:
        """Codewords of ``W⊥``: the computational-basis support of ``|0̄⟩``."""
        return self.w_perp.codewords()

    def plus_state_support(self) -> np.ndarray:
        """Codewords of ``V``: the computational-basis support of ``|+̄⟩``."""
        return self.v.codewords()

    def logical_value_v(self, codeword) -> int:
        """Logical Z-basis value of a codeword of ``V``."""
        return gf2.dot(codeword, self.logical_z_support)

    def logical_value_w(self, codeword) -> int:
        """Logical X-basis value of a codeword of ``W`` (after transversal H)."""
        return gf2.dot(codeword, self.logical_x_support)

    def encoder_input(self) -> int:
        """Block position that carries the input qubit of :meth:`encoder_circuit`."""
        return self._encoder_data()[0]

    def _encoder_data(self):
        reduced, pivots, r = gf2.rref(self.w_perp.generator)
        reduced = reduced[:r]
        u = self.logical_x_support.copy()
        for row, p in enumerate(pivots):
            if u[p]:
                u ^= reduced[row]
        a = int(np.flatnonzero(u)[0])
        return a, u, reduced, pivots

    def encoder_circuit(self, mode="secret") -> list[Gate]:
        """Clifford circuit encoding position :meth:`encoder_input` into the code.

        All other positions must start in ``|0⟩``.  ``mode`` selects the input:
        ``"secret"`` keeps whatever state the input position holds, ``"zero"``
        assumes ``|0⟩`` (prepares ``|0̄⟩``) and ``"plus"`` starts with a Hadamard
        on the input (prepares ``|+̄⟩``).
        """
        if mode not in ("secret", "zero", "plus"):
            raise ValueError(f"Unknown encoder mode: <{mode}>.")
        a, u, reduced, pivots = self._encoder_data()
        gates = []
        if mode == "plus":
            gates.append(Gate("h", (a,)))
        if mode in ("secret", "plus"):
            gates += [Gate("cnot", (a, int(j))) for j in np.flatnonzero(u) if j != a]
        for row, p in zip(reduced, pivots):
            gates.append(Gate("h", (p,)))
            gates += [Gate("cnot", (p, int(j))) for j in np.flatnonzero(row) if j != p]
        return gates


def css_from_codes(v: LinearCode, w: LinearCode, distance=None, name=None) -> CssCode:
    return CssCode(v, w, distance=distance, name=name)


def steane_code() -> CssCode:
    """Steane's ``[[7,1,3]]`` code, ``V = W = Hamming[7,4]``."""
    hamming = hamming_7_4()
    return CssCode(hamming, hamming, name="steane7")


def read_css(text: str, name=None) -> CssCode:
    """Parse a CSS fixture: generator of ``V``, generator of ``W``, optional ``d <int>``."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    distance = None
    if lines and lines[-1].startswith("d "):
        distance = int(lines.pop().split()[1])
    matrices = []
    while lines:
        rows = int(lines[0].split()[0])
        matrices.append(gf2.read_matrix("\n".join(lines[: rows + 1])))
        lines = lines[rows + 1 :]
    if len(matrices) != 2:
        raise CSSConstructionError(f"Expected two generator matrices, found {len(matrices)}.")
    # Classical distances are at least the declared CSS distance.
    v, w = (
        LinearCode(g, distance=None if gf2.rank(g) <= MAX_ENUMERATION_LENGTH else distance)
        for g in matrices
    )
    return CssCode(v, w, distance=distance, name=name)


def load_css(path) -> CssCode:
    path = Path(path)
    return read_css(path.read_text(), name=path.stem)


def resolve_code(code) -> CssCode:
    """Return a :class:`CssCode` for a name (``steane7``) or a fixture path."""
    if isinstance(code, CssCode):
        return code
    if str(code) == "steane7":
        return steane_code()
    path = Path(code)
    if not path.exists():
        from ..data import load as load_data

        if str(code) not in load_data.code_names():
            raise SchemeParameterError(
                f"Unknown code <{code}>: neither a file nor one of "
                f"{', '.join(load_data.code_names())}."
            )
        path = load_data("codes", f"{code}.txt")
    return load_css(path)
