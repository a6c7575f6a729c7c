# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Verifiable sharing of the two-bit pad key.

Shamir sharing over GF(2^8) with pairwise information-checking tags.  For
every ordered pair ``(i, j)`` node ``j`` keeps a private key ``(b_ij, c_ij)``
and node ``i`` keeps ``y_ij = s_i b_ij + c_ij``; at reconstruction ``j``
accepts ``i``'s share only if the tag still matches.

Dealer consistency is checked in ``rounds`` rounds.  The dealer also hands
out evaluations of random blinding polynomials ``g_k``; on public coin
``c_k != 0`` every node broadcasts ``g_k(i) + c_k f(i)``.  Broadcasts off the
best-fitting polynomial of degree ``degree`` are accused, and the dealer is
rejected when no such polynomial fits all but ``tolerance`` of them.
"""

from __future__ import annotations

import logging
import struct
from dataclasses import dataclass, field, replace
from typing import Callable, Protocol

from ..exceptions import SchemeParameterError, VCSSError
from .field import GF256, GaloisField

LOGGER = logging.getLogger("qvhss.vcss")

_HEADER = struct.Struct(">HBBBBBH")
_BLIND = struct.Struct(">BB")
_TAG = struct.Struct(">HBB")
_KEY = struct.Struct(">HBBBB")


@dataclass
class KeyShare:
    """Everything node ``node`` holds after the dealer's classical dealing."""

    node: int
    eval_point: int
    share_a: int
    share_b: int
    degree: int
    tolerance: int
    tags: dict[int, tuple[int, int]] = field(default_factory=dict)
    """``peer -> (y_a, y_b)``: authenticates this node's shares towards ``peer``."""
    keys: dict[int, tuple[int, int, int, int]] = field(default_factory=dict)
    """``peer -> (b_a, c_a, b_b, c_b)``: checks ``peer``'s shares."""
    blinds: list[tuple[int, int]] = field(default_factory=list)


@dataclass(frozen=True)
class VCSSVerdict:
    accepted: bool
    accused: frozenset = frozenset()
    rounds: int = 0


class VCSSScheme(Protocol):
    """Contract every classical verifiable sharing plugged into the protocol meets."""

    def share(self, key: tuple[int, int], rng) -> list[KeyShare]: ...

    def verify(self, shares, beacon, broadcast=None, lie=None, label="vcss") -> VCSSVerdict: ...

    def reconstruct(self, collected) -> tuple[int, int]: ...


def default_tolerance(n_c: int, degree: int) -> int:
    """Largest number of lying nodes the blinded check can attribute."""
    return max(0, min(degree, (n_c - degree - 1) // 2))


class ShamirICScheme:
    """Shamir sharing of degree ``degree`` plus information-checking tags."""

    def __init__(self, n_c, degree, tolerance=None, rounds=8, field=GF256):
        if n_c < 1 or n_c >= field.order:
            raise SchemeParameterError(f"n_c = {n_c} needs 1 <= n_c < {field.order}.")
        if degree < 0 or degree >= n_c:
            raise SchemeParameterError(f"Sharing degree {degree} must lie in [0, {n_c}).")
        tolerance = default_tolerance(n_c, degree) if tolerance is None else tolerance
        if tolerance < 0 or degree + 2 * tolerance >= n_c:
            raise SchemeParameterError(
                f"Tolerance {tolerance} with degree {degree} needs n_c > "
                f"{degree + 2 * tolerance}, got {n_c}."
            )
        if rounds < 1:
            raise SchemeParameterError("At least one verification round is required.")
        self.n_c = n_c
        self.degree = degree
        self.tolerance = tolerance
        self.rounds = rounds
        self.field = field

    def __repr__(self):
        return (
            f"ShamirICScheme(n_c={self.n_c}, degree={self.degree}, "
            f"tolerance={self.tolerance}, rounds={self.rounds}, {self.field!r})"
        )

    # -- dealing -----------------------------------------------------------

    def _tag(self, value, b, c):
        return self.field.mul(value, b) ^ c

    def share(self, key, rng) -> list[KeyShare]:
        a, b = (int(bit) for bit in key)
        if a not in (0, 1) or b not in (0, 1):
            raise SchemeParameterError(f"Key bits must be 0 or 1, got {key}.")
        gf = self.field
        f_a = gf.random_poly(a, self.degree, rng)
        f_b = gf.random_poly(b, self.degree, rng)
        blinds = []
        for _ in range(self.rounds):
            g_a = gf.random_poly(gf.random_element(rng), self.degree, rng)
            g_b = gf.random_poly(gf.random_element(rng), self.degree, rng)
            blinds.append((g_a, g_b))
        shares = []
        for i in range(1, self.n_c + 1):
            shares.append(
                KeyShare(
                    node=i,
                    eval_point=i,
                    share_a=gf.eval_poly(f_a, i),
                    share_b=gf.eval_poly(f_b, i),
                    degree=self.degree,
                    tolerance=self.tolerance,
                    blinds=[(gf.eval_poly(ga, i), gf.eval_poly(gb, i)) for ga, gb in blinds],
                )
            )
        self._deal_tags(shares, rng)
        LOGGER.debug("Dealt %d key shares (degree %d).", len(shares), self.degree)
        return shares

    def _deal_tags(self, shares, rng):
        gf = self.field
        for verifier in shares:
            for holder in shares:
                if holder.node == verifier.node:
                    continue
                key = tuple(gf.random_element(rng, nonzero=k % 2 == 0) for k in range(4))
                verifier.keys[holder.node] = key
        self._retag(shares)

    def _retag(self, shares):
        for holder in shares:
            for verifier in shares:
                if holder.node == verifier.node:
                    continue
                b_a, c_a, b_b, c_b = verifier.keys[holder.node]
                holder.tags[verifier.node] = (
                    self._tag(holder.share_a, b_a, c_a),
                    self._tag(holder.share_b, b_b, c_b),
                )

    def deal_inconsistent(self, key, rng, split=None) -> list[KeyShare]:
        """Dealer that splits the nodes across two different sharing polynomials.

        Nodes ``1..split`` (default ``ceil(n_c / 2)``) get shares of the honest
        polynomials, the rest get shares of unrelated ones.  Tags are made
        consistent with whatever each node received.
        """
        shares = self.share(key, rng)
        gf = self.field
        split = (self.n_c + 1) // 2 if split is None else split
        f_a = gf.random_poly(gf.random_element(rng), self.degree, rng)
        f_b = gf.random_poly(gf.random_element(rng), self.degree, rng)
        for s in shares[split:]:
            s.share_a = gf.eval_poly(f_a, s.eval_point)
            s.share_b = gf.eval_poly(f_b, s.eval_point)
        self._retag(shares)
        return shares

    # -- verification ------------------------------------------------------

    def verify(self, shares, beacon, broadcast=None, lie=None, label="vcss") -> VCSSVerdict:
        """Run the blinded consistency rounds.

        Parameters
        ----------
        shares : list of KeyShare
            One per node, in node order.
        beacon : callable
            ``beacon(label) -> int``, a public nonzero field element.
        broadcast : callable, optional
            ``broadcast(sender, payload)``; every announced value goes through it.
        lie : callable, optional
            ``lie(node, round, value) -> value`` replaces what a node announces.

        """
        gf = self.field
        max_errors = min(self.tolerance, (len(shares) - self.degree - 1) // 2)
        accused = set()
        for k in range(self.rounds):
            coin = beacon(f"{label}:{k}")
            announced = []
            for s in shares:
                g_a, g_b = s.blinds[k]
                value = (g_a ^ gf.mul(coin, s.share_a), g_b ^ gf.mul(coin, s.share_b))
                if lie is not None:
                    value = lie(s.node, k, value)
                if broadcast is not None:
                    broadcast(s.node, ("vcss-blind", k, value))
                announced.append((s.eval_point, s.node, value))
            for comp in (0, 1):
                points = [(x, v[comp]) for x, _, v in announced]
                poly = gf.robust_fit(points, self.degree, max_errors)
                if poly is None:
                    LOGGER.log(15, "VCSS round %d: no polynomial fits; dealer rejected.", k)
                    return VCSSVerdict(False, frozenset(accused), k + 1)
                accused |= {
                    node for x, node, v in announced if gf.eval_poly(poly, x) != v[comp]
                }
        if len(accused) > self.tolerance:
            return VCSSVerdict(False, frozenset(accused), self.rounds)
        return VCSSVerdict(True, frozenset(accused), self.rounds)

    # -- reconstruction ----------------------------------------------------

    def authenticated(self, collected) -> tuple[list[KeyShare], set[int]]:
        """Split ``collected`` into shares accepted by a majority of their verifiers
        and the nodes whose shares were rejected."""
        accepted, excluded = [], set()
        for holder in collected:
            votes_for = votes_against = 0
            for verifier in collected:
                if verifier.node == holder.node or holder.node not in verifier.keys:
                    continue
                b_a, c_a, b_b, c_b = verifier.keys[holder.node]
                tag = holder.tags.get(verifier.node)
                ok = tag is not None and tag == (
                    self._tag(holder.share_a, b_a, c_a),
                    self._tag(holder.share_b, b_b, c_b),
                )
                votes_for += ok
                votes_against += not ok
            if votes_for > votes_against:
                accepted.append(holder)
            else:
                excluded.add(holder.node)
        return accepted, excluded

    def reconstruct(self, collected) -> tuple[int, int]:
        collected = list(collected)
        accepted, excluded = self.authenticated(collected)
        if len(excluded) > self.tolerance:
            raise VCSSError(
                f"{len(excluded)} key shares failed authentication (tolerance "
                f"{self.tolerance}).",
                excluded=excluded,
            )
        if len(accepted) < self.degree + 1:
            raise VCSSError(
                f"Only {len(accepted)} authenticated key shares; {self.degree + 1} needed.",
                excluded=excluded,
            )
        gf = self.field
        key = []
        for attr in ("share_a", "share_b"):
            points = [(s.eval_point, getattr(s, attr)) for s in accepted]
            poly = gf.interpolate_poly(points[: self.degree + 1])
            if any(gf.eval_poly(poly, x) != y for x, y in points):
                raise VCSSError("Authenticated key shares are inconsistent.", excluded=excluded)
            key.append(poly[0])
        if any(bit not in (0, 1) for bit in key):
            raise VCSSError(f"Reconstructed key {key} is not a pair of bits.", excluded=excluded)
        if excluded:
            LOGGER.log(15, "Key reconstructed; excluded nodes %s.", sorted(excluded))
        return key[0], key[1]


def vcss_share(key, n_c, t, rng, rounds=8, field=GF256, degree=None) -> list[KeyShare]:
    """Share ``key`` among ``n_c`` nodes with Shamir degree ``degree`` (default ``t``)."""
    if t < 0 or 2 * t >= n_c:
        raise SchemeParameterError(f"t = {t} must satisfy 2t < n_c = {n_c}.")
    degree = t if degree is None else degree
    tolerance = min(t, default_tolerance(n_c, degree))
    scheme = ShamirICScheme(n_c, degree, tolerance=tolerance, rounds=rounds, field=field)
    return scheme.share(key, rng)


def scheme_for(shares, field=GF256) -> ShamirICScheme:
    """Rebuild the public parameters of the scheme that produced ``shares``."""
    first = shares[0]
    return ShamirICScheme(
        len(shares),
        first.degree,
        tolerance=first.tolerance,
        rounds=max(len(first.blinds), 1),
        field=field,
    )


def vcss_verify(shares, beacon, broadcast=None, lie=None, field=GF256, label="vcss"):
    return scheme_for(shares, field).verify(shares, beacon, broadcast, lie, label=label)


def vcss_reconstruct(collected, field=GF256, n_c=None) -> tuple[int, int]:
    collected = list(collected)
    if not collected:
        raise VCSSError("No key shares were collected.")
    first = collected[0]
    scheme = ShamirICScheme(
        n_c or max(s.node for s in collected),
        first.degree,
        tolerance=first.tolerance,
        rounds=max(len(first.blinds), 1),
        field=field,
    )
    return scheme.reconstruct(collected)


def rng_beacon(rng, field: GaloisField = GF256) -> Callable[[str], int]:
    """A beacon drawing nonzero field elements from ``rng`` (stand-alone use)."""

    def beacon(label):
        return field.random_element(rng, nonzero=True)

    return beacon


def corrupt_share(share: KeyShare, delta_a=1, delta_b=0) -> KeyShare:
    """Copy of ``share`` with its share values shifted and the tags left as they were."""
    return replace(
        share,
        share_a=share.share_a ^ delta_a,
        share_b=share.share_b ^ delta_b,
        tags=dict(share.tags),
        keys=dict(share.keys),
        blinds=list(share.blinds),
    )


def serialize_share(share: KeyShare) -> bytes:
    """Big-endian, length-prefixed encoding of ``share``."""
    body = bytearray(
        _HEADER.pack(
            share.node,
            share.eval_point,
            share.share_a,
            share.share_b,
            share.degree,
            share.tolerance,
            len(share.blinds),
        )
    )
    for g_a, g_b in share.blinds:
        body += _BLIND.pack(g_a, g_b)
    body += struct.pack(">H", len(share.tags))
    for peer in sorted(share.tags):
        body += _TAG.pack(peer, *share.tags[peer])
    body += struct.pack(">H", len(share.keys))
    for peer in sorted(share.keys):
        body += _KEY.pack(peer, *share.keys[peer])
    return struct.pack(">I", len(body)) + bytes(body)


def deserialize_share(data: bytes) -> KeyShare:
    (length,) = struct.unpack_from(">I", data, 0)
    if length != len(data) - 4:
        raise ValueError(f"Share record declares {length} bytes, found {len(data) - 4}.")
    offset = 4
    node, point, s_a, s_b, degree, tolerance, n_blinds = _HEADER.unpack_from(data, offset)
    offset += _HEADER.size
    blinds = []
    for _ in range(n_blinds):
        blinds.append(_BLIND.unpack_from(data, offset))
        offset += _BLIND.size
    (n_tags,) = struct.unpack_from(">H", data, offset)
    offset += 2
    tags = {}
    for _ in range(n_tags):
        peer, y_a, y_b = _TAG.unpack_from(data, offset)
        tags[peer] = (y_a, y_b)
        offset += _TAG.size
    (n_keys,) = struct.unpack_from(">H", data, offset)
    offset += 2
    keys = {}
    for _ in range(n_keys):
        peer, *key = _KEY.unpack_from(data, offset)
        keys[peer] = tuple(key)
        offset += _KEY.size
    return KeyShare(node, point, s_a, s_b, degree, tolerance, tags, keys, blinds)
