"""Verifiable sharing of the two-bit pad key."""

from itertools import combinations

import numpy as np
import pytest

from qvhss.exceptions import SchemeParameterError, VCSSError
from qvhss.vcss.field import GF16, GF256
from qvhss.vcss.sharing import (
    ShamirICScheme,
    corrupt_share,
    deserialize_share,
    rng_beacon,
    serialize_share,
    vcss_reconstruct,
    vcss_share,
    vcss_verify,
)


@pytest.mark.parametrize("gf", [GF16, GF256])
def test_field_inverses(gf):
    for x in range(1, gf.order):
        assert gf.mul(x, gf.inv(x)) == 1
    assert gf.pow(gf.generator, gf.order - 1) == 1
    with pytest.raises(ZeroDivisionError):
        gf.inv(0)


def test_interpolation():
    poly = [5, 17, 200]
    points = [(x, GF256.eval_poly(poly, x)) for x in (1, 2, 3)]
    assert GF256.interpolate(points) == 5
    assert GF256.interpolate_poly(points) == poly


def test_robust_fit():
    poly = [3, 9]
    points = [(x, GF16.eval_poly(poly, x)) for x in range(1, 8)]
    points[4] = (points[4][0], points[4][1] ^ 6)
    assert GF16.robust_fit(points, 1, 1) == poly
    points[5] = (points[5][0], points[5][1] ^ 1)
    points[6] = (points[6][0], points[6][1] ^ 2)
    assert GF16.robust_fit(points, 1, 1) is None


@pytest.mark.parametrize("key", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_share_verify_reconstruct(key, rng):
    shares = vcss_share(key, n_c=7, t=1, rng=rng)
    verdict = vcss_verify(shares, rng_beacon(rng))
    assert verdict.accepted
    assert not verdict.accused
    assert verdict.rounds == 8
    assert vcss_reconstruct(shares) == key
    for subset in combinations(shares, 6):
        assert vcss_reconstruct(subset, n_c=7) == key


def test_any_single_share_is_uniform():
    """Degree-1 sharing over GF(16): one share is independent of the key bit."""
    for point in range(1, 8):
        views = [
            sorted(GF16.eval_poly([bit, c], point) for c in GF16.elements()) for bit in (0, 1)
        ]
        assert views[0] == views[1]


def test_lying_node_is_accused(rng):
    scheme = ShamirICScheme(7, 1, rounds=4)
    shares = scheme.share((1, 0), rng)

    def lie(node, round, value):
        return (value[0] ^ 1, value[1]) if node == 3 else value

    verdict = scheme.verify(shares, rng_beacon(rng), lie=lie)
    assert verdict.accepted
    assert verdict.accused == {3}


def test_broadcast_hook_sees_every_value(rng):
    scheme = ShamirICScheme(7, 1, rounds=2)
    shares = scheme.share((0, 1), rng)
    seen = []
    scheme.verify(shares, rng_beacon(rng), broadcast=lambda s, p: seen.append((s, p[1])))
    assert sorted(seen) == sorted((j, k) for j in range(1, 8) for k in range(2))


def test_inconsistent_dealer_is_rejected():
    rng = np.random.default_rng(3)
    scheme = ShamirICScheme(7, 1, rounds=8)
    rejected = 0
    for _ in range(50):
        shares = scheme.deal_inconsistent((1, 1), rng)
        rejected += not scheme.verify(shares, rng_beacon(rng)).accepted
    assert rejected == 50


def test_corrupted_shares(rng):
    scheme = ShamirICScheme(7, 1)
    shares = scheme.share((1, 1), rng)
    shares[2] = corrupt_share(shares[2])
    accepted, excluded = scheme.authenticated(shares)
    assert excluded == {3}
    assert len(accepted) == 6
    assert scheme.reconstruct(shares) == (1, 1)
    shares[4] = corrupt_share(shares[4], delta_b=1)
    with pytest.raises(VCSSError, match="failed authentication"):
        scheme.reconstruct(shares)


def test_parameter_errors(rng):
    with pytest.raises(SchemeParameterError, match="2t < n_c"):
        vcss_share((0, 0), n_c=4, t=2, rng=rng)
    with pytest.raises(SchemeParameterError, match="Key bits"):
        ShamirICScheme(7, 1).share((2, 0), rng)
    with pytest.raises(SchemeParameterError, match="Tolerance"):
        ShamirICScheme(7, 2, tolerance=3)
    with pytest.raises(SchemeParameterError, match="n_c"):
        ShamirICScheme(16, 1, field=GF16)
    with pytest.raises(VCSSError, match="No key shares"):
        vcss_reconstruct([])


def test_serialized_share(rng):
    share = vcss_share((1, 0), n_c=7, t=1, rng=rng, rounds=3)[4]
    data = serialize_share(share)
    assert deserialize_share(data) == share
    with pytest.raises(ValueError, match="declares"):
        deserialize_share(data[:-1])
