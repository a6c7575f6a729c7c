"""Access structures of verifiable hybrid schemes."""

import pytest

from qvhss.codes.scheme import (
    STINSON_LIKE,
    CssParameters,
    ramp_balanced,
    ramp_params,
    strong_threshold_feasible,
    table1,
    table1_families,
    vhss_params,
)
from qvhss.data import load
from qvhss.exceptions import SchemeParameterError


def test_vhss_params(steane):
    assert vhss_params(steane, 7).triple() == "{3,1,7}"
    assert vhss_params(steane, 11).triple() == "{5,1,11}"
    assert vhss_params(CssParameters(n=50, d=9), 50).triple() == "{24,4,50}"
    with pytest.raises(SchemeParameterError, match="smaller than the code length"):
        vhss_params(steane, 5)
    with pytest.raises(SchemeParameterError, match="code tolerance"):
        vhss_params(steane, 7, t=2)
    with pytest.raises(SchemeParameterError, match="Unknown VCSS kind"):
        vhss_params(steane, 7, vcss_kind="shamir")


@pytest.mark.parametrize("n, d, t", [(7, 3, 1), (13, 5, 2), (25, 5, 2), (61, 9, 4)])
def test_stinson_like(n, d, t):
    params = vhss_params(CssParameters(n=n, d=d), n, vcss_kind=STINSON_LIKE, t=t)
    assert params.n >= params.p + 3 * params.t + 1
    assert params.p == n - 3 * t - 1


def test_ramp_params():
    code = CssParameters(n=19, d=5)
    assert ramp_params(code, 1, 1).triple() == "{9,1,1,19}"
    with pytest.raises(SchemeParameterError, match="exceeds"):
        ramp_params(code, 2, 1)
    assert ramp_params(code, 2, 0).p == vhss_params(code, 19).p
    assert ramp_balanced(CssParameters(n=18, d=5)).triple() == "{8,1,1,18}"


def test_table1_families():
    assert [n for _, n in table1_families(1)] == [8, 7, 7, 13]
    assert [n for _, n in table1_families(2)] == [18, 19, 25, 41]
    assert [n for _, n in table1_families(4)] == [50, 61, 97, 145]
    with pytest.raises(SchemeParameterError):
        table1_families(0)


def test_table1_golden():
    assert table1() == load.readable("table1.txt").read_text()


def test_strong_threshold():
    assert strong_threshold_feasible(p=6, t=0, t_prime=0, n=7)
    assert not strong_threshold_feasible(p=4, t=1, t_prime=2, n=7)
    for t in range(1, 11):
        assert not strong_threshold_feasible(p=20 - 3 - 1, t=t, t_prime=3, n=20)
    with pytest.raises(SchemeParameterError, match="p = n - t' - 1"):
        strong_threshold_feasible(p=3, t=1, t_prime=2, n=7)
