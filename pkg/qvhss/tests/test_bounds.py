"""Analytical bounds."""

import pytest

from qvhss.exceptions import SchemeParameterError
from qvhss.protocol.bounds import eps_c, theoretical_bounds


def test_eps_c():
    assert eps_c(8) == pytest.approx(10 / 256)
    assert eps_c(1) == pytest.approx(1.5)
    assert eps_c(20) < 1e-4


def test_bounds_at_eight_rounds():
    bounds = theoretical_bounds(8)
    assert bounds.eps_c == pytest.approx(0.0391, abs=1e-4)
    assert bounds.abort_lower == pytest.approx(0.9609, abs=1e-4)
    assert bounds.fidelity_lower == pytest.approx(1 - 10 / 256)


def test_tighter_thresholds_weaken_the_abort_bound():
    assert theoretical_bounds(8, delta=0.05).abort_lower == pytest.approx(1 - 2**-8 / 0.05)


@pytest.mark.parametrize("kwargs", [{"r": 0}, {"r": 4, "delta": 0.0}, {"r": 4, "delta_pp": 1.5}])
def test_invalid(kwargs):
    with pytest.raises(SchemeParameterError):
        theoretical_bounds(**kwargs)
