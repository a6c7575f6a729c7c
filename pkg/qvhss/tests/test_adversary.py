"""Adversary strategy library."""

import pytest

from qvhss.exceptions import SchemeParameterError
from qvhss.network.adversary import STRATEGIES, load_strategy, make_strategy


def test_library():
    assert set(STRATEGIES) == {
        "honest",
        "dealer_inconsistent_tree",
        "dealer_overweight_errors",
        "dealer_wrong_ancilla",
        "cheater_pauli",
        "cheater_clifford",
        "cheater_broadcast_lie",
    }
    assert make_strategy().name == "honest"
    assert STRATEGIES["dealer_wrong_ancilla"].dealer
    assert not STRATEGIES["cheater_pauli"].dealer


def test_parameters():
    strategy = make_strategy("cheater_pauli", {"pauli": "Z", "phase": "post"})
    assert strategy.to_dict() == {
        "kind": "cheater_pauli",
        "params": {"pauli": "Z", "branches": None, "phase": "post"},
    }
    assert strategy == make_strategy("cheater_pauli", {"phase": "post", "pauli": "Z"})
    assert make_strategy(strategy) is strategy


@pytest.mark.parametrize(
    "kind, params, match",
    [
        ("byzantine", {}, "Unknown strategy"),
        ("cheater_pauli", {"pauli": "W"}, "Unknown Pauli"),
        ("cheater_pauli", {"phase": "during"}, "cheating phase"),
        ("cheater_pauli", {"weight": 2}, "Unknown parameters"),
        ("cheater_clifford", {"gates": [["t", 1]]}, "Unsupported gate"),
        ("cheater_broadcast_lie", {"rule": "shout"}, "lying rule"),
        ("dealer_wrong_ancilla", {"mode": "minus"}, "ancilla mode"),
    ],
)
def test_invalid(kind, params, match):
    with pytest.raises(SchemeParameterError, match=match):
        make_strategy(kind, params)


def test_load_strategy(tmp_path):
    path = tmp_path / "adversary.yml"
    path.write_text("kind: dealer_overweight_errors\nparams:\n  branch: 2\n  weight: 2\n")
    strategy = load_strategy(path)
    assert strategy.kind == "dealer_overweight_errors"
    assert strategy.params["branch"] == 2
    path.write_text("- not a mapping\n")
    with pytest.raises(SchemeParameterError, match="mapping"):
        load_strategy(path)
