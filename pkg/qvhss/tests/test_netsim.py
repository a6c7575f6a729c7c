"""Synchronous network harness."""

import pytest

from qvhss.exceptions import NetworkError, SchemeParameterError
from qvhss.network.netsim import BROADCAST, Network, NetworkConfig


@pytest.fixture
def net(tmp_path):
    cfg = NetworkConfig(n_q=7, n_c=7, t=1, cheaters={3}, seed=42)
    return Network(cfg, round_log=tmp_path / "rounds.log")


@pytest.mark.parametrize(
    "kwargs, match",
    [
        ({"cheaters": {2, 3}}, "exceed the tolerance"),
        ({"cheaters": {8}}, "not nodes"),
        ({"reconstructor": 3, "cheaters": {3}}, "must be honest"),
        ({"reconstructor": 9, "n_c": 11}, "not a quantum node"),
        ({"dealer": 2}, "separate party"),
    ],
)
def test_config_errors(kwargs, match):
    base = {"n_q": 7, "n_c": 7, "t": 1}
    with pytest.raises(SchemeParameterError, match=match):
        NetworkConfig(**{**base, **kwargs})


def test_config_nodes():
    cfg = NetworkConfig(n_q=7, n_c=11, t=1, cheaters=[4])
    assert cfg.n == 11
    assert list(cfg.quantum_nodes) == list(range(1, 8))
    assert 4 not in cfg.honest
    assert cfg.cheaters == frozenset({4})


def test_broadcasts_are_seen_by_all(net):
    net.broadcast(5, "b")
    net.broadcast(2, "a")
    assert [m.sender for m in net.broadcasts()] == [2, 5]
    assert all(m.channel == BROADCAST for m in net.view(7))
    assert net.broadcasts(kind="other") == []


def test_private_messages_wait_for_the_round(net):
    net.send_private(0, 4, (1, 2), kind="key")
    assert net.inbox(4) == []
    assert net.advance() == 1
    (message,) = net.inbox(4, kind="key")
    assert message.payload == (1, 2)
    assert message.round == 0
    assert net.inbox(5) == []
    with pytest.raises(NetworkError, match="Unknown node"):
        net.send_private(0, 12, None)


def test_qubit_ownership(net):
    net.set_phase("sharing")
    net.assign(0, range(7))
    net.send_qubits(0, 2, [0, 1])
    assert net.owner(0) is None
    assert net.live_qubits == 7
    with pytest.raises(NetworkError, match="does not hold"):
        net.send_qubits(0, 2, [0])
    net.advance()
    assert net.owned(2) == [0, 1]
    net.release(2, [1])
    assert net.owned(2) == [0]
    assert net.live_qubits == 6
    with pytest.raises(NetworkError, match="already registered"):
        net.assign(3, [0])
    assert net.workspace("sharing")[2] == 2
    assert net.workspace(nodes=[0])[0] == 7


def test_workspace_phases(net):
    net.set_phase("sharing")
    net.assign(1, range(3))
    net.set_phase("z_verification")
    net.assign(1, range(3, 5))
    net.release(1, range(5))
    assert net.workspace("sharing")[1] == 3
    assert net.workspace("z_verification")[1] == 5
    assert net.workspace("x_verification") == {j: 0 for j in range(1, 8)}
    with pytest.raises(NetworkError, match="would hold"):
        net.meter.update(1, -1)


def test_public_coins_follow_the_seed(net):
    cfg = NetworkConfig(n_q=7, n_c=7, t=1, cheaters={3}, seed=42)
    other = Network(cfg)
    labels = [f"coin:{k}" for k in range(16)]
    assert [net.public_coin(lb) for lb in labels] == [other.public_coin(lb) for lb in labels]
    with pytest.raises(NetworkError, match="already used"):
        net.public_coin("coin:0")
    assert 1 <= net.public_element("element", 256) < 256


def test_round_log(net, tmp_path):
    net.broadcast(1, [0, 1])
    net.send_private(0, 2, "share")
    net.assign(0, [0])
    net.send_qubits(0, 3, [0])
    lines = (tmp_path / "rounds.log").read_text().splitlines()
    assert lines == net.log
    assert [ln.split(" | ")[1] for ln in lines] == ["broadcast", "private", "quantum"]
    assert lines[0].split(" | ")[3] == "*"
    assert len(lines[0].split(" | ")[5]) == 16
    assert net.is_cheater(3)
